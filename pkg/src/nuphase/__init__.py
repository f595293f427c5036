"""Phase and decoherence of a macroscopic superposition under reactor neutrino scattering."""

__version__ = "0.1.0"

from .units import CONSTANTS, cross_section_to_cm2, to_natural, to_si
from .target import (
    BI209,
    Nuclide,
    ReactorSource,
    TargetCrystal,
    flux_at_detector,
    nucleus_mass,
    spectrum_density,
    weak_charge,
)
from .cenns import (
    ScatteringAmplitudeModel,
    RecoilKinematics,
    ValidityError,
    amplitude_sq,
    dsigma_dT,
    recoil_energy,
    sigma_total,
)
from .evolution import (
    ComplexRate,
    CoherenceTrajectory,
    SuperpositionConfig,
    branch_phase_difference,
    complex_rate,
    evolve_coherence,
    gaussian_kick,
    saturation_rate,
)
from .quadrature import QuadratureError
