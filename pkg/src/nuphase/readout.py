"""Spin readout of the recombined interferometer, event statistics, array scaling."""
from dataclasses import dataclass
import math

import numpy as np

from .cenns import ScatteringAmplitudeModel
from .evolution import _kappa, spectrum_averaged_sigma
from .target import flux_at_detector
from .units import CONSTANTS

__all__ = [
    "HADAMARD",
    "PHASE_GATE",
    "QubitState",
    "ArrayScaling",
    "coherence_state",
    "apply_hadamard",
    "apply_phase_gate",
    "population_difference",
    "density_defects",
    "gate_pipeline",
    "readout_signal",
    "click_probability",
    "expected_scatterings",
    "array_scaling",
]

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
PHASE_GATE = np.diag([1, 1j])

_TOL = 1e-12


def density_defects(rho):
    """Worst trace, Hermiticity and positivity violations over a stack of 2x2 matrices."""
    rho = np.asarray(rho, dtype=complex)
    trace = np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1).max()
    herm = np.abs(rho - np.swapaxes(rho.conj(), -1, -2)).max()
    neg = max(0.0, -np.linalg.eigvalsh(rho).min())
    return float(trace), float(herm), float(neg)


def gate_pipeline(rho, mode="cos"):
    """Readout gates applied to a stack of density matrices (shape (..., 2, 2)).

    Returns the rotated matrices and the signed population differences,
    matching ``population_difference`` element by element.
    """
    rho = np.asarray(rho, dtype=complex)
    if mode == "cos":
        U, sign = HADAMARD, 1.0
    elif mode == "sin":
        U, sign = HADAMARD @ PHASE_GATE, -1.0
    else:
        raise ValueError(f"mode must be 'cos' or 'sin', got {mode!r}")
    out = U @ rho @ U.conj().T
    return out, sign * (out[..., 0, 0].real - out[..., 1, 1].real)


@dataclass(frozen=True)
class QubitState:
    """Density matrix on the {|0>, |1>} basis.

    |0> and |1> label the two spin-branch product states; after recombination
    they are the spin states that are actually measured.
    """

    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError("rho must be 2x2")
        trace, herm, neg = density_defects(rho)
        if trace > _TOL:
            raise ValueError(f"trace must be 1, got {np.trace(rho)}")
        if herm > _TOL:
            raise ValueError("rho must be Hermitian")
        if neg > _TOL:
            raise ValueError("rho must be positive semidefinite")
        object.__setattr__(self, "rho", rho)

    @property
    def populations(self):
        return np.real(np.diag(self.rho))


def coherence_state(amplitude, phase, a=0.5, b=None):
    """[[a, A e^{-i phi}], [A e^{i phi}, b]], with b = 1 - a by default."""
    b = 1.0 - a if b is None else b
    off = amplitude * np.exp(-1j * phase)
    return QubitState(np.array([[a, off], [np.conj(off), b]]))


def _conjugate(U, state):
    return QubitState(U @ state.rho @ U.conj().T)


def apply_hadamard(state):
    return _conjugate(HADAMARD, state)


def apply_phase_gate(state):
    return _conjugate(PHASE_GATE, state)


def population_difference(state, mode="cos"):
    """Gate-level readout.

    ``cos``: Hadamard, then p(0) - p(1) = 2 A cos(phi).
    ``sin``: phase gate and Hadamard, then p(1) - p(0) = 2 A sin(phi).
    """
    if mode == "cos":
        p = apply_hadamard(state).populations
        return p[0] - p[1]
    if mode == "sin":
        p = apply_hadamard(apply_phase_gate(state)).populations
        return p[1] - p[0]
    raise ValueError(f"mode must be 'cos' or 'sin', got {mode!r}")


def readout_signal(traj, t, mode="cos"):
    amplitude, phase = traj.at(t)
    if mode == "cos":
        return 2.0 * amplitude * math.cos(phase)
    if mode == "sin":
        return 2.0 * amplitude * math.sin(phase)
    raise ValueError(f"mode must be 'cos' or 'sin', got {mode!r}")


def click_probability(traj, t):
    """Probability of the |-> outcome in a single-shot |+>/|-> measurement."""
    amplitude, phase = traj.at(t)
    return 0.5 - amplitude * math.cos(phase)


def expected_scatterings(source, target, t, convention="paper", model=None):
    """Mean number of scatterings in time t and the Poisson P(n >= 2).

    The mean carries the same kappa factor as the decay rate, so with
    ``convention="paper"`` it is twice the plain event count.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    model = model or ScatteringAmplitudeModel.for_target(target)
    sigma_bar = spectrum_averaged_sigma(model, source) * CONSTANTS.mev_inv2_to_cm2
    mean = _kappa(convention) * flux_at_detector(source) * target.n_atoms * sigma_bar * t
    # -expm1(-m) - m e^{-m} avoids cancellation at small means
    p_geq_2 = -math.expm1(-mean) - mean * math.exp(-mean)
    return mean, max(p_geq_2, 0.0)


@dataclass(frozen=True)
class ArrayScaling:
    n: int
    mass_factor: float
    duration_factor: float
    per_crystal_phase_factor: float
    crystal_count: int
    phase_precision: float


def array_scaling(n):
    """Trade crystal mass and run time (each / n) for n^4 crystals."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n}")
    n = int(n)
    count = n**4
    return ArrayScaling(
        n=n,
        mass_factor=1.0 / n,
        duration_factor=1.0 / n,
        per_crystal_phase_factor=1.0 / n**2,
        crystal_count=count,
        phase_precision=1.0 / math.sqrt(count),
    )
