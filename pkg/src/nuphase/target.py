"""Detector crystal and reactor antineutrino source."""
from dataclasses import dataclass, field
import math

import numpy as np

from .units import CONSTANTS

__all__ = [
    "Nuclide",
    "TargetCrystal",
    "ReactorSource",
    "BI209",
    "weak_charge",
    "nucleus_mass",
    "flux_at_detector",
    "spectrum_density",
    "spectrum_support",
]


@dataclass(frozen=True)
class Nuclide:
    Z: int
    N: int

    def __post_init__(self):
        for name in ("Z", "N"):
            value = getattr(self, name)
            if int(value) != value:
                raise ValueError(f"{name} must be integral, got {value}")
        if self.Z < 1:
            raise ValueError(f"Z must be >= 1, got {self.Z}")
        if self.N < 0:
            raise ValueError(f"N must be >= 0, got {self.N}")


BI209 = Nuclide(83, 126)


def weak_charge(nuclide):
    """Neutral-current weak charge (1 - 4 sin^2 theta_W) Z + N."""
    return (1.0 - 4.0 * CONSTANTS.sin2_theta_W) * nuclide.Z + nuclide.N


def nucleus_mass(nuclide):
    """Nuclear mass in MeV: nucleon masses minus electrons plus electron binding."""
    Z, N, u = nuclide.Z, nuclide.N, CONSTANTS.u
    binding = (14.4381 * Z**2.39 + 1.55468e-6 * Z**5.35) * 1e-6
    return (Z + N) * u - 0.00054858 * Z * u + binding


@dataclass(frozen=True)
class TargetCrystal:
    """A single-element crystal, treated as a sphere for geometric purposes.

    ``n_atoms`` is the primary size parameter; the mass in grams is derived
    from it (``mass_g``) rather than the other way round.
    """

    nuclide: Nuclide = BI209
    n_atoms: float = 5e21
    mass_density: float = 9.78  # g/cm^3
    m_nucl: float = field(init=False)
    radius: float = field(init=False)

    def __post_init__(self):
        if not self.n_atoms > 0:
            raise ValueError(f"n_atoms must be positive, got {self.n_atoms}")
        if not self.mass_density > 0:
            raise ValueError(f"mass_density must be positive, got {self.mass_density}")
        m = nucleus_mass(self.nuclide)
        Z, A = self.nuclide.Z, self.nuclide.Z + self.nuclide.N
        if not Z * CONSTANTS.u < m < A * CONSTANTS.u + 1.0:
            raise ValueError(f"nuclear mass {m} MeV outside sanity envelope for {self.nuclide}")
        object.__setattr__(self, "m_nucl", m)
        volume_m3 = self.mass_g / self.mass_density * 1e-6
        object.__setattr__(self, "radius", (3.0 * volume_m3 / (4.0 * math.pi)) ** (1 / 3))

    @property
    def mass_g(self):
        return self.n_atoms * self.m_nucl * CONSTANTS.MeV_to_kg * 1e3

    @property
    def mass_kg(self):
        return self.mass_g * 1e-3

    @property
    def volume(self):
        """Volume in m^3."""
        return self.mass_g / self.mass_density * 1e-6

    @property
    def cross_section_area(self):
        """Geometric cross section pi r^2 in m^2."""
        return math.pi * self.radius**2

    @classmethod
    def from_mass(cls, mass_g, nuclide=BI209, mass_density=9.78):
        n = mass_g * 1e-3 / (nucleus_mass(nuclide) * CONSTANTS.MeV_to_kg)
        return cls(nuclide, n, mass_density)


@dataclass(frozen=True)
class ReactorSource:
    rate_per_GW: float = 2e20   # antineutrinos s^-1 GW_th^-1
    power: float = 4.5          # GW_th
    distance: float = 20.0      # m
    E0: float = 2.6             # MeV
    sigma_E: float = 0.75       # MeV

    def __post_init__(self):
        if self.power < 0:
            raise ValueError(f"power must be >= 0, got {self.power}")
        for name in ("distance", "E0", "sigma_E", "rate_per_GW"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


def flux_at_detector(source):
    """Isotropic flux r P / (4 pi d^2) in cm^-2 s^-1."""
    d_cm = source.distance * 100.0
    return source.rate_per_GW * source.power / (4.0 * math.pi * d_cm**2)


def spectrum_support(source):
    """Truncation window of the Gaussian spectrum, 4 sigma each side, E >= 0.05 MeV."""
    lo = max(0.05, source.E0 - 4.0 * source.sigma_E)
    return lo, source.E0 + 4.0 * source.sigma_E


def _gaussian_mass(source, lo, hi):
    s = source.sigma_E * math.sqrt(2.0)
    return 0.5 * (math.erf((hi - source.E0) / s) - math.erf((lo - source.E0) / s))


def spectrum_density(source, E):
    """Normalised energy distribution S(E) in MeV^-1.

    Gaussian in E, truncated to :func:`spectrum_support` and renormalised
    there; zero outside.
    """
    lo, hi = spectrum_support(source)
    E = np.asarray(E, dtype=float)
    norm = _gaussian_mass(source, lo, hi)
    g = np.exp(-0.5 * ((E - source.E0) / source.sigma_E) ** 2) / (
        source.sigma_E * math.sqrt(2.0 * math.pi) * norm
    )
    out = np.where((E >= lo) & (E <= hi), g, 0.0)
    return out if out.ndim else float(out)
