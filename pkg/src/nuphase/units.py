"""Physical constants and natural-unit conversions.

Everything inside the package is computed in MeV-based natural units
(hbar = c = 1). SI only appears in configuration input and report output,
and the conversions here are the only place that boundary is crossed.
"""
from dataclasses import dataclass
import math

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "UNIT_TAGS",
    "to_natural",
    "to_si",
    "cross_section_to_cm2",
]


@dataclass(frozen=True)
class PhysicalConstants:
    G_F: float = 1.1664e-11          # MeV^-2
    u: float = 931.5                 # MeV
    hbar_c: float = 197.3269804      # MeV fm
    hbar: float = 6.582119569e-22    # MeV s
    sin2_theta_W: float = 0.23857    # low-energy effective value
    mu_B: float = 9.2740100783e-24   # J/T
    k_B: float = 1.380649e-23        # J/K
    c: float = 299792458.0           # m/s
    h_SI: float = 6.62607015e-34     # J s
    hbar_SI: float = 1.054571817e-34  # J s
    mu_0: float = 1.25663706212e-6   # T m/A
    MeV_to_J: float = 1.602176634e-13
    u_kg: float = 1.66053906660e-27

    @property
    def mev_inv_to_m(self):
        """Length of 1 MeV^-1 in metres."""
        return self.hbar_c * 1e-15

    @property
    def mev_inv2_to_cm2(self):
        return (self.hbar_c * 1e-13) ** 2

    @property
    def s_to_mev_inv(self):
        """1 s expressed in MeV^-1."""
        return 1.0 / self.hbar

    @property
    def MeV_to_kg(self):
        return self.MeV_to_J / self.c**2


CONSTANTS = PhysicalConstants()

# SI -> natural multiplicative factors, keyed by unit tag.
_TO_NATURAL = {
    "length": 1.0 / CONSTANTS.mev_inv_to_m,           # m -> MeV^-1
    "area": 1.0 / CONSTANTS.mev_inv_to_m**2,          # m^2 -> MeV^-2
    "time": CONSTANTS.s_to_mev_inv,                    # s -> MeV^-1
    "energy": 1.0 / CONSTANTS.MeV_to_J,                # J -> MeV
    "mass": 1.0 / CONSTANTS.MeV_to_kg,                 # kg -> MeV
    "inverse-time": CONSTANTS.hbar,                    # s^-1 -> MeV
}
UNIT_TAGS = tuple(_TO_NATURAL)


def _factor(unit):
    try:
        return _TO_NATURAL[unit]
    except KeyError:
        raise ValueError(
            f"unknown unit tag {unit!r}; expected one of {', '.join(UNIT_TAGS)}"
        ) from None


def to_natural(value, unit):
    """Convert an SI quantity (m, m^2, s, J, kg, 1/s) to MeV powers."""
    return value * _factor(unit)


def to_si(value, unit):
    """Inverse of :func:`to_natural`."""
    return value / _factor(unit)


def cross_section_to_cm2(sigma):
    """Convert a cross section from MeV^-2 to cm^2."""
    if sigma < 0 or math.isnan(sigma):
        raise ValueError(f"cross section must be non-negative, got {sigma}")
    return sigma * CONSTANTS.mev_inv2_to_cm2
