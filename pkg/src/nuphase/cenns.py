"""Coherent elastic neutrino-nucleus scattering: kinematics and cross sections.

The form factor is set to one, which restricts the validity to neutrino
energies well below the inverse nuclear radius. Energies above
``E_MAX_VALIDITY`` are rejected rather than silently mis-modelled.
"""
from dataclasses import dataclass
import math

import numpy as np

from .quadrature import QuadInfo, adaptive_gauss_legendre
from .target import TargetCrystal, nucleus_mass, weak_charge
from .units import CONSTANTS

__all__ = [
    "E_MAX_VALIDITY",
    "AMPLITUDE_NORMALIZATION",
    "ValidityError",
    "ScatteringAmplitudeModel",
    "RecoilKinematics",
    "recoil_energy",
    "max_recoil_energy",
    "dsigma_dT",
    "sigma_total",
    "sigma_heavy_limit",
    "amplitude_sq",
]

E_MAX_VALIDITY = 50.0  # MeV

# c0 in |M|^2 = c0 G_F^2 Q_W^2 m^2 E^2 (1 + cos theta). Fixed by requiring
# (1/(64 pi^2 m^2)) * int dOmega |M|^2 == sigma_total in the static limit.
AMPLITUDE_NORMALIZATION = 4.0


class ValidityError(ValueError):
    """Input outside the regime where the F(q^2) = 1 model holds."""


@dataclass(frozen=True)
class ScatteringAmplitudeModel:
    Q_W: float
    m_nucl: float  # MeV
    form_factor_mode: str = "unity"

    def __post_init__(self):
        if self.form_factor_mode != "unity":
            raise ValueError(f"unsupported form factor mode {self.form_factor_mode!r}")
        if not self.m_nucl > 0:
            raise ValueError("m_nucl must be positive")

    @classmethod
    def for_nuclide(cls, nuclide):
        return cls(weak_charge(nuclide), nucleus_mass(nuclide))

    @classmethod
    def for_target(cls, target: TargetCrystal):
        return cls(weak_charge(target.nuclide), target.m_nucl)


@dataclass(frozen=True)
class RecoilKinematics:
    E_nu: float
    m_nucl: float

    def __post_init__(self):
        if not self.E_nu > 0 or not self.m_nucl > 0:
            raise ValueError("E_nu and m_nucl must be positive")
        if self.E_nu >= 1e-2 * self.m_nucl:
            raise ValidityError(
                f"E_nu = {self.E_nu} MeV is not small compared to m_nucl = {self.m_nucl} MeV"
            )


def recoil_energy(kin, theta_recoil):
    """Nuclear kinetic energy T for recoil angle theta (w.r.t. the beam)."""
    theta = np.asarray(theta_recoil, dtype=float)
    if np.any((theta < 0) | (theta > 0.5 * math.pi)):
        raise ValueError("recoil angle must lie in [0, pi/2]")
    m, E = kin.m_nucl, kin.E_nu
    c2 = np.cos(theta) ** 2
    # cos(pi/2) is 6e-17, not 0
    c2 = np.where(theta == 0.5 * math.pi, 0.0, c2)
    T = 2.0 * m * E**2 * c2 / ((m + E) ** 2 - E**2 * c2)
    return T if T.ndim else float(T)


def max_recoil_energy(E, m_nucl):
    """T_max = 2 E^2 m / ((m + E)^2 - E^2), i.e. the theta = 0 recoil."""
    return 2.0 * E**2 * m_nucl / ((m_nucl + E) ** 2 - E**2)


def _check_energy(E):
    if E > E_MAX_VALIDITY:
        raise ValidityError(
            f"E = {E} MeV exceeds {E_MAX_VALIDITY} MeV: form factor F=1 assumption broken"
        )
    if E < 0:
        raise ValueError(f"neutrino energy must be non-negative, got {E}")


def _dsigma_raw(model, E, T):
    m = model.m_nucl
    pref = CONSTANTS.G_F**2 * model.Q_W**2 * m / (4.0 * math.pi)
    return pref * (1.0 - T / E - m * T / (2.0 * E**2))


def dsigma_dT(model, E, T):
    """Differential cross section in MeV^-3 for recoil energy T (MeV).

    Values that round below zero right at the kinematic endpoint are
    clamped to 0.
    """
    _check_energy(E)
    T = np.asarray(T, dtype=float)
    t_max = max_recoil_energy(E, model.m_nucl)
    if np.any(T < 0) or np.any(T > t_max * (1 + 1e-9)):
        raise ValueError(f"T must lie in [0, T_max={t_max:.6g}] MeV")
    out = np.maximum(_dsigma_raw(model, E, T), 0.0)
    return out if out.ndim else float(out)


def sigma_total(model, E, rel_tol=1e-8, n_nodes=64, full_output=False):
    """Total cross section in MeV^-2, integrating dsigma/dT over [0, T_max]."""
    _check_energy(E)
    if E == 0:
        return (0.0, QuadInfo()) if full_output else 0.0
    t_max = max_recoil_energy(E, model.m_nucl)
    clamped = 0

    def integrand(T):
        nonlocal clamped
        raw = _dsigma_raw(model, E, T)
        clamped += int(np.count_nonzero(raw < 0))
        return np.maximum(raw, 0.0)

    value, info = adaptive_gauss_legendre(integrand, 0.0, t_max, n=n_nodes, rel_tol=rel_tol)
    info.clamped = clamped
    return (value, info) if full_output else value


def sigma_heavy_limit(model, E):
    """G_F^2 Q_W^2 E^2 / (4 pi), the m_nucl >> E limit of sigma_total."""
    return CONSTANTS.G_F**2 * model.Q_W**2 * E**2 / (4.0 * math.pi)


def amplitude_sq(model, E, theta_nu):
    """Spin-summed |M|^2 in the static-nucleus limit.

    ``theta_nu`` is the scattered-neutrino polar angle relative to the
    incident direction; the angular shape is 1 + cos(theta_nu).
    """
    cos_t = np.cos(np.asarray(theta_nu, dtype=float))
    return _amplitude_sq_cos(model, E, cos_t)


def _amplitude_sq_cos(model, E, cos_t):
    scale = AMPLITUDE_NORMALIZATION * CONSTANTS.G_F**2 * model.Q_W**2 * model.m_nucl**2
    out = scale * np.asarray(E) ** 2 * (1.0 + cos_t)
    return out if np.ndim(out) else float(out)
