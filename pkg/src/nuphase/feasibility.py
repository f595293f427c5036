"""Environmental decoherence budget and superposition-creation estimates.

The gas and blackbody rates use textbook long-wavelength forms with their
order-unity coefficients collected in ``DecoherenceCoefficients``, so better
literature values can be dropped in without touching call sites.
"""
from dataclasses import dataclass
import math

import numpy as np

from .units import CONSTANTS, to_si

__all__ = [
    "GAS_MASSES",
    "DecoherenceCoefficients",
    "Environment",
    "SternGerlachPlan",
    "CavityPlan",
    "epsilon_from_im_polarizability",
    "thermal_wavelength",
    "gas_decoherence_rate",
    "blackbody_decoherence_rate",
    "decoherence_rates",
    "pt_region_scan",
    "wavepacket_window",
    "neutrino_coherence_width",
    "stern_gerlach_design",
    "cavity_kick_design",
]

# molecular masses in kg
GAS_MASSES = {
    "He": 4.002602 * CONSTANTS.u_kg,
    "H2": 2.01588 * CONSTANTS.u_kg,
    "N2": 28.0134 * CONSTANTS.u_kg,
    "Ar": 39.948 * CONSTANTS.u_kg,
}


@dataclass(frozen=True)
class DecoherenceCoefficients:
    gas_crossover: float = 1.0                     # multiplies (2 pi dx / lambda_th)^2
    blackbody: float = 16 * math.pi**5 / 189       # C_e


def epsilon_from_im_polarizability(im_value):
    """Permittivity whose (eps - 1)/(eps + 2) is purely imaginary, i * im_value."""
    y = 1j * im_value
    return (1 + 2 * y) / (1 - y)


@dataclass(frozen=True)
class Environment:
    pressure: float = 1e-16          # Pa
    temperature: float = 1.0         # K, shared by gas and crystal interior
    gas_mass: float = GAS_MASSES["He"]
    epsilon_bb: complex = epsilon_from_im_polarizability(0.1)

    def __post_init__(self):
        if self.pressure < 0:
            raise ValueError("pressure must be non-negative")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")
        if not self.gas_mass > 0:
            raise ValueError("gas_mass must be positive")

    @property
    def im_polarizability(self):
        e = self.epsilon_bb
        return ((e - 1) / (e + 2)).imag


def thermal_wavelength(temperature, gas_mass):
    """h / sqrt(2 pi m k_B T) in metres."""
    return CONSTANTS.h_SI / math.sqrt(2 * math.pi * gas_mass * CONSTANTS.k_B * temperature)


def gas_decoherence_rate(env, target, delta_x, coeffs=DecoherenceCoefficients()):
    """Localisation rate from background-gas collisions, s^-1.

    Quadratic in delta_x below the gas thermal wavelength, saturating at the
    total collision rate n v pi r^2 above it.
    """
    kT = CONSTANTS.k_B * env.temperature
    n_gas = env.pressure / kT
    v_mean = math.sqrt(8 * kT / (math.pi * env.gas_mass))
    collisions = n_gas * v_mean * target.cross_section_area
    lam = thermal_wavelength(env.temperature, env.gas_mass)
    return collisions * min(1.0, coeffs.gas_crossover * (2 * math.pi * delta_x / lam) ** 2)


def blackbody_decoherence_rate(env, target, delta_x, coeffs=DecoherenceCoefficients()):
    """Localisation rate from thermal emission by the crystal, s^-1 (scales as T^6 dx^2)."""
    k_th = CONSTANTS.k_B * env.temperature / (CONSTANTS.hbar_SI * CONSTANTS.c)
    return (coeffs.blackbody * CONSTANTS.c * target.volume * k_th**6
            * env.im_polarizability * delta_x**2)


def decoherence_rates(env, target, delta_x, coeffs=DecoherenceCoefficients()):
    return (gas_decoherence_rate(env, target, delta_x, coeffs),
            blackbody_decoherence_rate(env, target, delta_x, coeffs))


def pt_region_scan(target, delta_x, coherence_time_target, P_grid, T_grid,
                   env=Environment(), coeffs=DecoherenceCoefficients()):
    """Evaluate the decoherence budget on a pressure x temperature grid.

    Returns ``(allowed, gas_rate, bb_rate)``, each of shape (len(P), len(T)).
    A cell is allowed when 1 / (gas + bb) reaches the target coherence time.
    """
    P = np.asarray(P_grid, dtype=float)
    T = np.asarray(T_grid, dtype=float)
    if P.size == 0 or T.size == 0:
        raise ValueError("pressure and temperature grids must be non-empty")
    if np.any(np.diff(P) < 0) or np.any(np.diff(T) < 0):
        raise ValueError("grids must be sorted ascending")
    gas = np.empty((P.size, T.size))
    bb = np.empty_like(gas)
    for i, p in enumerate(P):
        for j, temp in enumerate(T):
            cell = Environment(p, temp, env.gas_mass, env.epsilon_bb)
            gas[i, j], bb[i, j] = decoherence_rates(cell, target, delta_x, coeffs)
    total = gas + bb
    # total == 0 means no decoherence at all
    allowed = total * coherence_time_target <= 1.0
    return allowed, gas, bb


def wavepacket_window(target, cfg):
    """Allowed range for the crystal wavepacket width: 1/m_nucl <= sigma_c <= delta_x."""
    lower = to_si(1.0 / target.m_nucl, "length")
    upper = cfg.delta_x
    return lower, upper, lower <= cfg.sigma_c <= upper


def neutrino_coherence_width(sigma_wp, E, delta_x=None):
    """Spatial width 1/(2 sigma_wp E) of a neutrino packet, in metres.

    With ``delta_x`` given, also returns whether the packet is narrow enough
    to resolve the two branches (delta_x > width).
    """
    if not sigma_wp > 0 or not E > 0:
        raise ValueError("sigma_wp and E must be positive")
    width = to_si(1.0 / (2.0 * sigma_wp * E), "length")
    if delta_x is None:
        return width
    return width, delta_x > width


@dataclass(frozen=True)
class SternGerlachPlan:
    dBdx: float = 1e6          # T/m
    t_acc: float = 1e-5        # s
    mass: float = 1e-3         # kg
    free_time: float = 1e5     # s
    chi_m: float = 1.66e-4     # |volume susceptibility| of bismuth
    mu_0: float = CONSTANTS.mu_0

    def __post_init__(self):
        for name in ("dBdx", "mass", "chi_m", "mu_0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.t_acc < 0 or self.free_time < 0:
            raise ValueError("t_acc and free_time must be non-negative")


def stern_gerlach_design(plan):
    """Returns (velocity m/s, delta_x m, trap angular frequency rad/s, ground-state spread m)."""
    v = CONSTANTS.mu_B * plan.dBdx * plan.t_acc / plan.mass
    omega = math.sqrt(plan.chi_m / plan.mu_0) * plan.dBdx
    spread = math.sqrt(CONSTANTS.hbar_SI / (2 * plan.mass * omega))
    return v, 2 * v * plan.free_time, omega, spread


@dataclass(frozen=True)
class CavityPlan:
    V: float = 1e-6            # m^3
    V_c: float = 1e-6          # m^3
    epsilon: float = math.inf
    omega_L: float = 1e10      # rad/s
    t_kick: float = 1e-6       # s
    n_photon: int = 1
    mass: float = 1e-3         # kg

    def __post_init__(self):
        for name in ("V", "V_c", "omega_L", "mass"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.t_kick < 0 or self.n_photon < 0:
            raise ValueError("t_kick and n_photon must be non-negative")


def cavity_kick_design(plan):
    """Optomechanical coupling g (rad/s) and the resulting velocity kick (m/s)."""
    if plan.epsilon == -1:
        raise ZeroDivisionError("epsilon = -1 makes the coupling singular")
    ratio = 1.0 if math.isinf(plan.epsilon) else (plan.epsilon - 1) / (plan.epsilon + 1)
    g = 0.75 * plan.V / plan.V_c * ratio * plan.omega_L
    k = plan.omega_L / CONSTANTS.c
    v = CONSTANTS.hbar_SI * g * k * plan.n_photon * plan.t_kick / plan.mass
    return g, v
