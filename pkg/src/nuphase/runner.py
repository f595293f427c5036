"""Scan orchestration and CSV / JSON emission."""
import csv
from dataclasses import asdict
from datetime import datetime, timezone
import io
import math

import numpy as np

from . import __version__
from .cenns import _check_energy, max_recoil_energy, sigma_total
from .evolution import complex_rate, evolve_coherence, saturation_rate, spectrum_averaged_sigma
from .feasibility import (
    CavityPlan,
    SternGerlachPlan,
    cavity_kick_design,
    decoherence_rates,
    neutrino_coherence_width,
    pt_region_scan,
    stern_gerlach_design,
    wavepacket_window,
)
from .readout import array_scaling, click_probability, expected_scatterings, readout_signal
from .target import flux_at_detector, weak_charge
from .units import cross_section_to_cm2

__all__ = [
    "format_number",
    "run_evolve",
    "run_scan_pt",
    "run_table",
    "feasibility_report",
    "design_sg_report",
    "design_cavity_report",
    "array_scale_report",
]

EVOLVE_COLUMNS = ("t_s", "phase_rad", "amplitude", "signal_cos", "signal_sin", "click_prob")
SCAN_COLUMNS = ("P_Pa", "T_K", "gas_rate", "bb_rate", "coherence_time_s", "allowed")
TABLE_COLUMNS = ("E_MeV", "T_max_eV", "sigma_cm2")

# order-of-magnitude reference values for the design, reported next to ours
QUOTED = {
    "wavepacket_lower_m": 1e-17,
    "neutrino_width_m": 3e-12,
    "ground_state_spread_m": 1e-16,
    "v_kick_m_s": 1e-19,
}


def format_number(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buf.getvalue()


def run_evolve(cfg):
    """Coherence trajectory CSV plus a manifest of every derived quantity."""
    target, source, sup = cfg.target(), cfg.source(), cfg.superposition()
    model = cfg.model()
    convention = cfg["evolve.prefactor_convention"]
    rate = complex_rate(model, source, target, sup, convention=convention, **cfg.quadrature())
    t = np.linspace(0.0, cfg["evolve.t_max_s"], cfg["evolve.n_points"])
    traj = evolve_coherence(rate, t)

    rows = []
    for ti in t:
        amp, phase = traj.at(ti)
        rows.append((ti, phase, amp, readout_signal(traj, ti, "cos"),
                     readout_signal(traj, ti, "sin"), click_probability(traj, ti)))

    t_max = cfg["evolve.t_max_s"]
    mean, p2 = expected_scatterings(source, target, t_max, convention, model)
    mean_unit, p2_unit = expected_scatterings(source, target, t_max, "unit", model)
    E0 = source.E0
    derived = {
        "Q_W": weak_charge(target.nuclide),
        "m_nucl_MeV": target.m_nucl,
        "implied_mass_g": target.mass_g,
        "radius_m": target.radius,
        "flux_cm2s": flux_at_detector(source),
        "sigma_tot_cm2_at_E0": cross_section_to_cm2(sigma_total(model, E0)),
        "sigma_bar_cm2": cross_section_to_cm2(spectrum_averaged_sigma(model, source)),
        "decay_per_s": rate.decay,
        "phase_rate_rad_per_s": rate.phase_rate,
        "saturation_decay_per_s": saturation_rate(model, source, target, convention),
        "time_to_pi_phase_s": math.pi / rate.phase_rate if rate.phase_rate else math.inf,
        "expected_scatterings_at_t_max": mean,
        "p_geq_2_at_t_max": p2,
        "expected_scatterings_unit_convention_at_t_max": mean_unit,
        "p_geq_2_unit_convention_at_t_max": p2_unit,
    }
    manifest = {
        "tool": "nuphase",
        "version": __version__,
        "config": cfg.echo(),
        "derived": derived,
        "diagnostics": {k: (float(v) if isinstance(v, np.floating) else v)
                        for k, v in rate.diagnostics.items()},
        "run": {"timestamp": datetime.now(timezone.utc).isoformat()},
    }
    return _csv(EVOLVE_COLUMNS, rows), manifest


def run_scan_pt(cfg, P_grid, T_grid):
    target = cfg.target()
    env = cfg.environment()
    dx = cfg["superposition.dx_m"]
    allowed, gas, bb = pt_region_scan(target, dx, cfg["env.coherence_target_s"],
                                      P_grid, T_grid, env)
    rows = []
    for i, P in enumerate(P_grid):
        for j, T in enumerate(T_grid):
            total = gas[i, j] + bb[i, j]
            tau = 1.0 / total if total > 0 else math.inf
            rows.append((P, T, gas[i, j], bb[i, j], tau, bool(allowed[i, j])))
    return _csv(SCAN_COLUMNS, rows)


def run_table(cfg, E_grid):
    """Cross-section table. All energies are validated before any row is built."""
    model = cfg.model()
    E_grid = [float(E) for E in E_grid]
    for E in E_grid:
        _check_energy(E)
    rows = [(E, max_recoil_energy(E, model.m_nucl) * 1e6,
             cross_section_to_cm2(sigma_total(model, E)))
            for E in E_grid]
    return _csv(TABLE_COLUMNS, rows)


def feasibility_report(cfg, sigma_wp=0.01, E_wp=10.0):
    target, sup, env = cfg.target(), cfg.superposition(), cfg.environment()
    gas, bb = decoherence_rates(env, target, sup.delta_x)
    total = gas + bb
    lower, upper, ok = wavepacket_window(target, sup)
    width, resolves = neutrino_coherence_width(sigma_wp, E_wp, sup.delta_x)
    return {
        "implied_mass_g": target.mass_g,
        "radius_m": target.radius,
        "decoherence": {
            "pressure_Pa": env.pressure,
            "temperature_K": env.temperature,
            "gas_rate_per_s": gas,
            "blackbody_rate_per_s": bb,
            "coherence_time_s": 1.0 / total if total > 0 else math.inf,
            "allowed": bool(total * cfg["env.coherence_target_s"] <= 1.0),
        },
        "wavepacket_window": {"lower_m": lower, "upper_m": upper,
                              "sigma_c_m": sup.sigma_c, "ok": bool(ok),
                              "quoted_lower_m": QUOTED["wavepacket_lower_m"]},
        "neutrino_coherence": {"sigma_wp": sigma_wp, "E_MeV": E_wp, "width_m": width,
                               "resolves_superposition": bool(resolves),
                               "quoted_width_m": QUOTED["neutrino_width_m"]},
    }


def design_sg_report(plan=SternGerlachPlan()):
    v, dx, omega, spread = stern_gerlach_design(plan)
    return {"plan": asdict(plan), "velocity_m_s": v, "delta_x_m": dx,
            "trap_frequency_rad_s": omega, "ground_state_spread_m": spread,
            "quoted_ground_state_spread_m": QUOTED["ground_state_spread_m"]}


def design_cavity_report(plan=CavityPlan()):
    g, v = cavity_kick_design(plan)
    return {"plan": asdict(plan), "coupling_rad_s": g, "v_kick_m_s": v,
            "quoted_v_kick_m_s": QUOTED["v_kick_m_s"]}


def array_scale_report(n):
    return asdict(array_scaling(n))
