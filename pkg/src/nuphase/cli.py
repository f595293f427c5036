"""Command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 usage error, 3 numerical failure.
"""
import argparse
import json
import math
import sys

import numpy as np

from .config import ConfigError, load_config
from .feasibility import CavityPlan, SternGerlachPlan
from .quadrature import QuadratureError
from .runner import (
    array_scale_report,
    design_cavity_report,
    design_sg_report,
    feasibility_report,
    run_evolve,
    run_scan_pt,
    run_table,
)

EXIT_OK, EXIT_CONFIG, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        obj = obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def dump_json(obj):
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _log_grid(lo, hi, count, name):
    if count < 1:
        raise UsageError(f"{name} grid is empty (count = {count})")
    if not (lo > 0 and hi > 0) or hi < lo:
        raise UsageError(f"{name} grid needs 0 < min <= max")
    return np.geomspace(lo, hi, count)


def _cmd_cross_section(args, cfg):
    if args.energies:
        E = args.energies
    else:
        if args.E_count < 1:
            raise UsageError("energy grid is empty")
        E = np.linspace(args.E_min, args.E_max, args.E_count)
    _write(run_table(cfg, E), args.out)


def _cmd_evolve(args, cfg):
    csv_text, manifest = run_evolve(cfg)
    _write(csv_text, args.out)
    manifest_path = args.manifest
    if manifest_path is None and args.out not in (None, "-"):
        manifest_path = args.out.rsplit(".", 1)[0] + ".json"
    if manifest_path is not None:
        _write(dump_json(manifest), manifest_path)


def _cmd_scan_pt(args, cfg):
    P = _log_grid(args.P_min, args.P_max, args.P_count, "pressure")
    T = _log_grid(args.T_min, args.T_max, args.T_count, "temperature")
    _write(run_scan_pt(cfg, P, T), args.out)


def _cmd_design_sg(args, cfg):
    plan = SternGerlachPlan(dBdx=args.dBdx, t_acc=args.t_acc, mass=args.mass,
                            free_time=args.free_time, chi_m=args.chi_m)
    _write(dump_json(design_sg_report(plan)), args.out)


def _cmd_design_cavity(args, cfg):
    plan = CavityPlan(V=args.volume, V_c=args.cavity_volume, epsilon=args.epsilon,
                      omega_L=args.omega_L, t_kick=args.t_kick, n_photon=args.n_photon,
                      mass=args.mass)
    _write(dump_json(design_cavity_report(plan)), args.out)


def _cmd_array_scale(args, cfg):
    _write(dump_json(array_scale_report(args.n)), args.out)


def _cmd_feasibility(args, cfg):
    _write(dump_json(feasibility_report(cfg, args.sigma_wp, args.E_wp)), args.out)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="sectioned key-value config file")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key, e.g. superposition.dx_m=2e-14")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="nuphase",
        description="Neutrino-induced phase on a macroscopic spatial superposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cross-section", parents=[common], help="CEvNS cross-section table")
    p.add_argument("--energies", type=float, nargs="+", metavar="E_MeV")
    p.add_argument("--E-min", dest="E_min", type=float, default=1.0)
    p.add_argument("--E-max", dest="E_max", type=float, default=10.0)
    p.add_argument("--E-count", dest="E_count", type=int, default=10)
    p.set_defaults(func=_cmd_cross_section)

    p = sub.add_parser("evolve", parents=[common], help="phase/coherence trajectory")
    p.add_argument("--dx", type=float, metavar="M", help="branch separation in m")
    p.add_argument("--t-max", dest="t_max", type=float, metavar="S")
    p.add_argument("--n-points", dest="n_points", type=int)
    p.add_argument("--convention", choices=("paper", "unit"))
    p.add_argument("--manifest", metavar="PATH",
                   help="JSON manifest path (default: next to --out)")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("scan-pt", parents=[common], help="pressure-temperature budget scan")
    p.add_argument("--P-min", dest="P_min", type=float, default=1e-18)
    p.add_argument("--P-max", dest="P_max", type=float, default=1e-8)
    p.add_argument("--P-count", dest="P_count", type=int, default=50)
    p.add_argument("--T-min", dest="T_min", type=float, default=0.01)
    p.add_argument("--T-max", dest="T_max", type=float, default=300.0)
    p.add_argument("--T-count", dest="T_count", type=int, default=50)
    p.set_defaults(func=_cmd_scan_pt)

    sg = SternGerlachPlan()
    p = sub.add_parser("design-sg", parents=[common], help="Stern-Gerlach splitting estimate")
    p.add_argument("--dBdx", type=float, default=sg.dBdx)
    p.add_argument("--t-acc", dest="t_acc", type=float, default=sg.t_acc)
    p.add_argument("--mass", type=float, default=sg.mass, help="kg")
    p.add_argument("--free-time", dest="free_time", type=float, default=sg.free_time)
    p.add_argument("--chi-m", dest="chi_m", type=float, default=sg.chi_m)
    p.set_defaults(func=_cmd_design_sg)

    cav = CavityPlan()
    p = sub.add_parser("design-cavity", parents=[common], help="optomechanical kick estimate")
    p.add_argument("--volume", type=float, default=cav.V, help="crystal volume, m^3")
    p.add_argument("--cavity-volume", dest="cavity_volume", type=float, default=cav.V_c)
    p.add_argument("--epsilon", type=float, default=cav.epsilon)
    p.add_argument("--omega-L", dest="omega_L", type=float, default=cav.omega_L)
    p.add_argument("--t-kick", dest="t_kick", type=float, default=cav.t_kick)
    p.add_argument("--n-photon", dest="n_photon", type=int, default=cav.n_photon)
    p.add_argument("--mass", type=float, default=cav.mass, help="kg")
    p.set_defaults(func=_cmd_design_cavity)

    p = sub.add_parser("array-scale", parents=[common], help="n^4 detector-array scaling")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_array_scale)

    p = sub.add_parser("feasibility", parents=[common], help="decoherence budget and windows")
    p.add_argument("--sigma-wp", dest="sigma_wp", type=float, default=0.01)
    p.add_argument("--E-wp", dest="E_wp", type=float, default=10.0,
                   help="neutrino energy for the coherence-width check, MeV")
    p.set_defaults(func=_cmd_feasibility)
    return parser


def _flag_overrides(args):
    pairs = []
    for attr, key in (("dx", "superposition.dx_m"), ("t_max", "evolve.t_max_s"),
                      ("n_points", "evolve.n_points"),
                      ("convention", "evolve.prefactor_convention")):
        value = getattr(args, attr, None)
        if value is not None:
            pairs.append(f"{key}={value}")
    return pairs


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        cfg = load_config(args.config)
        overrides = args.set + _flag_overrides(args)
        if overrides:
            cfg = cfg.with_overrides(overrides)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        args.func(args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        print(dump_json(exc.diagnostics), file=sys.stderr, end="")
        return EXIT_NUMERIC
    except (ValueError, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
