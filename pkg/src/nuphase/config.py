"""Flat, sectioned key-value run configuration.

One ``section.key = value`` per line, ``#`` starts a comment. Units are
part of the key name (``dx_m``, ``P_Pa``...). Every key has a default, so an
empty document is a complete configuration.
"""
from dataclasses import dataclass, field
import math

from .cenns import ScatteringAmplitudeModel
from .evolution import PREFACTOR_CONVENTIONS, SuperpositionConfig
from .feasibility import GAS_MASSES, Environment, epsilon_from_im_polarizability
from .target import Nuclide, ReactorSource, TargetCrystal

__all__ = ["ConfigError", "RunConfig", "SCHEMA", "parse_config", "load_config"]


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if isinstance(line, int) else (f"{line}: " if line else "")
        super().__init__(where + message)
        self.line = line


def _positive(v):
    return v > 0


def _non_negative(v):
    return v >= 0


def _choice(options):
    return lambda v: v in options


# key -> (type, default, check, description of the check)
SCHEMA = {
    "target.Z": (int, 83, _positive, "> 0"),
    "target.N": (int, 126, _non_negative, ">= 0"),
    "target.n_atoms": (float, 5e21, _positive, "> 0"),
    "target.density_g_cm3": (float, 9.78, _positive, "> 0"),
    "source.power_GW": (float, 4.5, _non_negative, ">= 0"),
    "source.distance_m": (float, 20.0, _positive, "> 0"),
    "source.rate_per_GW": (float, 2e20, _positive, "> 0"),
    "source.E0_MeV": (float, 2.6, _positive, "> 0"),
    "source.sigmaE_MeV": (float, 0.75, _positive, "> 0"),
    "superposition.dx_m": (float, 1e-14, _positive, "> 0"),
    "superposition.sigma_c_m": (float, 1e-16, _positive, "> 0"),
    "superposition.beam_angle_rad": (float, 0.0, lambda v: 0 <= v <= math.pi / 2, "in [0, pi/2]"),
    "evolve.t_max_s": (float, 3e5, _positive, "> 0"),
    "evolve.n_points": (int, 301, lambda v: v >= 2, ">= 2"),
    "evolve.prefactor_convention": (str, "paper", _choice(PREFACTOR_CONVENTIONS),
                                    "one of " + "|".join(PREFACTOR_CONVENTIONS)),
    "env.P_Pa": (float, 1e-16, _non_negative, ">= 0"),
    "env.T_K": (float, 1.0, _positive, "> 0"),
    "env.gas": (str, "He", _choice(GAS_MASSES), "one of " + "|".join(GAS_MASSES)),
    "env.im_eps_bb": (float, 0.1, _non_negative, ">= 0"),
    "env.coherence_target_s": (float, 1e5, _positive, "> 0"),
    "quadrature.n_theta": (int, 64, lambda v: v >= 4, ">= 4"),
    "quadrature.n_energy": (int, 32, lambda v: v >= 4, ">= 4"),
    "quadrature.rel_tol": (float, 1e-8, _positive, "> 0"),
}


def _convert(key, raw, line):
    typ, _, check, rule = SCHEMA[key]
    try:
        if typ is int:
            as_float = float(raw)
            if not as_float.is_integer():
                raise ValueError
            value = int(as_float)
        elif typ is float:
            value = float(raw)
            if not math.isfinite(value):
                raise ConfigError(f"{key} must be finite, got {raw!r}", line)
        else:
            value = raw
    except ValueError:
        raise ConfigError(f"{key} expects {typ.__name__}, got {raw!r}", line) from None
    if not check(value):
        raise ConfigError(f"{key} = {raw} violates constraint {rule}", line)
    return value


@dataclass(frozen=True)
class RunConfig:
    values: dict = field(default_factory=lambda: {k: v[1] for k, v in SCHEMA.items()})

    def __getitem__(self, key):
        return self.values[key]

    def echo(self):
        return dict(sorted(self.values.items()))

    def with_overrides(self, assignments):
        """Apply ``key=value`` strings, e.g. from the command line."""
        values = dict(self.values)
        for text in assignments:
            key, raw = _split(text, "override")
            values[key] = _convert(key, raw, f"override {text!r}")
        cfg = RunConfig(values)
        cfg.validate()
        return cfg

    def nuclide(self):
        return Nuclide(self["target.Z"], self["target.N"])

    def target(self):
        return TargetCrystal(self.nuclide(), self["target.n_atoms"], self["target.density_g_cm3"])

    def source(self):
        return ReactorSource(self["source.rate_per_GW"], self["source.power_GW"],
                             self["source.distance_m"], self["source.E0_MeV"],
                             self["source.sigmaE_MeV"])

    def superposition(self):
        return SuperpositionConfig(self["superposition.dx_m"], self["superposition.sigma_c_m"],
                                   self["superposition.beam_angle_rad"])

    def environment(self):
        return Environment(self["env.P_Pa"], self["env.T_K"], GAS_MASSES[self["env.gas"]],
                           epsilon_from_im_polarizability(self["env.im_eps_bb"]))

    def model(self):
        return ScatteringAmplitudeModel.for_target(self.target())

    def quadrature(self):
        return {"n_theta": self["quadrature.n_theta"], "n_energy": self["quadrature.n_energy"],
                "rel_tol": self["quadrature.rel_tol"]}

    def validate(self, lines=None):
        """Cross-field checks; errors point at the first line of the section."""
        lines = lines or {}
        for section, build in (("target", self.target), ("source", self.source),
                               ("superposition", self.superposition),
                               ("env", self.environment)):
            try:
                build()
            except ValueError as exc:
                where = min((n for k, n in lines.items() if k.startswith(section + ".")),
                            default=None)
                raise ConfigError(f"[{section}] {exc}", where) from None


def _split(text, line):
    if "=" not in text:
        raise ConfigError(f"malformed line {text!r}, expected 'section.key = value'", line)
    key, raw = (part.strip() for part in text.split("=", 1))
    if key not in SCHEMA:
        raise ConfigError(f"unknown key {key!r}", line)
    if not raw:
        raise ConfigError(f"missing value for {key}", line)
    return key, raw


def parse_config(text):
    """Parse a configuration document into a validated :class:`RunConfig`."""
    values = {k: v[1] for k, v in SCHEMA.items()}
    lines = {}
    unknown = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            key, raw = _split(line, number)
        except ConfigError as exc:
            if "unknown key" in str(exc):
                unknown.append((number, line.split("=", 1)[0].strip()))
                continue
            raise
        values[key] = _convert(key, raw, number)
        lines[key] = number
    if unknown:
        listing = ", ".join(f"{k!r} (line {n})" for n, k in unknown)
        raise ConfigError(f"unknown keys: {listing}", unknown[0][0])
    cfg = RunConfig(values)
    cfg.validate(lines)
    return cfg


def load_config(path=None):
    if path is None:
        return RunConfig()
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
