"""Can a gram-scale crystal be split by 1e-14 m at all?

Stern-Gerlach and cavity-kick estimates, the wavepacket window, and the
neutrino coherence length that sets the resolution scale.
"""
from nuphase import SuperpositionConfig, TargetCrystal
from nuphase.feasibility import (CavityPlan, SternGerlachPlan, cavity_kick_design,
                                 neutrino_coherence_width, stern_gerlach_design,
                                 wavepacket_window)
from nuphase.readout import array_scaling

v, dx, omega, spread = stern_gerlach_design(SternGerlachPlan())
print(f"Stern-Gerlach: v = {v:.2e} m/s -> dx = {dx:.2e} m after 1e5 s of free flight")
print(f"  diamagnetic trap {omega:.2e} rad/s, ground-state spread {spread:.2e} m")

g, v_kick = cavity_kick_design(CavityPlan())
print(f"cavity: g = {g:.2e} rad/s, single-photon kick {v_kick:.2e} m/s")

lower, upper, ok = wavepacket_window(TargetCrystal(), SuperpositionConfig())
print(f"wavepacket width window [{lower:.1e}, {upper:.1e}] m, 1e-16 m inside: {ok}")
width, resolves = neutrino_coherence_width(0.01, 10.0, 1e-14)
print(f"neutrino packet width {width:.2e} m, resolves the branches: {resolves}")

for n in (1, 2, 10):
    s = array_scaling(n)
    print(f"array n={n:2d}: {s.crystal_count:6d} crystals of mass x{s.mass_factor:g}, "
          f"run x{s.duration_factor:g}, phase precision {s.phase_precision:g}")
