"""Which vacuum and temperature keep the superposition alive for 1e5 s?

Scans pressure and temperature, prints a coarse allowed/forbidden map and
the rates at the nominal operating point.
"""
import numpy as np

from nuphase import TargetCrystal
from nuphase.feasibility import Environment, decoherence_rates, pt_region_scan

dx, goal = 1e-14, 1e5
for label, target in (("5e21 atoms", TargetCrystal()), ("1 g", TargetCrystal.from_mass(1.0))):
    gas, bb = decoherence_rates(Environment(1e-16, 1.0), target, dx)
    print(f"{label:>10}: gas {gas:.2e} /s, blackbody {bb:.2e} /s, "
          f"coherence time {1 / (gas + bb):.2e} s")

P = np.geomspace(1e-20, 1e-10, 11)
T = np.geomspace(0.01, 100, 9)
allowed, _, _ = pt_region_scan(TargetCrystal(), dx, goal, P, T)
print("\nallowed (#) for a 1e5 s coherence time; rows P [Pa], columns T [K]")
print("          " + " ".join(f"{t:7.0e}" for t in T))
for p, row in zip(P, allowed):
    print(f"  {p:7.0e} " + " ".join("      #" if a else "      ." for a in row))
print("\nAt 1 K and 1e-16 Pa the gas alone caps coherence near 1e4 s; "
      "the 1e5 s goal needs about 1e-17 Pa below 1 K.")
