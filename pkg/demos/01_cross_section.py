"""How big is a reactor antineutrino's coherent cross section on bismuth?

Walks from the weak charge to the total cross section, and compares the
numerical integral with the heavy-nucleus shortcut.
"""
import numpy as np

from nuphase import BI209, ScatteringAmplitudeModel, nucleus_mass, sigma_total, weak_charge
from nuphase.cenns import max_recoil_energy, sigma_heavy_limit
from nuphase.units import cross_section_to_cm2

model = ScatteringAmplitudeModel.for_nuclide(BI209)
print(f"Bi-209: Q_W = {weak_charge(BI209):.3f}, nucleus mass = {nucleus_mass(BI209):.1f} MeV")

print("\n  E [MeV]   T_max [eV]   sigma [cm^2]   heavy-limit ratio")
for E in np.arange(1.0, 8.5, 1.0):
    sigma = sigma_total(model, E)
    print(f"  {E:6.1f}   {max_recoil_energy(E, model.m_nucl) * 1e6:9.2f}   "
          f"{cross_section_to_cm2(sigma):.4e}   {sigma / sigma_heavy_limit(model, E):.6f}")

print("\nRecoils of tens of eV and ~1e-39 cm^2: the nucleus barely moves, "
      "and the whole crystal takes the kick.")
