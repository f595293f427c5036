import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from nuphase.target import (
    BI209,
    Nuclide,
    ReactorSource,
    TargetCrystal,
    flux_at_detector,
    nucleus_mass,
    spectrum_density,
    spectrum_support,
    weak_charge,
)


def test_weak_charge_examples():
    assert weak_charge(BI209) == pytest.approx(129.79, abs=5e-3)
    assert weak_charge(Nuclide(1, 0)) == pytest.approx(0.04572, rel=1e-6)
    assert weak_charge(SimpleNamespace(Z=0, N=1)) == 1.0


@given(st.integers(1, 100), st.integers(0, 200))
def test_weak_charge_slope_in_N(Z, N):
    assert weak_charge(Nuclide(Z, N + 1)) - weak_charge(Nuclide(Z, N)) == pytest.approx(1.0)


def test_nucleus_mass_bismuth():
    m = nucleus_mass(BI209)
    assert m == pytest.approx(1.94642e5, rel=5e-6)
    # electron term and electron binding evaluated separately
    assert 209 * 931.5 - m == pytest.approx(42.41 - 0.586, abs=0.01)
    assert 83 * 931.5 < m < 209 * 931.5 + 1


def test_nucleus_mass_hydrogen():
    assert nucleus_mass(Nuclide(1, 0)) == pytest.approx(931.5 - 0.511 + 1.44e-5, abs=1e-3)


@pytest.mark.parametrize("Z, N", [(0, 1), (1, -1), (1.5, 2)])
def test_invalid_nuclide(Z, N):
    with pytest.raises(ValueError):
        Nuclide(Z, N)


def test_crystal_geometry():
    t = TargetCrystal()
    volume = t.mass_g / 9.78 * 1e-6
    assert t.radius == pytest.approx((3 * volume / (4 * math.pi)) ** (1 / 3))
    assert t.mass_g == pytest.approx(5e21 * 208.98 * 1.66054e-24, rel=2e-3)
    one_gram = TargetCrystal.from_mass(1.0)
    assert one_gram.mass_g == pytest.approx(1.0)
    assert one_gram.radius == pytest.approx(2.9e-3, rel=0.01)
    with pytest.raises(ValueError):
        TargetCrystal(n_atoms=0)


def test_flux_examples():
    s = ReactorSource()
    assert flux_at_detector(s) == pytest.approx(1.79e13, rel=2e-3)
    far = ReactorSource(distance=40.0)
    assert flux_at_detector(far) == pytest.approx(flux_at_detector(s) / 4)
    assert flux_at_detector(ReactorSource(power=0.0)) == 0.0


@given(st.floats(0.1, 10), st.floats(1, 100))
def test_flux_scaling(power, distance):
    base = flux_at_detector(ReactorSource(power=1.0, distance=1.0))
    assert flux_at_detector(ReactorSource(power=power, distance=distance)) == pytest.approx(
        base * power / distance**2)


def test_spectrum_examples():
    s = ReactorSource()
    assert spectrum_density(s, 2.6) == pytest.approx(1 / (0.75 * math.sqrt(2 * math.pi)), rel=1e-3)
    assert spectrum_density(s, 2.6) == pytest.approx(0.532, abs=1e-3)
    assert spectrum_density(s, -1.0) == 0.0
    assert spectrum_density(s, 10.0) == 0.0


def test_spectrum_normalised():
    s = ReactorSource()
    lo, hi = spectrum_support(s)
    assert (lo, hi) == (0.05, pytest.approx(5.6))
    total = quad(lambda E: spectrum_density(s, E), lo, hi, epsabs=0, epsrel=1e-12)[0]
    assert total == pytest.approx(1.0, abs=1e-8)


def test_spectrum_truncation_moment_shift_small():
    s = ReactorSource()
    lo, hi = spectrum_support(s)
    mean = quad(lambda E: E * spectrum_density(s, E), lo, hi, epsrel=1e-12)[0]
    assert abs(mean - s.E0) / s.E0 < 1e-3


def test_spectrum_nonnegative():
    E = np.linspace(-5, 15, 2001)
    assert np.all(spectrum_density(ReactorSource(), E) >= 0)
