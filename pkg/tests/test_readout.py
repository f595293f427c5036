import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nuphase.evolution import ComplexRate, evolve_coherence
from nuphase.readout import (
    QubitState,
    apply_hadamard,
    apply_phase_gate,
    array_scaling,
    click_probability,
    coherence_state,
    expected_scatterings,
    population_difference,
    readout_signal,
)


def test_hadamard_examples():
    plus = QubitState(0.5 * np.ones((2, 2)))
    np.testing.assert_allclose(apply_hadamard(plus).rho, [[1, 0], [0, 0]], atol=1e-15)
    mixed = QubitState(np.eye(2) / 2)
    np.testing.assert_allclose(apply_hadamard(mixed).rho, np.eye(2) / 2, atol=1e-15)
    p = apply_hadamard(coherence_state(0.3, 0.7)).populations
    np.testing.assert_allclose(p, [0.5 + 0.3 * math.cos(0.7), 0.5 - 0.3 * math.cos(0.7)],
                               atol=1e-15)


def test_phase_gate_examples():
    diag = QubitState(np.diag([0.3, 0.7]))
    np.testing.assert_allclose(apply_phase_gate(diag).rho, diag.rho, atol=0)
    assert population_difference(coherence_state(0.5, math.pi / 2), "sin") == pytest.approx(1.0)
    with pytest.raises(ValueError):
        population_difference(diag, "tan")


@pytest.mark.parametrize("rho", [np.eye(2), [[0.5, 1], [0, 0.5]], [[1.5, 0], [0, -0.5]]])
def test_invalid_density_matrix(rho):
    with pytest.raises(ValueError):
        QubitState(np.asarray(rho, dtype=complex))


def test_identity_sweep():
    for A in np.linspace(0, 0.5, 100):
        for phi in np.linspace(0, 2 * math.pi, 100):
            state = coherence_state(A, phi)
            assert abs(population_difference(state, "cos") - 2 * A * math.cos(phi)) < 1e-12
            assert abs(population_difference(state, "sin") - 2 * A * math.sin(phi)) < 1e-12


@given(st.floats(0, 0.5), st.floats(-10, 10))
def test_gates_preserve_state(A, phi):
    state = coherence_state(A, phi)
    for out in (apply_hadamard(state), apply_phase_gate(state),
                apply_hadamard(apply_phase_gate(state))):
        assert abs(np.trace(out.rho) - 1) < 1e-12
        assert np.max(np.abs(out.rho - out.rho.conj().T)) < 1e-12
        assert np.linalg.eigvalsh(out.rho).min() > -1e-12


def test_readout_signal_and_clicks(design_rate):
    traj = evolve_coherence(design_rate, np.linspace(0, 1e5, 3))
    assert readout_signal(traj, 0.0, "cos") == 1.0
    assert readout_signal(traj, 0.0, "sin") == 0.0
    assert 0.4 <= readout_signal(traj, 1e5, "sin") <= 0.95
    assert click_probability(traj, 0.0) == 0.0
    with pytest.raises(ValueError):
        readout_signal(traj, -1.0)


@pytest.mark.parametrize("A, expected", [(0.5, 1.0), (0.4, 0.9)])
def test_click_probability_orthogonal(A, expected):
    traj = evolve_coherence(ComplexRate(0.0, math.pi), [0.0, 1.0], amplitude0=A)
    assert click_probability(traj, 1.0) == pytest.approx(expected, abs=1e-15)


def test_expected_scatterings(source, target):
    assert expected_scatterings(source, target, 0.0) == (0.0, 0.0)
    mean, p2 = expected_scatterings(source, target, 1e5, "unit")
    # sigma_bar exceeds sigma(E0) by the spread term; the rounded estimate gives ~4.1
    assert 4.1 <= mean <= 4.8
    assert mean == pytest.approx(1.79049e13 * 5e21 * 1e5 * 5.202e-40, rel=2e-3)
    paper_mean, _ = expected_scatterings(source, target, 1e5)
    assert paper_mean == pytest.approx(2 * mean)
    assert 0 < p2 < 1
    with pytest.raises(ValueError):
        expected_scatterings(source, target, -1.0)


@given(st.floats(1e-6, 50))
def test_poisson_tail_consistent(mean):
    # Poisson P(n >= 2) against a direct evaluation at the same mean
    p2 = -math.expm1(-mean) - mean * math.exp(-mean)
    assert p2 == pytest.approx(1 - math.exp(-mean) * (1 + mean), rel=1e-6, abs=1e-15)


def test_poisson_example(source, target):
    # drive the mean to 0.1 through the exposure time
    rate, _ = expected_scatterings(source, target, 1.0)
    mean, p2 = expected_scatterings(source, target, 0.1 / rate)
    assert mean == pytest.approx(0.1)
    assert p2 == pytest.approx(4.68e-3, rel=1e-3)


def test_array_scaling_examples():
    one = array_scaling(1)
    assert (one.mass_factor, one.duration_factor, one.per_crystal_phase_factor,
            one.crystal_count, one.phase_precision) == (1.0, 1.0, 1.0, 1, 1.0)
    ten = array_scaling(10)
    assert ten.mass_factor == 0.1 and ten.duration_factor == 0.1
    assert ten.per_crystal_phase_factor == 1e-2 and ten.crystal_count == 10**4
    assert ten.phase_precision == 1e-2
    two = array_scaling(2)
    assert two.crystal_count == 16 and two.per_crystal_phase_factor == 0.25
    for bad in (0, -3, 1.5):
        with pytest.raises(ValueError):
            array_scaling(bad)


def test_gate_pipeline_matches_objects():
    from nuphase.readout import gate_pipeline
    states = [coherence_state(A, phi) for A, phi in ((0.1, 0.3), (0.5, 2.0), (0.0, 1.0))]
    stack = np.stack([s.rho for s in states])
    for mode in ("cos", "sin"):
        _, diff = gate_pipeline(stack, mode)
        np.testing.assert_allclose(diff, [population_difference(s, mode) for s in states],
                                   atol=1e-15)
    with pytest.raises(ValueError):
        gate_pipeline(stack, "x")
