# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import pytest
import numpy as np

from udpcert.certifier import CertifierSettings, Verdict
from udpcert.component import TrialRunner
from udpcert.sampling import RandomSource, haar_state
from udpcert.search import (
    CorollarySettings,
    DISTINCT_FOUND,
    NO_DISTINCT_FOUND,
    MarginalObjective,
    SearchSettings,
    compatibility_search,
    corollary_check,
    phase_locking_mismatch,
    rotated_party_witness,
    survey,
)
from udpcert.states import ArgumentException, PureState, marginal_set, partial_trace, schmidt_decompose

from conftest import LABELS, random_unitary


def test_objective_gradient(qubit_state):
    target = marginal_set(qubit_state, "AB,AC,BC")
    objective = MarginalObjective(target, LABELS, (2, 2, 2, 2))
    g = np.random.default_rng(1)
    x = g.standard_normal(32)
    f, grad = objective.value_and_grad(x)
    assert f == pytest.approx(np.sum(objective.residuals(x) ** 2))
    h = 1e-6
    for k in range(0, 32, 5):
        e = np.zeros(32)
        e[k] = h
        fd = (objective.value_and_grad(x + e)[0] - objective.value_and_grad(x - e)[0]) / (2 * h)
        assert grad[k] == pytest.approx(fd, rel=1e-5, abs=1e-8)


def test_objective_is_zero_at_reference(qubit_state):
    target = marginal_set(qubit_state, "AB,CD,BD")
    objective = MarginalObjective(target, LABELS, (2, 2, 2, 2))
    x = np.concatenate([qubit_state.amplitudes.real, qubit_state.amplitudes.imag])
    f, grad = objective.value_and_grad(3 * x)
    assert f == pytest.approx(0, abs=1e-28)
    np.testing.assert_allclose(grad, 0, atol=1e-14)


def test_search_seeded_at_reference(qubit_state, rng):
    target = marginal_set(qubit_state, "AB,CD,BD")
    result = compatibility_search(target, qubit_state, 0, rng, initial=[qubit_state])
    assert result.mismatch <= 1e-12
    assert result.fidelity_to_reference == pytest.approx(1, abs=1e-12)
    assert result.restarts_used == 1 and result.converged


def test_search_finds_sibling_for_three_pairs_of_three_parties(qubit_state, rng):
    target = marginal_set(qubit_state, "AB,AC,BC")
    result = compatibility_search(target, qubit_state, 5, rng)
    assert result.converged
    assert result.mismatch <= 1e-10
    assert result.is_distinct(SearchSettings())


def test_search_dimension_mismatch(qubit_state, rng):
    target = marginal_set(haar_state((3, 3, 3, 3), rng, LABELS), "AB")
    with pytest.raises(ArgumentException):
        compatibility_search(target, qubit_state, 1, rng)


def test_search_settings_validation():
    with pytest.raises(ValueError):
        SearchSettings(restarts=-1)


def test_rotated_party_witness(qubit_state, rng):
    w = rotated_party_witness(qubit_state, rng)
    assert not w.degenerate
    assert w.mismatch <= 1e-12
    assert w.fidelity < 1
    np.testing.assert_allclose(
        partial_trace(w.state, "D").eigenvalues(), partial_trace(qubit_state, "D").eigenvalues(), atol=1e-12
    )


def test_rotated_party_witness_product_state(rng):
    abc = haar_state((2, 2, 2), rng)
    state = PureState.create(LABELS, (2, 2, 2, 2), np.kron(abc.amplitudes, [1, 0]))
    w = rotated_party_witness(state, rng, unitary=np.diag([1, np.exp(0.7j)]))
    assert w.degenerate
    assert w.fidelity == pytest.approx(1, abs=1e-12)
    with pytest.raises(ArgumentException):
        rotated_party_witness(state, rng, party="E")


def test_rotated_party_witness_on_other_party(qubit_state):
    w = rotated_party_witness(qubit_state, RandomSource(3), party="A", unitary=random_unitary(2, 3))
    assert w.party == "A" and w.mismatch <= 1e-12


def test_survey_rows_are_ordered_by_stream(config):
    settings = SearchSettings(restarts=2)
    serial = survey("AB,AC,BC", 3, 2, RandomSource(8), settings)
    parallel = survey("AB,AC,BC", 3, 2, RandomSource(8), settings, TrialRunner(config, jobs=3))
    assert [r.stream for r in parallel.rows] == [0, 1, 2]
    assert [r.to_dict() for r in serial.rows] == [r.to_dict() for r in parallel.rows]
    assert all(r.verdict == DISTINCT_FOUND for r in serial.rows)
    assert serial.distinct == 3


def test_survey_accepts_numpy_generator():
    settings = SearchSettings(restarts=1, max_iter=50)
    a = survey("AB,AC,BC", 2, 1, np.random.default_rng(5), settings)
    b = survey("AB,AC,BC", 2, 1, np.random.default_rng(5), settings)
    assert [r.stream for r in a.rows] == [0, 1]
    assert [r.to_dict() for r in a.rows] == [r.to_dict() for r in b.rows]
    assert survey("AB,AC,BC", 1, 1, 5, settings).rows[0].seed == 5
    with pytest.raises(ArgumentException):
        survey("AB,AC,BC", 1, 1, "five", settings)


def test_survey_four_pairs_find_no_distinct_state():
    table = survey("AB,AC,AD,BC", 2, 5, RandomSource(9))
    assert all(r.verdict == NO_DISTINCT_FOUND for r in table.rows)


def test_corollary_five_qubits(rng):
    report = corollary_check(5, rng)
    assert report.verdict == Verdict.UNIQUE
    assert report.coefficients.size == 2
    assert all(c.verdict == Verdict.UNIQUE for c in report.certificates)
    assert report.fidelity >= 1 - 1e-8
    assert report.extraction_error <= 1e-10
    assert report.block_residual <= 1e-10
    assert report.phase_locking_mismatch(np.zeros(2)) <= 1e-12
    assert report.phase_locking_mismatch(np.array([0.0, 0.3])) > 1e-6
    assert report.perturbation_mismatch > 1e-6
    assert report.to_dict()["certifier_settings"] == CertifierSettings()


def test_corollary_requires_visible_phase_perturbation(rng):
    report = corollary_check(5, rng, settings=CorollarySettings(perturbation_tol=10.0))
    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.fidelity >= 1 - 1e-8


def test_corollary_product_state(rng):
    abcd = haar_state((2, 2, 2, 2), rng, LABELS)
    state = PureState.create(LABELS + ("E",), (2,) * 5, np.kron(abcd.amplitudes, [0, 1]))
    report = corollary_check(5, rng, state=state)
    assert report.coefficients.size == 1
    assert report.verdict == Verdict.UNIQUE
    assert report.perturbation_mismatch is None
    assert report.fidelity == pytest.approx(1, abs=1e-10)


def test_corollary_degenerate_spectrum(rng):
    a, b = haar_state((2, 2, 2, 2), rng, LABELS), haar_state((2, 2, 2, 2), rng, LABELS)
    # orthogonalize the second constituent so that both terms have the weight 1/2
    v = b.amplitudes - np.vdot(a.amplitudes, b.amplitudes) * a.amplitudes
    v = v / np.linalg.norm(v)
    amplitudes = (np.kron(a.amplitudes, [1, 0]) + np.kron(v, [0, 1])) / np.sqrt(2)
    state = PureState.create(LABELS + ("E",), (2,) * 5, amplitudes)
    assert corollary_check(5, rng, state=state).verdict == Verdict.NOT_GENERIC


def test_corollary_parties(rng):
    with pytest.raises(ArgumentException):
        corollary_check(4, rng)
    with pytest.raises(ArgumentException):
        corollary_check(7, rng)


def test_phase_locking_mismatch_requires_all_phases(rng):
    state = haar_state((2,) * 5, rng)
    sd = schmidt_decompose(state, ("ABCD", "E"))
    with pytest.raises(ArgumentException):
        phase_locking_mismatch(state, sd, [0.0])


@pytest.mark.slow
def test_rotated_party_witness_many_states():
    for k in range(20):
        rng = RandomSource(21, k)
        w = rotated_party_witness(haar_state((2, 2, 2, 2), rng, LABELS), rng)
        assert w.fidelity < 1 - 1e-3
        assert w.mismatch <= 1e-12


@pytest.mark.slow
def test_corollary_many_states():
    for k in range(10):
        report = corollary_check(5, RandomSource(31, k))
        assert report.unique and report.fidelity >= 1 - 1e-8
        assert report.phase_locking_mismatch(np.array([0.0, 0.5])) > 1e-6
    assert corollary_check(6, RandomSource(32)).unique


@pytest.mark.slow
@pytest.mark.parametrize(
    "pairs,expected",
    [
        ("AB,AC,AD", 0),
        ("AB,AC,BC", 20),
        ("AB,CD,BD", 0),
        ("AB,AC,AD,BC", 0),
        ("AB,AD,BC,CD", 0),
    ],
)
def test_survey(config, pairs, expected):
    table = survey(pairs, 20, 50, RandomSource(41), runner=TrialRunner(config, jobs=4))
    assert table.distinct == expected


def test_objective_jacobian(qubit_state):
    objective = MarginalObjective(marginal_set(qubit_state, "AB,BD"), LABELS, (2, 2, 2, 2))
    x = np.random.default_rng(2).standard_normal(32)
    jac = objective.jacobian(x)
    assert jac.shape == (64, 32)
    h = 1e-6
    for k in (0, 7, 19, 31):
        e = np.zeros(32)
        e[k] = h
        fd = (objective.residuals(x + e) - objective.residuals(x - e)) / (2 * h)
        np.testing.assert_allclose(jac[:, k], fd, atol=1e-7)
