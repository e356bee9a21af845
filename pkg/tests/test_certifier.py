# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import pytest
import numpy as np

from udpcert.certifier import (
    CertifierSettings,
    CompatibilitySystem,
    NotGenericException,
    UnsupportedConfigException,
    Verdict,
    assemble_linear_system,
    build_operator_blocks,
    certify,
    coefficient_groups,
    gell_mann,
    induced_gammas,
    normalized_variables,
    pack,
    pair_identity_residual,
    resolve_config,
    solve_compatibility,
    solve_nullspace,
    torus_oracle,
    triple_identity_residual,
    unpack,
    wrap,
)
from udpcert.families import family_a, family_b
from udpcert.sampling import RandomSource, generic_schmidt_state, haar_state
from udpcert.states import (
    ArgumentException,
    PureState,
    apply_local_unitaries,
    partial_trace,
    schmidt_compose,
    schmidt_decompose,
)

from conftest import LABELS, random_unitary


def _blocks(state):
    sd = schmidt_decompose(state, "AB|CD")
    return sd, build_operator_blocks(sd, ("B", "D"))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_gell_mann_basis(d):
    g, off = gell_mann(d)
    assert g.shape == (d * d - 1, d, d)
    assert off == d * (d - 1)
    np.testing.assert_allclose(np.einsum("axy,byx->ab", g, g), np.eye(d * d - 1), atol=1e-14)
    np.testing.assert_allclose(g, np.conj(np.transpose(g, (0, 2, 1))), atol=1e-15)
    np.testing.assert_allclose(np.einsum("axx->a", g), 0, atol=1e-14)


def test_resolve_config():
    cc = resolve_config(LABELS, "AB,CD,BD")
    assert (str(cc.left), str(cc.right)) == ("AB", "CD")
    assert [str(x) for x in cc.third_pairs] == ["BD"]
    assert cc.keep(cc.third_pairs[0]) == ("B", "D")

    cc = resolve_config(LABELS, "BD,AC,AB")
    assert (str(cc.left), str(cc.right)) == ("BD", "AC")
    assert [str(x) for x in cc.third_pairs] == ["AB"]


@pytest.mark.parametrize("config", ["AB,AC,AD", "AB,CD", "AB,CD,AB", "ABC,D,AD"])
def test_unsupported_config(config):
    with pytest.raises(UnsupportedConfigException):
        resolve_config(LABELS, config)


def _check_block_properties(blocks):
    n = blocks.size
    for i in range(n):
        for j in range(n):
            assert np.trace(blocks.q[i, j]) == pytest.approx(float(i == j), abs=1e-10)
            assert np.trace(blocks.r[i, j]) == pytest.approx(float(i == j), abs=1e-10)
            np.testing.assert_allclose(blocks.q[i, j].conj().T, blocks.q[j, i], atol=1e-10)
            np.testing.assert_allclose(blocks.r[i, j].conj().T, blocks.r[j, i], atol=1e-10)


def test_operator_block_properties(qubit_state):
    _check_block_properties(_blocks(qubit_state)[1])


def test_operator_blocks_give_the_marginal(qubit_state):
    sd, blocks = _blocks(qubit_state)
    s = np.sqrt(sd.coefficients)
    rho = np.einsum("i,j,ijxy->xy", s, s, blocks.operators(LABELS))
    np.testing.assert_allclose(rho, partial_trace(qubit_state, "BD").matrix, atol=1e-12)


def test_operator_blocks_require_full_rank():
    basis = np.eye(4)
    _, sd = schmidt_compose([0.5, 0.5, 0.0, 0.0], basis, basis, LABELS, (2, 2, 2, 2), "AB|CD")
    with pytest.raises(NotGenericException):
        build_operator_blocks(sd)


def test_pack_unpack():
    g = induced_gammas([0.0, 0.3, -1.2, 2.0], [0.4, 0.3, 0.2, 0.1])
    np.testing.assert_allclose(unpack(pack(g), 4), g, atol=1e-15)
    np.testing.assert_allclose(g, g.conj().T, atol=1e-15)


def test_span_and_kernel_dimensions(qubit_state):
    _, blocks = _blocks(qubit_state)
    assert blocks.span_dim(1e-8) == 13
    system = assemble_linear_system(blocks, ("B", "D"))
    assert system.shape == (9, 12)
    assert (system.offdiagonal_rows, system.diagonal_rows) == (6, 3)
    basis = solve_nullspace(system, 1e-8)
    assert basis.dim == 3
    assert basis.rank == 9


def test_qutrit_kernel_dimension(qutrit_state):
    _, blocks = _blocks(qutrit_state)
    basis = solve_nullspace(assemble_linear_system(blocks), 1e-8)
    assert basis.dim == 8


def test_linear_system_residual_is_marginal_distance(qubit_state):
    sd, blocks = _blocks(qubit_state)
    system = assemble_linear_system(blocks, ("B", "D"))
    assert system.residual(np.full(4, 0.7)) == pytest.approx(0, abs=1e-12)
    phases = np.array([0.0, 0.5, -1.0, 2.5])
    sibling = sd.reconstruct(phases)
    d = np.linalg.norm(partial_trace(sibling, "BD").matrix - partial_trace(qubit_state, "BD").matrix)
    assert system.residual(phases) == pytest.approx(d, abs=1e-10)
    assert d > 1e-3


def test_linear_system_pair_mismatch(qubit_state):
    _, blocks = _blocks(qubit_state)
    with pytest.raises(ArgumentException):
        assemble_linear_system(blocks, ("A", "D"))


def test_identities_on_random_phases():
    g = np.random.default_rng(3)
    for _ in range(1000):
        c = normalized_variables(g.uniform(-np.pi, np.pi, 4))
        assert pair_identity_residual(c) <= 1e-12
        assert triple_identity_residual(c) <= 1e-12


def test_compatibility_has_only_the_trivial_solution(qubit_state, rng):
    sd, blocks = _blocks(qubit_state)
    basis = solve_nullspace(assemble_linear_system(blocks))
    result = solve_compatibility(basis, sd.coefficients, 50, rng, CertifierSettings())
    assert result.only_trivial
    assert result.max_nontrivial_norm == 0.0
    assert np.linalg.norm(result.solutions[0]) <= 1e-6
    system = CompatibilitySystem(basis, sd.coefficients)
    np.testing.assert_allclose(system.residual(np.zeros(3)), 0, atol=1e-15)


def test_torus_oracle_is_trivial(qubit_state, rng):
    oracle = torus_oracle(qubit_state, "AB,CD,BD", 10, rng)
    assert oracle.is_trivial
    assert oracle.residual <= 1e-10
    assert np.max(np.abs(oracle.phases)) <= 1e-6


def test_torus_oracle_recovers_phases(qubit_state, rng):
    sd = schmidt_decompose(qubit_state, "AB|CD")
    phases = np.array([0.0, 0.8, -2.1, 1.4])
    oracle = torus_oracle(qubit_state, "AB,CD,BD", 10, rng, target=sd.reconstruct(phases))
    assert oracle.residual <= 1e-10
    np.testing.assert_allclose(wrap(oracle.phases - phases), 0, atol=1e-6)


def test_coefficient_groups():
    assert coefficient_groups(np.array([0.4, 0.3, 0.3, 0.0]), 1e-8) == [[0], [1, 2]]
    assert coefficient_groups(np.array([0.25] * 4), 1e-8) == [[0, 1, 2, 3]]


@pytest.mark.parametrize("stream", [0, 1, 2])
def test_certify_generic_qubit_states(stream):
    rng = RandomSource(7, stream)
    cert = certify(haar_state((2, 2, 2, 2), rng, LABELS), "AB,CD,BD", rng=rng)
    assert cert.verdict == Verdict.UNIQUE
    assert cert.span_dim == 13
    assert cert.nullspace_dim == 3
    d = cert.to_dict()
    assert d["verdict"] == "UNIQUE"
    assert d["settings"] == CertifierSettings()


def test_certify_relabeled_config(qubit_state, rng):
    assert certify(qubit_state, "AC,BD,AB", rng=rng).verdict == Verdict.UNIQUE


def test_certify_product_state_is_not_generic(rng):
    s = PureState.basis(LABELS, (2, 2, 2, 2), (0, 0, 0, 0))
    cert = certify(s, rng=rng)
    assert cert.verdict == Verdict.NOT_GENERIC
    assert not cert.genericity.is_generic


@pytest.mark.parametrize(
    "state",
    [family_a(1 / np.sqrt(3), 1 / np.sqrt(3), 1 / np.sqrt(3), 0.0), family_b(0.3)],
    ids=["family-a", "family-b"],
)
def test_certify_families_have_witness(state, rng):
    cert = certify(state, rng=rng)
    assert cert.verdict == Verdict.NONUNIQUE_WITNESS
    assert cert.witness.fidelity < 1 - 1e-6
    assert cert.witness.mismatch <= 1e-10


def test_certify_preconditions(rng):
    with pytest.raises(ArgumentException):
        certify(haar_state((2, 2, 2), rng), "AB,C,AC")
    with pytest.raises(ArgumentException):
        certify(haar_state((2, 2, 3, 3), rng))


def test_operator_blocks_over_nonzero_terms():
    basis = np.eye(4)
    _, sd = schmidt_compose([0.5, 0.3, 0.2, 0.0], basis, basis, LABELS, (2, 2, 2, 2), "AB|CD")
    blocks = build_operator_blocks(sd, full_rank=False)
    assert blocks.size == 3
    assert blocks.q.shape == (3, 3, 2, 2)
    _check_block_properties(blocks)


def test_qutrit_system_shape(qutrit_state):
    _, blocks = _blocks(qutrit_state)
    system = assemble_linear_system(blocks, ("B", "D"))
    assert system.shape == (64, 72)
    assert (system.offdiagonal_rows, system.diagonal_rows) == (48, 16)


def test_nullspace_of_zero_system():
    basis = solve_nullspace(np.zeros((9, 12)))
    assert basis.dim == 12
    assert basis.rank == 0


def test_gammas_vanish_for_equal_phases():
    g = np.random.default_rng(5)
    coefficients = [0.4, 0.3, 0.2, 0.1]
    for _ in range(100):
        c = g.uniform(-np.pi, np.pi)
        k = g.integers(-2, 3, 4)
        np.testing.assert_allclose(induced_gammas(c + 2 * np.pi * k, coefficients), 0, atol=1e-12)
        phases = np.full(4, c)
        phases[g.integers(4)] += g.uniform(0.1, 2 * np.pi - 0.1)
        assert np.max(np.abs(induced_gammas(phases, coefficients))) > 1e-3


def test_torus_oracle_of_family_a_has_many_minimizers():
    s = 1 / np.sqrt(3)
    oracle = torus_oracle(family_a(s, s, s, 0.0), "AB,CD,BD", 20, RandomSource(0))
    assert oracle.residual <= 1e-10
    assert len(oracle.minimizers) > 1
    assert len(oracle.nontrivial) > 0
    assert oracle.phases.size == 3
    assert not oracle.is_trivial


@pytest.mark.parametrize("stream", [0, 1])
def test_certify_is_invariant_under_local_unitaries(stream):
    rng = RandomSource(21, stream)
    state = haar_state((2, 2, 2, 2), rng, LABELS)
    rotated = apply_local_unitaries(state, {x: random_unitary(2, 10 * stream + k) for k, x in enumerate(LABELS)})
    assert certify(state, rng=RandomSource(22, stream)).verdict == Verdict.UNIQUE
    assert certify(rotated, rng=RandomSource(22, stream)).verdict == Verdict.UNIQUE


def test_certify_family_a_under_local_unitaries(rng):
    s = 1 / np.sqrt(3)
    state = family_a(s, s, s, 0.0)
    rotated = apply_local_unitaries(state, {x: random_unitary(2, k) for k, x in enumerate(LABELS)})
    assert certify(rotated, rng=rng).verdict == Verdict.NONUNIQUE_WITNESS


@pytest.mark.slow
def test_span_and_kernel_dimensions_of_many_states():
    rng = RandomSource(2024)
    for k in range(100):
        state, sd = generic_schmidt_state(2, rng.spawn(k))
        blocks = build_operator_blocks(sd, ("B", "D"))
        assert blocks.span_dim(1e-8) == 13
        assert solve_nullspace(assemble_linear_system(blocks), 1e-8).dim == 3


@pytest.mark.slow
def test_certify_many_states():
    for k in range(100):
        rng = RandomSource(11, k)
        assert certify(haar_state((2, 2, 2, 2), rng, LABELS), rng=rng).verdict == Verdict.UNIQUE
    for k in range(20):
        rng = RandomSource(12, k)
        cert = certify(haar_state((3, 3, 3, 3), rng, LABELS), rng=rng)
        assert cert.verdict == Verdict.UNIQUE
        assert cert.nullspace_dim == 8


@pytest.mark.slow
def test_identities_on_many_phases():
    g = np.random.default_rng(4)
    for _ in range(10000):
        c = normalized_variables(g.uniform(-np.pi, np.pi, 9))
        assert pair_identity_residual(c) <= 1e-12
        assert triple_identity_residual(c) <= 1e-12


@pytest.mark.slow
def test_operator_block_properties_of_many_states():
    rng = RandomSource(2025)
    for k in range(100):
        _check_block_properties(_blocks(haar_state((2, 2, 2, 2), rng.spawn(k), LABELS))[1])
