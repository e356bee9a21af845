# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import pytest
import numpy as np

from udpcert.certifier import Verdict, certify
from udpcert.families import (
    D24,
    D34,
    W4,
    compare_members,
    dicke,
    dicke_lu_image,
    family_a,
    family_b,
    family_c,
    family_c_condition,
    family_c_partner,
    is_standard_form,
    phase_grid,
    verify_families,
)
from udpcert.states import ArgumentException, fidelity, marginal_distance, marginal_set, two_body_config

from conftest import LABELS


def test_dicke_states():
    assert np.linalg.norm(W4) == pytest.approx(1)
    assert np.count_nonzero(D24) == 6
    np.testing.assert_allclose(dicke(4, 3), D34)
    assert W4[0b0001] == pytest.approx(0.5)


@pytest.mark.parametrize("a,b,s", [(1 / np.sqrt(3),) * 3, (0.5, 0.5, np.sqrt(0.5)), (0.6, 0.48, 0.64)])
def test_family_a_shares_two_body_marginals(a, b, s):
    states = [family_a(a, b, s, phi) for phi in phase_grid(20)]
    deviation, fid = compare_members(states)
    assert deviation <= 1e-10
    assert fid <= 1 - 1e-6
    assert all(is_standard_form(x) for x in states)


def test_family_b_shares_two_body_marginals():
    deviation, fid = compare_members([family_b(phi) for phi in phase_grid(20)])
    assert deviation <= 1e-10
    assert fid <= 1 - 1e-6


def test_family_state_is_normalized_with_warning(caplog):
    s = family_a(1.0, 1.0, 1.0, 0.0)
    assert np.linalg.norm(s.amplitudes) == pytest.approx(1)
    assert "not normalized" in caplog.text
    with pytest.raises(ArgumentException):
        family_a(0, 0, 0, 0)


def test_family_c_partner():
    phi_r, phi_s = family_c_partner(0.5, 0.5 + 0.5j, 0.5)
    assert phi_r == pytest.approx(-np.pi / 2)
    assert phi_s == pytest.approx(0, abs=1e-12)
    psi, partner, feasible = family_c(0.5, 0.5 + 0.5j, 0.5, phi_r, phi_s)
    assert feasible
    m = marginal_set(psi, two_body_config(LABELS))
    assert marginal_distance(m, marginal_set(partner, m.config)) <= 1e-10
    assert fidelity(psi, partner) < 1 - 1e-6


def test_family_c_trivial_partners():
    assert family_c_partner(0.0, np.sqrt(0.5), np.sqrt(0.5)) is None
    assert family_c_partner(0.5, 0.5, 0.5) is None
    # a = 0 is feasible for any common phase, the partner is the same state up to a global phase
    psi, partner, feasible = family_c(0.0, np.sqrt(0.5), np.sqrt(0.5), 1.0, 1.0)
    assert feasible
    assert fidelity(psi, partner) == pytest.approx(1, abs=1e-12)


def test_family_c_condition_fails_for_infeasible_phases():
    assert family_c_condition(0.5, 0.5 + 0.5j, 0.5, 0.3, 0.0) > 1e-3
    _, _, feasible = family_c(0.5, 0.5 + 0.5j, 0.5, 0.3, 0.0)
    assert not feasible


def test_dicke_lu_image():
    image = dicke_lu_image()
    # the image contains |1111>, the three-excitation Dicke state and |0000>
    assert abs(image.amplitudes[0b0000]) == pytest.approx(1 / np.sqrt(3))
    assert abs(np.vdot(D34, image.amplitudes)) == pytest.approx(1 / np.sqrt(3))
    assert not is_standard_form(image)
    deviation, fid = compare_members([dicke_lu_image(family_b(phi)) for phi in phase_grid(8)])
    assert deviation <= 1e-10 and fid <= 1 - 1e-6


def test_verify_families():
    rows = verify_families(20)
    assert {r.family for r in rows} == {"A", "B", "C", "D34"}
    for r in rows:
        assert r.max_deviation <= 1e-10
    trivial = [r for r in rows if r.family == "C" and "a=0 " in r.parameters]
    assert len(trivial) == 1 and not trivial[0].distinct
    distinct = [r for r in rows if r not in trivial]
    assert all(r.min_fidelity <= 1 - 1e-6 and r.distinct for r in distinct)
    assert [r.standard_form for r in rows if r.family == "D34"] == [False]


def test_certify_family_c_without_a_is_not_generic(rng):
    # the only partner is the state itself up to a global phase, the Schmidt rank across AB|CD is 3
    psi, _, _ = family_c(0.0, np.sqrt(0.5), np.sqrt(0.5), 0.0, 0.0)
    cert = certify(psi, rng=rng)
    assert cert.verdict == Verdict.NOT_GENERIC
    assert cert.genericity.schmidt_rank == 3


def test_certify_family_c_partner_is_witnessed(rng):
    phi_r, phi_s = family_c_partner(0.5, 0.5 + 0.5j, 0.5)
    psi, _, _ = family_c(0.5, 0.5 + 0.5j, 0.5, phi_r, phi_s)
    cert = certify(psi, rng=rng)
    assert cert.verdict == Verdict.NONUNIQUE_WITNESS
    assert cert.witness.fidelity < 1 - 1e-6


def test_certify_dicke_lu_image_is_witnessed(rng):
    cert = certify(dicke_lu_image(), rng=rng)
    assert cert.verdict == Verdict.NONUNIQUE_WITNESS
    assert not cert.genericity.is_generic
