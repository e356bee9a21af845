# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import itertools
import logging

import numpy as np

from dataclasses import dataclass

from udpcert.states import (
    ArgumentException,
    PureState,
    apply_local_unitaries,
    fidelity,
    marginal_distance,
    marginal_set,
    two_body_config,
)

LABELS = ("A", "B", "C", "D")
DIMS = (2, 2, 2, 2)
NORM_TOL = 1e-12
FEASIBLE_TOL = 1e-10
DISTINCT_TOL = 1e-6

log = logging.getLogger("families")


def dicke(n, k):
    """
    The normalized n-qubit Dicke state with k excitations.
    """
    v = np.zeros(2**n, dtype=complex)
    for ones in itertools.combinations(range(n), k):
        v[sum(1 << (n - 1 - i) for i in ones)] = 1
    v = v / np.sqrt(np.count_nonzero(v))
    v.setflags(write=False)
    return v


def _basis(index):
    v = np.zeros(16, dtype=complex)
    v[int(index, 2)] = 1
    v.setflags(write=False)
    return v


ZERO4 = _basis("0000")
ONE4 = _basis("1111")
W4 = dicke(4, 1)
D24 = dicke(4, 2)
D34 = dicke(4, 3)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class FamilyParameters:
    """
    Parameters of the families of states that share their two-body marginals.
    """

    a: float = 0.0
    b: float = 0.0
    r: complex = 0j
    s: complex = 0j
    phi: float = 0.0
    phi_r: float = 0.0
    phi_s: float = 0.0

    def __str__(self):
        def _c(z):
            z = complex(z)
            return f"{z.real:.6g}{z.imag:+.6g}j" if z.imag != 0 else f"{z.real:.6g}"

        return (
            f"a={self.a:.6g} b={self.b:.6g} r={_c(self.r)} s={_c(self.s)} "
            f"phi={self.phi:.6g} phi_r={self.phi_r:.6g} phi_s={self.phi_s:.6g}"
        )

    def to_dict(self):
        return {
            "a": self.a,
            "b": self.b,
            "r": complex(self.r),
            "s": complex(self.s),
            "phi": self.phi,
            "phi_r": self.phi_r,
            "phi_s": self.phi_s,
        }


def _state(amplitudes, name):
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        raise ArgumentException(f"The parameters of the {name} state must not all be zero.")
    if abs(norm - 1) > NORM_TOL:
        log.warning(f"The {name} state is not normalized (norm={norm:.12g}), it will be normalized.")
    return PureState.create(LABELS, DIMS, amplitudes)


def family_a(a, b, s, phi):
    """
    The state a|0000> + b|W4> + s exp(i phi)|1111>.
    """
    return _state(a * ZERO4 + b * W4 + s * np.exp(1j * phi) * ONE4, "family A")


def family_b(phi):
    """
    The state 1/2|0000> + 1/sqrt(2) exp(i phi)|D24> - 1/2 exp(2i phi)|1111>.
    """
    return _state(0.5 * ZERO4 + np.exp(1j * phi) / np.sqrt(2) * D24 - 0.5 * np.exp(2j * phi) * ONE4, "family B")


def family_c_condition(a, r, s, phi_r, phi_s):
    """
    Return |conj(r) s exp(i phi_s) - a r exp(i phi_r)(1 - exp(i phi_r)) - conj(r) s exp(i phi_r)| for the
    normalized parameters.
    """
    norm = np.sqrt(abs(a) ** 2 + abs(r) ** 2 + abs(s) ** 2)
    a, r, s = a / norm, r / norm, s / norm
    u, v = np.exp(1j * phi_r), np.exp(1j * phi_s)
    return float(abs(np.conj(r) * s * v - a * r * u * (1 - u) - np.conj(r) * s * u))


def family_c(a, r, s, phi_r, phi_s):
    """
    Build psi = a|0000> + r|D24> + s|1111> and its partner with r and s multiplied by exp(i phi_r) and exp(i phi_s).
    Return both states and whether the condition for the same two-body marginals holds.
    """
    psi = _state(a * ZERO4 + r * D24 + s * ONE4, "family C")
    partner = _state(a * ZERO4 + r * np.exp(1j * phi_r) * D24 + s * np.exp(1j * phi_s) * ONE4, "family C")
    feasible = family_c_condition(a, r, s, phi_r, phi_s) <= FEASIBLE_TOL
    return psi, partner, feasible


def family_c_partner(a, r, s, tol=FEASIBLE_TOL):
    """
    Solve the condition of the family C for a partner that is not the same state up to a global phase.
    Return (phi_r, phi_s) or None when only such trivial partners exist.
    """
    if abs(r) <= tol or abs(s) <= tol:
        return None
    k = a * r / (np.conj(r) * s)
    if abs(k) <= tol:
        return None
    z = (1 + k) * np.conj(k)
    if abs(z) <= tol:
        # k = -1, every phi_r is a solution
        phi_r = np.pi / 2
    elif abs(z.imag) <= tol:
        return None
    else:
        phi_r = 2 * np.angle(z)
    u = np.exp(1j * phi_r)
    phi_s = float(np.angle(u * (1 + k * (1 - u))))
    return float(np.angle(u)), phi_s


def dicke_lu_image(state=None):
    """
    Apply the bit flip on every party. Without the state, return the image of the family A state with
    a = b = s = 1/sqrt(3), which replaces |W4> by the three-excitation Dicke state.
    """
    state = state if state is not None else family_a(1 / np.sqrt(3), 1 / np.sqrt(3), 1 / np.sqrt(3), 0.0)
    return apply_local_unitaries(state, {x: PAULI_X for x in state.labels})


STANDARD_REAL = ("0000", "0001", "0010", "0100", "1000")
STANDARD_ZERO = ("0111", "1011", "1101", "1110")


def is_standard_form(state, tol=1e-10):
    """
    Check that the amplitudes of |0000>, |0001>, |0010>, |0100> and |1000> are real and that the amplitudes
    of |0111>, |1011>, |1101> and |1110> vanish.
    """
    if state.dims != DIMS:
        return False
    a = state.amplitudes
    return all(abs(a[int(x, 2)].imag) <= tol for x in STANDARD_REAL) and all(
        abs(a[int(x, 2)]) <= tol for x in STANDARD_ZERO
    )


def phase_grid(n):
    return 2 * np.pi * np.arange(n) / n


@dataclass(frozen=True)
class FamilyRow:
    family: str
    parameters: str
    members: int
    max_deviation: float
    min_fidelity: float
    standard_form: bool
    distinct: bool

    def to_dict(self):
        return {
            "family": self.family,
            "parameters": self.parameters,
            "members": self.members,
            "max_deviation": self.max_deviation,
            "min_fidelity": self.min_fidelity,
            "standard_form": self.standard_form,
            "distinct": self.distinct,
        }


def compare_members(states):
    """
    Return the largest pairwise distance of all six two-body marginals and the smallest pairwise fidelity.
    """
    config = two_body_config(LABELS)
    marginals = [marginal_set(x, config) for x in states]
    deviation, fid = 0.0, 1.0
    for i, j in itertools.combinations(range(len(states)), 2):
        deviation = max(deviation, marginal_distance(marginals[i], marginals[j]))
        fid = min(fid, fidelity(states[i], states[j]))
    return deviation, fid


FAMILY_A_SETTINGS = (
    (1 / np.sqrt(3), 1 / np.sqrt(3), 1 / np.sqrt(3)),
    (0.5, 0.5, np.sqrt(0.5)),
    (0.6, 0.48, 0.64),
)
FAMILY_C_SETTINGS = (
    (0.0, np.sqrt(0.5), np.sqrt(0.5)),
    (0.5, 0.5 + 0.5j, 0.5),
)


def family_members(grid=20):
    """
    Return the checked families as a list of (family, parameters, states).
    """
    phis = phase_grid(grid)
    result = []
    for a, b, s in FAMILY_A_SETTINGS:
        result.append(("A", FamilyParameters(a=a, b=b, s=s), [family_a(a, b, s, phi) for phi in phis]))
    result.append(("B", FamilyParameters(a=0.0, b=2 / np.sqrt(6), s=1 / np.sqrt(3)), [family_b(phi) for phi in phis]))

    for a, r, s in FAMILY_C_SETTINGS:
        if a == 0:
            states = [family_c(a, r, s, phi, phi)[1] for phi in phis]
            result.append(("C", FamilyParameters(a=a, r=r, s=s), states))
            continue
        partner = family_c_partner(a, r, s)
        if partner is None:
            continue
        psi, sibling, feasible = family_c(a, r, s, *partner)
        if not feasible:
            log.warning(f"The family C partner for a={a}, r={r}, s={s} does not satisfy the condition.")
        result.append(("C", FamilyParameters(a=a, r=r, s=s, phi_r=partner[0], phi_s=partner[1]), [psi, sibling]))

    images = [dicke_lu_image(family_b(phi)) for phi in phis]
    result.append(("D34", FamilyParameters(a=0.0, b=2 / np.sqrt(6), s=1 / np.sqrt(3)), images))
    return result


def verify_families(grid=20, distinct_tol=DISTINCT_TOL):
    """
    Verify the shared two-body marginals and the distinctness of all families. The members are distinct
    when their smallest pairwise fidelity is at most 1 - `distinct_tol`.
    """
    rows = []
    for family, params, states in family_members(grid):
        deviation, fid = compare_members(states)
        rows.append(
            FamilyRow(
                family,
                str(params),
                len(states),
                deviation,
                fid,
                all(is_standard_form(x) for x in states),
                fid <= 1 - distinct_tol,
            )
        )
        log.info(f"Family {family} ({params}): max deviation {deviation:.3e}, min fidelity {fid:.9f}.")
    return rows
