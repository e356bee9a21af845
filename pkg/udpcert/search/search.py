# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import dataclasses
import logging

import numpy as np
import scipy.optimize

from dataclasses import dataclass, field

from udpcert.sampling import as_generator, haar_unitary
from udpcert.states import (
    ArgumentException,
    PureState,
    SubsystemSet,
    apply_local_operator,
    apply_local_unitaries,
    fidelity,
    marginal_distance,
    marginal_set,
    reduced_matrix,
    schmidt_decompose,
)

log = logging.getLogger("search")


@dataclass(frozen=True)
class SearchSettings:
    """
    Budgets and thresholds of the search, the defaults are the `search` section of the configuration.
    """

    restarts: int = 50
    gtol: float = 1e-10
    max_iter: int = 500
    mismatch_tol: float = 1e-6
    fidelity_gap: float = 1e-3

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"The setting '{f.name}' must not be negative.")

    def to_dict(self):
        return dataclasses.asdict(self)


@dataclass(frozen=True, eq=False)
class SearchResult:
    best_state: PureState = field(repr=False)
    mismatch: float
    fidelity_to_reference: float
    restarts_used: int
    converged: bool
    candidates: int = 0

    def is_distinct(self, settings):
        return self.mismatch <= settings.mismatch_tol and self.fidelity_to_reference <= 1 - settings.fidelity_gap

    def to_dict(self):
        return {
            "best_state": self.best_state,
            "mismatch": self.mismatch,
            "fidelity_to_reference": self.fidelity_to_reference,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "candidates": self.candidates,
        }


class MarginalObjective:
    """
    The squared marginal distance sum_S ||rho_S(psi) - T_S||^2 with psi = z / ||z||, as a function of the real
    vector (Re z, Im z).
    """

    def __init__(self, target, labels, dims):
        self.dims = tuple(dims)
        self.axes = [s.indices(labels) for s in target.config]
        self.targets = [rho.matrix for _, rho in target]

    def state(self, x):
        n = x.size // 2
        z = x[:n] + 1j * x[n:]
        return z / np.linalg.norm(z), np.linalg.norm(z)

    def residuals(self, x):
        psi, _ = self.state(x)
        d = [reduced_matrix(psi, self.dims, a) - t for a, t in zip(self.axes, self.targets)]
        return np.concatenate([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in d])

    def jacobian(self, x):
        psi, norm = self.state(x)
        n = psi.size
        # columns are the derivatives of psi along Re z_k and Im z_k
        dpsi = (np.hstack([np.eye(n), 1j * np.eye(n)]) - np.outer(psi, np.concatenate([psi.real, psi.imag]))) / norm
        rows = []
        for a in self.axes:
            k = len(a)
            t = np.moveaxis(psi.reshape(self.dims), a, list(range(k)))
            ds = int(np.prod(t.shape[:k]))
            m = t.reshape(ds, -1)
            p = np.moveaxis(dpsi.T.reshape((2 * n,) + self.dims), [i + 1 for i in a], list(range(1, k + 1)))
            q = p.reshape(2 * n, ds, -1) @ m.conj().T
            d = (q + np.conj(np.transpose(q, (0, 2, 1)))).reshape(2 * n, -1)
            rows += [d.real.T, d.imag.T]
        return np.concatenate(rows)

    def value_and_grad(self, x):
        psi, norm = self.state(x)
        t = psi.reshape(self.dims)
        f, g = 0.0, np.zeros(psi.size, dtype=complex)
        for a, target in zip(self.axes, self.targets):
            delta = reduced_matrix(psi, self.dims, a) - target
            f += float(np.sum(np.abs(delta) ** 2))
            g += 4 * apply_local_operator(t, delta, a).ravel()
        g = (g - psi * np.real(np.vdot(psi, g))) / norm
        return f, np.concatenate([g.real, g.imag])


def _pack(amplitudes):
    return np.concatenate([np.real(amplitudes), np.imag(amplitudes)])


def compatibility_search(target, reference, restarts, rng, settings=None, initial=None, stop_on_distinct=False):
    """
    Search for pure states with the marginals of `target` by BFGS from the `initial` states and `restarts` random
    starts, each minimizer polished by least squares. Among the candidates that match the target within
    `mismatch_tol` the one least faithful to the reference is reported, otherwise the closest match.
    """
    settings = settings or SearchSettings()
    for s, rho in target:
        if rho.dims != tuple(reference.dims[i] for i in s.indices(reference.labels)):
            raise ArgumentException(f"The dimensions of the target marginal {s} do not match the reference state.")
    objective = MarginalObjective(target, reference.labels, reference.dims)
    g = as_generator(rng)
    starts = [_pack(x.amplitudes) for x in (initial or [])]
    starts += [g.standard_normal(2 * reference.dim) for _ in range(restarts)]

    best, best_key, matches, used = None, None, 0, 0
    for x0 in starts:
        used += 1
        res = scipy.optimize.minimize(
            objective.value_and_grad,
            x0,
            jac=True,
            method="BFGS",
            options={"gtol": settings.gtol, "maxiter": settings.max_iter},
        )
        x = res.x
        if res.fun > 0:
            ls = scipy.optimize.least_squares(
                objective.residuals, x, jac=objective.jacobian, method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15
            )
            if np.sum(ls.fun**2) <= res.fun:
                x = ls.x
        psi, _ = objective.state(x)
        overlap = np.vdot(reference.amplitudes, psi)
        if abs(overlap) > 0:
            psi = psi * np.conj(overlap) / abs(overlap)
        state = PureState.create(reference.labels, reference.dims, psi)
        mismatch = marginal_distance(target, marginal_set(state, target.config))
        fid = fidelity(state, reference)
        matched = mismatch <= settings.mismatch_tol
        matches += int(matched)
        key = (0, fid, mismatch) if matched else (1, mismatch, fid)
        if best_key is None or key < best_key:
            best, best_key = (state, mismatch, fid), key
        if stop_on_distinct and matched and fid <= 1 - settings.fidelity_gap:
            break

    state, mismatch, fid = best
    log.debug(f"Search: mismatch {mismatch:.3e}, fidelity {fid:.9f}, {matches} matching candidates in {used} starts.")
    return SearchResult(state, mismatch, fid, used, mismatch <= settings.mismatch_tol, matches)


@dataclass(frozen=True, eq=False)
class PartyWitness:
    """
    The state rotated by a unitary on one party, its fidelity to the original and the largest deviation
    of the marginals that do not involve the party.
    """

    state: PureState = field(repr=False)
    party: str
    fidelity: float
    mismatch: float
    degenerate: bool

    def to_dict(self):
        return {
            "state": self.state,
            "party": self.party,
            "fidelity": self.fidelity,
            "mismatch": self.mismatch,
            "degenerate": self.degenerate,
        }


def rotated_party_witness(state, rng, party="D", unitary=None, rank_tol=1e-10):
    """
    Apply a Haar-random (or the given) unitary on `party`. The marginals of all pairs of the other parties do not
    change. When the state is a product across the party and the rest the witness is flagged as degenerate, it
    is then the same state up to a phase for a diagonal unitary.
    """
    if party not in state.labels:
        raise ArgumentException(f"The party '{party}' is not one of {list(state.labels)}.")
    axis = state.labels.index(party)
    u = haar_unitary(state.dims[axis], rng) if unitary is None else unitary
    witness = apply_local_unitaries(state, {party: u})

    others = [x for x in state.labels if x != party]
    rank = schmidt_decompose(state, (others, [party]), rank_tol).rank
    config = [SubsystemSet.parse([x, y], state.labels) for i, x in enumerate(others) for y in others[i + 1 :]]
    mismatch = max(
        float(np.max(np.abs(m1.matrix - m2.matrix)))
        for (_, m1), (_, m2) in zip(marginal_set(state, config), marginal_set(witness, config))
    )
    return PartyWitness(witness, party, fidelity(state, witness), mismatch, rank < 2)
