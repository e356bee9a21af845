# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

import numpy as np
import scipy.linalg
import scipy.optimize

from dataclasses import dataclass, field

from udpcert.sampling import as_generator
from udpcert.states import (
    PureState,
    fidelity,
    marginal_distance,
    marginal_set,
    reduced_matrix,
    schmidt_decompose,
)

from .blocks import build_operator_blocks, resolve_config
from .settings import CertifierSettings

log = logging.getLogger("oracle")


def wrap(phases):
    """
    Wrap phases to (-pi, pi].
    """
    w = np.angle(np.exp(1j * np.asarray(phases, dtype=float)))
    return np.where(np.isclose(w, -np.pi), np.pi, w)


class TorusObjective:
    """
    The squared distance sum_X ||rho_X(phi) - T_X||^2 between the third-pair marginals of the phased state
    sum_i exp(i*phi_i) sqrt(lambda_i) |i>|i> and the targets, as a function of phi_2..phi_n (phi_1 = 0).
    """

    def __init__(self, operators, coefficients, targets):
        self.operators = [np.asarray(o) for o in operators]
        self.targets = [np.asarray(t) for t in targets]
        self.sqrt_lambdas = np.sqrt(np.asarray(coefficients, dtype=float))
        self.n = self.sqrt_lambdas.size

    def _a(self, theta):
        return np.exp(1j * np.concatenate([[0.0], theta])) * self.sqrt_lambdas

    def deltas(self, theta):
        a = self._a(theta)
        return [np.einsum("i,j,ijxy->xy", a, a.conj(), o) - t for o, t in zip(self.operators, self.targets)]

    def _p(self, a, o):
        # p[k] = a_k sum_j conj(a_j) O_kj
        return np.einsum("k,j,kjxy->kxy", a, a.conj(), o)

    def value_and_grad(self, theta):
        a = self._a(theta)
        f, g = 0.0, np.zeros(self.n)
        for o, t in zip(self.operators, self.targets):
            delta = np.einsum("i,j,ijxy->xy", a, a.conj(), o) - t
            f += float(np.sum(np.abs(delta) ** 2))
            g += -4 * np.einsum("xy,kyx->k", delta, self._p(a, o)).imag
        return f, g[1:]

    def residuals(self, theta):
        return np.concatenate([np.concatenate([d.real.ravel(), d.imag.ravel()]) for d in self.deltas(theta)])

    def jacobian(self, theta):
        a = self._a(theta)
        blocks = []
        for o in self.operators:
            p = self._p(a, o)
            d = 1j * (p - np.conj(np.transpose(p, (0, 2, 1))))
            blocks.append(np.concatenate([d.real.reshape(self.n, -1), d.imag.reshape(self.n, -1)], axis=1).T)
        return np.concatenate(blocks)[:, 1:]

    def minimize(self, theta0, max_iter=500):
        """
        Run BFGS from `theta0` and polish the minimizer by Levenberg-Marquardt. Return the wrapped phases
        including phi_1 = 0 and the residual distance.
        """
        res = scipy.optimize.minimize(
            self.value_and_grad, theta0, jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": max_iter}
        )
        ls = scipy.optimize.least_squares(
            self.residuals, res.x, jac=self.jacobian, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        theta = ls.x if np.linalg.norm(ls.fun) <= np.sqrt(max(res.fun, 0.0)) else res.x
        return wrap(np.concatenate([[0.0], theta])), float(np.linalg.norm(self.residuals(theta)))


@dataclass(frozen=True, eq=False)
class OracleResult:
    """
    The best minimizer of the torus objective, all distinct zero-residual minimizers and the nontrivial ones.
    """

    phases: np.ndarray = field(repr=False)
    residual: float
    minimizers: list = field(repr=False)
    nontrivial: list = field(repr=False)
    starts: int
    tol: float
    trivial_tol: float

    @property
    def is_trivial(self):
        return (
            self.residual <= self.tol
            and float(np.max(np.abs(self.phases), initial=0.0)) <= self.trivial_tol
            and len(self.nontrivial) == 0
        )

    def to_dict(self):
        return {
            "phases": self.phases,
            "residual": self.residual,
            "minimizers": len(self.minimizers),
            "nontrivial": [list(x) for x in self.nontrivial],
            "starts": self.starts,
        }


def minimize_torus(objective, starts, settings=None):
    """
    Minimize the objective from all starts and collect the results.
    """
    settings = settings or CertifierSettings()
    found = []
    for theta0 in starts:
        if objective.n == 1:
            found.append((np.zeros(1), float(np.linalg.norm(objective.residuals(np.zeros(0))))))
            break
        found.append(objective.minimize(np.asarray(theta0, dtype=float)))

    found.sort(key=lambda x: (x[1], float(np.linalg.norm(x[0]))))
    minimizers = []
    for phases, residual in found:
        if residual <= settings.oracle_tol and all(
            np.max(np.abs(wrap(phases - y))) > settings.dedup_tol for y, _ in minimizers
        ):
            minimizers.append((phases, residual))
    nontrivial = [p for p, _ in minimizers if np.max(np.abs(p)) > settings.trivial_tol]
    best_phases, best_residual = found[0]
    log.debug(
        f"Torus oracle: best residual {best_residual:.3e}, {len(minimizers)} minimizers, {len(nontrivial)} nontrivial."
    )
    return OracleResult(
        phases=best_phases,
        residual=best_residual,
        minimizers=[p for p, _ in minimizers],
        nontrivial=nontrivial,
        starts=len(starts),
        tol=settings.oracle_tol,
        trivial_tol=settings.trivial_tol,
    )


def torus_starts(n, grid_restarts, rng):
    """
    The zero phase vector followed by `grid_restarts - 1` uniform points on the torus.
    """
    g = as_generator(rng)
    return [np.zeros(n - 1)] + [g.uniform(-np.pi, np.pi, n - 1) for _ in range(max(grid_restarts, 1) - 1)]


def torus_oracle(state, config, grid_restarts, rng, target=None, settings=None):
    """
    Search the phase torus for the phases whose sibling sum_i exp(i*phi_i) sqrt(lambda_i) |i>|i> reproduces the
    third-pair marginals of `target` (by default of `state` itself). Only the nonzero Schmidt terms carry a phase,
    the phase vector has one entry per term. Return an `OracleResult`.
    """
    settings = settings or CertifierSettings()
    cc = resolve_config(state.labels, config)
    sd = schmidt_decompose(state, (cc.left, cc.right), settings.rank_tol)
    target = state if target is None else target
    operators, targets = [], []
    for x in cc.third_pairs:
        blocks = build_operator_blocks(sd, cc.keep(x), full_rank=False)
        operators.append(blocks.operators(state.labels))
        targets.append(reduced_matrix(target.amplitudes, target.dims, x.indices(target.labels)))
    objective = TorusObjective(operators, blocks.coefficients, targets)
    return minimize_torus(objective, torus_starts(blocks.size, grid_restarts, rng), settings)


@dataclass(frozen=True, eq=False)
class WitnessResult:
    """
    A pure state distinct from the certified one with the same marginals of the configuration, if found.
    """

    state: PureState = field(repr=False)
    fidelity: float
    mismatch: float
    attempts: int
    source: str

    @property
    def found(self):
        return self.state is not None

    def to_dict(self):
        return {
            "state": self.state,
            "fidelity": self.fidelity,
            "mismatch": self.mismatch,
            "attempts": self.attempts,
            "source": self.source,
        }


def verify_witness(state, sibling, config, settings=None):
    """
    Check that `sibling` reproduces all marginals of the configuration and is a different state.
    Return the flag, the fidelity and the marginal mismatch.
    """
    settings = settings or CertifierSettings()
    mismatch = marginal_distance(marginal_set(state, config), marginal_set(sibling, config))
    f = fidelity(state, sibling)
    return bool(mismatch <= settings.witness_tol and f < 1 - settings.distinct_tol), f, mismatch


def coefficient_groups(coefficients, gap_tol):
    """
    Split the indices of the nonzero coefficients to groups of equal coefficients within `gap_tol`.
    """
    groups = []
    for i, c in enumerate(coefficients):
        if c <= 0:
            break
        if groups and coefficients[groups[-1][-1]] - c <= gap_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _hermitian(params, m):
    h = np.zeros((m, m), dtype=complex)
    h[np.diag_indices(m)] = params[:m]
    iu = np.triu_indices(m, 1)
    k = len(iu[0])
    h[iu] = params[m : m + k] + 1j * params[m + k : m + 2 * k]
    return h + np.triu(h, 1).conj().T


def commuting_witness(state, sd, config, rng, settings=None):
    """
    Search for a different pure state with the same marginals among the siblings (W (x) 1)|psi>, where W is a unitary
    on the support of the left marginal that commutes with it: a U(m) block for every group of m equal Schmidt
    coefficients. Each block is exp(iH) with a Hermitian H.
    """
    settings = settings or CertifierSettings()
    cc = resolve_config(state.labels, config)
    groups = coefficient_groups(sd.coefficients, settings.gap_tol)
    if sum(len(g) for g in groups) < 2:
        log.debug("The state is a product state across the bipartition, there is no sibling to search for.")
        return WitnessResult(None, 1.0, 0.0, 0, "commuting")

    checked = [p for p in cc.pairs if p.labels not in (sd.left.labels, sd.right.labels)]
    axes = [p.indices(state.labels) for p in checked]
    targets = [reduced_matrix(state.amplitudes, state.dims, x) for x in axes]
    sizes = [len(g) for g in groups]

    def _rotation(params):
        w = np.eye(sd.coefficients.size, dtype=complex)
        k = 0
        for g, m in zip(groups, sizes):
            w[np.ix_(g, g)] = scipy.linalg.expm(1j * _hermitian(params[k : k + m * m], m))
            k += m * m
        return w

    def _residuals(params):
        a = sd.amplitudes(rotation=_rotation(params))
        r = [reduced_matrix(a, state.dims, x) - t for x, t in zip(axes, targets)]
        return np.concatenate([np.concatenate([d.real.ravel(), d.imag.ravel()]) for d in r])

    g = as_generator(rng)
    best = WitnessResult(None, 1.0, float("inf"), 0, "commuting")
    for attempt in range(1, settings.witness_restarts + 1):
        x0 = np.concatenate(
            [np.concatenate([g.uniform(-np.pi, np.pi, m), g.standard_normal(m * (m - 1))]) for m in sizes]
        )
        ls = scipy.optimize.least_squares(
            _residuals, x0, jac="3-point", method="trf", xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
        sibling = PureState.create(state.labels, state.dims, sd.amplitudes(rotation=_rotation(ls.x)))
        ok, f, mismatch = verify_witness(state, sibling, cc.pairs, settings)
        if ok:
            log.debug(f"The witness found in the attempt {attempt}, fidelity={f:.6f}, mismatch={mismatch:.3e}.")
            return WitnessResult(sibling, f, mismatch, attempt, "commuting")
        if mismatch < best.mismatch:
            best = WitnessResult(None, f, mismatch, attempt, "commuting")
    log.debug(f"No witness found in {settings.witness_restarts} attempts, the best mismatch is {best.mismatch:.3e}.")
    return WitnessResult(None, best.fidelity, best.mismatch, settings.witness_restarts, "commuting")
