# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import itertools
import logging

import numpy as np

from dataclasses import dataclass, field

from udpcert.sampling import as_generator

from .settings import CertifierSettings
from .system import index_pairs, unpack

log = logging.getLogger("certifier")


def normalized_variables(phases):
    """
    Return the matrix c_ij = 1 - exp(i(phi_i - phi_j)), i.e. gamma_ij / sqrt(lambda_i lambda_j).
    """
    phases = np.asarray(phases, dtype=float)
    return 1 - np.exp(1j * (phases[:, None] - phases[None, :]))


def pair_identity_residual(c):
    """
    The largest violation of |c_ij|^2 = c_ij + conj(c_ij) over all pairs.
    """
    n = c.shape[0]
    return max((abs(abs(c[i, j]) ** 2 - 2 * c[i, j].real) for i, j in index_pairs(n)), default=0.0)


def triple_identity_residual(c):
    """
    The largest violation of c_ij c_jk = c_ij + c_jk - c_ik over all triples i < j < k.
    """
    n = c.shape[0]
    return max(
        (abs(c[i, j] * c[j, k] - (c[i, j] + c[j, k] - c[i, k])) for i, j, k in itertools.combinations(range(n), 3)),
        default=0.0,
    )


class CompatibilitySystem:
    """
    The quadratic equations |gamma_1j|^2 = 2 sqrt(lambda_1 lambda_j) Re gamma_1j on the kernel of the linear system,
    with gamma = sum_a x_a v^a.
    """

    def __init__(self, basis, coefficients):
        self.coefficients = np.asarray(coefficients, dtype=float)
        self.n = self.coefficients.size
        self.pairs = index_pairs(self.n)
        self.v = basis.complex_vectors()
        self.first = [p for p, (i, _) in enumerate(self.pairs) if i == 0]
        self.scale = np.sqrt(self.coefficients[0] * self.coefficients[1:])

    @property
    def dim(self):
        return self.v.shape[1]

    def gammas(self, x):
        g = self.v @ np.asarray(x, dtype=float)
        return unpack(np.column_stack([g.real, g.imag]).ravel(), self.n)

    def residual(self, x):
        g = self.v[self.first] @ np.asarray(x, dtype=float)
        return np.abs(g) ** 2 - 2 * self.scale * g.real

    def jacobian(self, x):
        v = self.v[self.first]
        g = v @ np.asarray(x, dtype=float)
        return 2 * (g.conj()[:, None] * v).real - 2 * self.scale[:, None] * v.real

    def normalized(self, x):
        """
        The normalized variables c_ij of the point `x` for all pairs.
        """
        s = np.sqrt(self.coefficients)
        return self.gammas(x) / np.outer(s, s)

    def consistency(self, x):
        """
        The largest violation of the pair and triple identities by the point `x`.
        """
        c = self.normalized(x)
        return max(pair_identity_residual(c), triple_identity_residual(c))

    def phases(self, x):
        """
        Convert the point to phases with phi_1 = 0 using exp(-i phi_j) = 1 - c_1j.
        """
        c = self.normalized(x)
        return np.concatenate([[0.0], -np.angle(1 - c[0, 1:])])


@dataclass(frozen=True, eq=False)
class CompatibilityResult:
    """
    Solutions of the compatibility equations found by Newton restarts. `solutions` are the distinct converged points
    that also satisfy all pair and triple identities, `rejected` counts converged points that do not and `failed`
    counts restarts that did not converge.
    """

    solutions: list = field(repr=False)
    residuals: list = field(repr=False)
    nontrivial: list = field(repr=False)
    rejected: int
    failed: int
    restarts: int
    trivial_tol: float

    @property
    def max_nontrivial_norm(self):
        return max((float(np.linalg.norm(x)) for x in self.nontrivial), default=0.0)

    @property
    def only_trivial(self):
        return len(self.solutions) > 0 and len(self.nontrivial) == 0

    def to_dict(self):
        return {
            "solutions": len(self.solutions),
            "nontrivial": len(self.nontrivial),
            "max_nontrivial_norm": self.max_nontrivial_norm,
            "max_residual": max(self.residuals, default=0.0),
            "rejected": self.rejected,
            "failed": self.failed,
            "restarts": self.restarts,
        }


def newton(system, x0, tol=1e-12, max_iter=100):
    """
    Damped Newton iterations with a least-squares step and backtracking on the residual norm.
    Return the final point and its residual norm.
    """
    x = np.array(x0, dtype=float)
    f = np.linalg.norm(system.residual(x))
    for _ in range(max_iter):
        if f <= tol:
            break
        step = np.linalg.lstsq(system.jacobian(x), system.residual(x), rcond=None)[0]
        t = 1.0
        while t > 1e-10:
            x1 = x - t * step
            f1 = np.linalg.norm(system.residual(x1))
            if f1 < f:
                break
            t /= 2
        else:
            break
        x, f = x1, f1
    return x, f


def solve_compatibility(basis, lambdas, restarts, rng, settings=None):
    """
    Solve the compatibility equations by Newton iterations from `restarts` random points in the box
    |x_a| <= box. Converged points are checked against all pair and triple identities and deduplicated.
    """
    settings = settings or CertifierSettings()
    system = CompatibilitySystem(basis, lambdas)
    g = as_generator(rng)
    found, rejected, failed = [], 0, 0

    for k in range(restarts):
        x0 = g.uniform(-settings.box, settings.box, system.dim)
        x, f = newton(system, x0, settings.newton_tol, settings.newton_max_iter)
        if f > settings.solution_tol:
            failed += 1
            log.debug(f"The restart {k} did not converge, the residual is {f:.3e}.")
            continue
        if system.consistency(x) > settings.consistency_tol:
            rejected += 1
            log.debug(f"The restart {k} converged to a point violating the identities, |x|={np.linalg.norm(x):.3e}.")
            continue
        if all(np.linalg.norm(x - y) > settings.dedup_tol for y, _ in found):
            found.append((x, f))

    found.sort(key=lambda s: (float(np.linalg.norm(s[0])), tuple(s[0])))
    result = CompatibilityResult(
        solutions=[x for x, _ in found],
        residuals=[float(f) for _, f in found],
        nontrivial=[x for x, _ in found if np.linalg.norm(x) > settings.trivial_tol],
        rejected=rejected,
        failed=failed,
        restarts=restarts,
        trivial_tol=settings.trivial_tol,
    )
    log.debug(
        f"Compatibility: {len(result.solutions)} solutions, {len(result.nontrivial)} nontrivial, "
        f"{rejected} rejected, {failed} failed."
    )
    return result
