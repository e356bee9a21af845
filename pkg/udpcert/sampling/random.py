# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import string
import logging

import numpy as np

from dataclasses import dataclass

from udpcert.states import ArgumentException, PureState, schmidt_compose

GAP_TOL = 1e-8
RANK_TOL = 1e-10

log = logging.getLogger("sampling")


class RandomSource:
    """
    A reproducible source of random numbers identified by a seed and a stream id. Independent trials
    use different streams of the same seed, the stream id is the spawn key of numpy's `SeedSequence`.
    """

    def __init__(self, seed, stream=0):
        if seed is None or int(seed) < 0:
            raise ArgumentException("The seed must be a non-negative integer.")
        self.seed = int(seed)
        self.stream = int(stream)
        self._generator = None

    @property
    def generator(self):
        if self._generator is None:
            self._generator = np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))
        return self._generator

    def spawn(self, stream):
        return RandomSource(self.seed, stream)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, stream={self.stream})"


def as_source(rng):
    """
    Return `rng` as a RandomSource. A seed is taken as is, a numpy Generator is consumed for a fresh seed
    so that independent streams can be spawned from it.
    """
    if isinstance(rng, RandomSource):
        return rng
    if isinstance(rng, np.random.Generator):
        return RandomSource(int(rng.integers(0, 2**63 - 1)))
    if isinstance(rng, (int, np.integer)) and not isinstance(rng, bool):
        return RandomSource(rng)
    raise ArgumentException(f"Invalid random source {rng}.")


def as_generator(rng):
    if isinstance(rng, RandomSource):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise ArgumentException(f"Invalid random source {rng}.")


def default_labels(n):
    if n > len(string.ascii_uppercase):
        raise ArgumentException(f"Too many parties ({n}).")
    return tuple(string.ascii_uppercase[:n])


def ginibre(shape, rng):
    g = as_generator(rng)
    return (g.standard_normal(shape) + 1j * g.standard_normal(shape)) / np.sqrt(2)


def haar_unitary(dim, rng):
    """
    Draw a Haar-random unitary as the Q factor of a complex Gaussian matrix, with the phases
    of the diagonal of R moved to Q.
    """
    if dim < 1:
        raise ArgumentException("The dimension must be a positive integer.")
    q, r = np.linalg.qr(ginibre((dim, dim), rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_state(dims, rng, labels=None):
    """
    Draw a Haar-random pure state as a normalized complex Gaussian vector.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0 or any(d < 2 for d in dims):
        raise ArgumentException(f"Invalid dimensions {list(dims)}, all dimensions must be at least 2.")
    labels = default_labels(len(dims)) if labels is None else tuple(labels)
    return PureState.create(labels, dims, ginibre(int(np.prod(dims)), rng))


def schmidt_coefficients(dim, rng):
    """
    Draw Schmidt coefficients of a Haar-random state on a dim x dim system, in decreasing order.
    """
    s = np.linalg.svd(ginibre((dim, dim), rng), compute_uv=False)
    return s**2 / np.sum(s**2)


def generic_schmidt_state(d, rng, labels=("A", "B", "C", "D")):
    """
    Build a generic four-party state in the Schmidt form along AB|CD. Both Schmidt bases are columns of
    independent Haar unitaries on the d^2-dimensional spaces and the coefficients are the eigenvalues of
    the reduced state of another Haar-random bipartite state.
    """
    if d < 2:
        raise ArgumentException("The local dimension must be at least 2.")
    labels = tuple(labels)
    if len(labels) != 4:
        raise ArgumentException("Exactly four labels are required.")
    u_ab = haar_unitary(d * d, rng)
    u_cd = haar_unitary(d * d, rng)
    lambdas = schmidt_coefficients(d * d, rng)
    return schmidt_compose(lambdas, u_ab, u_cd, labels, (d,) * 4, (labels[:2], labels[2:]))


@dataclass(frozen=True)
class GenericityReport:
    schmidt_rank: int
    min_coefficient: float
    min_pairwise_gap: float
    is_generic: bool
    gap_tol: float = GAP_TOL
    rank_tol: float = RANK_TOL

    def to_dict(self):
        return {
            "schmidt_rank": self.schmidt_rank,
            "min_coefficient": self.min_coefficient,
            "min_pairwise_gap": self.min_pairwise_gap if np.isfinite(self.min_pairwise_gap) else None,
            "is_generic": self.is_generic,
            "gap_tol": self.gap_tol,
            "rank_tol": self.rank_tol,
        }


def genericity_check(sd, gap_tol=GAP_TOL, rank_tol=RANK_TOL):
    """
    Check that the decomposition has full Schmidt rank and pairwise distinct coefficients.
    """
    c = np.sort(np.asarray(sd.coefficients, dtype=float))[::-1]
    rank = int(np.count_nonzero(c > rank_tol))
    gap = float(np.min(-np.diff(c))) if c.size > 1 else float("inf")
    report = GenericityReport(
        schmidt_rank=rank,
        min_coefficient=float(c[-1]),
        min_pairwise_gap=gap,
        is_generic=bool(rank == c.size and c[-1] > rank_tol and gap > gap_tol),
        gap_tol=gap_tol,
        rank_tol=rank_tol,
    )
    log.debug(f"Genericity: rank={rank}, min={c[-1]:.3e}, gap={gap:.3e}, generic={report.is_generic}.")
    return report
