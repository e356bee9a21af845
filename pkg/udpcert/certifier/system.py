# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

import numpy as np
import scipy.linalg

from dataclasses import dataclass, field

from udpcert.states import ArgumentException

from .blocks import gell_mann

log = logging.getLogger("certifier")


def index_pairs(n):
    """
    The pairs (i, j), i < j, in the order of the unknowns.
    """
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def induced_gammas(phases, coefficients):
    """
    Return the matrix gamma_ij = (1 - exp(i(phi_i - phi_j))) sqrt(lambda_i lambda_j).
    """
    phases = np.asarray(phases, dtype=float)
    s = np.sqrt(np.asarray(coefficients, dtype=float))
    return (1 - np.exp(1j * (phases[:, None] - phases[None, :]))) * np.outer(s, s)


def pack(gammas):
    """
    Pack the upper triangle of a gamma matrix to the real vector (Re g_01, Im g_01, Re g_02, ...).
    """
    n = gammas.shape[0]
    g = np.array([gammas[i, j] for i, j in index_pairs(n)])
    return np.column_stack([g.real, g.imag]).ravel()


def unpack(vector, n):
    """
    Unpack a real vector to the Hermitian gamma matrix with zero diagonal.
    """
    v = np.asarray(vector)
    g = v[0::2] + 1j * v[1::2]
    m = np.zeros((n, n), dtype=complex)
    for p, (i, j) in enumerate(index_pairs(n)):
        m[i, j] = g[p]
        m[j, i] = np.conj(g[p])
    return m


@dataclass(frozen=True, eq=False)
class GammaLinearSystem:
    """
    The real linear system for the packed unknowns gamma_ij, i < j. Every row is the coefficient of the operator
    sum_{i!=j} gamma_ij O_ij at one product G_a (x) G_b of traceless Hermitian generators.
    """

    matrix: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)
    third_pair: tuple
    offdiagonal_rows: int
    diagonal_rows: int

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def size(self):
        return self.coefficients.size

    def residual(self, phases):
        """
        The norm of the system applied to the gammas induced by `phases`. It equals the Hilbert-Schmidt distance
        between the third-pair marginal of the state and of its phased sibling.
        """
        return float(np.linalg.norm(self.matrix @ pack(induced_gammas(phases, self.coefficients))))

    def to_dict(self):
        return {
            "shape": list(self.shape),
            "third_pair": "".join(self.third_pair),
            "offdiagonal_rows": self.offdiagonal_rows,
            "diagonal_rows": self.diagonal_rows,
        }


def assemble_linear_system(blocks, third_pair=None):
    """
    Assemble the system from the operator blocks. The third pair must consist of the parties the blocks keep.
    """
    if third_pair is not None:
        labels = tuple(getattr(third_pair, "labels", third_pair))
        if set(labels) != set(blocks.keep):
            raise ArgumentException(f"The blocks keep {blocks.keep}, they cannot be used for the pair {labels}.")
    n = blocks.size
    gq, off = gell_mann(blocks.q.shape[2])
    gr, _ = gell_mann(blocks.r.shape[2])
    pairs = index_pairs(n)
    qi = np.array([blocks.q[i, j] for i, j in pairs])
    ri = np.array([blocks.r[i, j] for i, j in pairs])

    # t[a, b, p] = Tr(G_a Q_p) Tr(G_b R_p)
    tq = np.einsum("axy,pyx->ap", gq, qi)
    tr = np.einsum("bxy,pyx->bp", gr, ri)
    t = np.einsum("ap,bp->abp", tq, tr).reshape(-1, len(pairs))
    matrix = np.empty((t.shape[0], 2 * len(pairs)))
    matrix[:, 0::2] = 2 * t.real
    matrix[:, 1::2] = -2 * t.imag

    offdiagonal_rows = off * gr.shape[0]
    sys = GammaLinearSystem(
        matrix,
        np.array(blocks.coefficients),
        tuple(blocks.keep),
        offdiagonal_rows,
        matrix.shape[0] - offdiagonal_rows,
    )
    log.debug(f"The linear system has the shape {sys.shape}.")
    return sys


@dataclass(frozen=True, eq=False)
class NullspaceBasis:
    """
    Orthonormal real basis of the kernel of the linear system, the basis vectors are the columns of `vectors`.
    """

    vectors: np.ndarray = field(repr=False)
    singular_values: np.ndarray = field(repr=False)
    rank: int
    threshold: float

    @property
    def dim(self):
        return self.vectors.shape[1]

    def gammas(self, x):
        """
        Return the packed complex gammas sum_a x_a v^a.
        """
        v = self.vectors @ np.asarray(x, dtype=float)
        return v[0::2] + 1j * v[1::2]

    def complex_vectors(self):
        return self.vectors[0::2] + 1j * self.vectors[1::2]

    def to_dict(self):
        return {
            "dim": self.dim,
            "rank": self.rank,
            "threshold": self.threshold,
            "singular_values": self.singular_values,
        }


def solve_nullspace(system, tol=1e-8):
    """
    Compute the kernel of the system by the singular value decomposition with the threshold `tol` relative
    to the largest singular value.
    """
    m = system.matrix if isinstance(system, GammaLinearSystem) else np.asarray(system, dtype=float)
    s = scipy.linalg.svdvals(m) if m.size > 0 else np.zeros(0)
    vectors = scipy.linalg.null_space(m, rcond=tol)
    rank = m.shape[1] - vectors.shape[1]
    basis = NullspaceBasis(vectors, s, rank, float(tol * s[0]) if s.size > 0 else 0.0)
    log.debug(f"The kernel dimension is {basis.dim}, the rank is {rank}.")
    return basis
