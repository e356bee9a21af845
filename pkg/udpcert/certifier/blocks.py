# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

import numpy as np

from dataclasses import dataclass, field

from udpcert.states import ArgumentException, SubsystemSet

log = logging.getLogger("certifier")


class NotGenericException(ArgumentException):
    pass


class UnsupportedConfigException(ArgumentException):
    pass


@dataclass(frozen=True)
class CertifierConfig:
    """
    A marginal configuration resolved for the certifier: the Schmidt bipartition given by a pair and its
    complement, and the pairs that take one party from each side.
    """

    pairs: tuple
    left: SubsystemSet
    right: SubsystemSet
    third_pairs: tuple

    def keep(self, third_pair):
        """
        Return the parties of `third_pair` on the left and on the right side of the bipartition.
        """
        l = [x for x in third_pair.labels if x in self.left.labels]
        r = [x for x in third_pair.labels if x in self.right.labels]
        return l[0], r[0]

    def __str__(self):
        return ",".join(str(x) for x in self.pairs)


def resolve_config(labels, config):
    """
    Find the Schmidt bipartition and the third pairs in the configuration. The first pair whose complement is
    also in the configuration defines the bipartition.
    """
    labels = tuple(labels)
    if isinstance(config, str):
        config = [x for x in config.split(",") if x.strip() != ""]
    pairs = tuple(SubsystemSet.parse(x, labels) for x in config)
    if len(pairs) == 0:
        raise ArgumentException("The configuration must not be empty.")
    for p in pairs:
        if len(p) != 2:
            raise UnsupportedConfigException(f"The certifier supports two-body marginals only, {p} is not a pair.")

    for p in pairs:
        complement = p.complement(labels)
        if len(complement) == 2 and any(q.labels == complement for q in pairs):
            left, right = p, SubsystemSet(complement)
            third = tuple(
                q
                for q in pairs
                if len(set(q.labels) & set(left.labels)) == 1 and len(set(q.labels) & set(right.labels)) == 1
            )
            if len(third) == 0:
                break
            return CertifierConfig(pairs, left, right, third)
    raise UnsupportedConfigException(
        f"The configuration {','.join(str(x) for x in pairs)} must contain two complementary pairs and "
        "a third pair with one party on each side."
    )


def gell_mann(d):
    """
    Return the orthonormal basis of traceless Hermitian d x d matrices with Tr(G_a G_b) = delta_ab and
    the number of off-diagonal generators. The off-diagonal generators come first.
    """
    g = []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            a = np.zeros((d, d), dtype=complex)
            a[j, k], a[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            g += [s, a]
    off = len(g)
    for l in range(1, d):
        h = np.zeros((d, d), dtype=complex)
        h[np.arange(l), np.arange(l)] = 1
        h[l, l] = -l
        g.append(h / np.sqrt(l * (l + 1)))
    return np.array(g).reshape(-1, d, d), off


def _partial_blocks(basis, dims, keep):
    # q[i, j] = Tr_{all but keep}(|i><j|)
    r = basis.shape[1]
    t = np.moveaxis(basis.T.reshape((r,) + tuple(dims)), keep + 1, 1).reshape(r, dims[keep], -1)
    return np.einsum("ibx,jcx->ijbc", t, t.conj())


@dataclass(frozen=True, eq=False)
class OperatorBlocks:
    """
    The operators Q_ij on the kept left party and R_ij on the kept right party for all pairs of Schmidt
    vectors, and the Schmidt coefficients they were built from.
    """

    keep: tuple
    coefficients: np.ndarray = field(repr=False)
    q: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)

    @property
    def size(self):
        return self.coefficients.size

    def o(self, i, j):
        return np.kron(self.q[i, j], self.r[i, j])

    def operators(self, labels=None):
        """
        Return all O_ij = Q_ij (x) R_ij as an array indexed [i, j, x, y]. The row and column index run over
        the kept left party first unless `labels` puts the kept right party first.
        """
        n = self.size
        dim = self.q.shape[2] * self.r.shape[2]
        if labels is not None and list(labels).index(self.keep[0]) > list(labels).index(self.keep[1]):
            o = np.einsum("ijab,ijcd->ijcadb", self.q, self.r)
        else:
            o = np.einsum("ijab,ijcd->ijacbd", self.q, self.r)
        return o.reshape(n, n, dim, dim)

    def span_dim(self, tol=1e-8):
        """
        The dimension of the complex span of all O_ij at the relative threshold `tol`.
        """
        m = self.operators().reshape(self.size**2, -1)
        s = np.linalg.svd(m, compute_uv=False)
        return int(np.count_nonzero(s > tol * s[0]))

    def to_dict(self):
        return {"keep": list(self.keep), "q": self.q, "r": self.r}


def build_operator_blocks(sd, keep=None, full_rank=True):
    """
    Build the blocks from a full-rank Schmidt decomposition. `keep` names the parties kept on the left and the
    right side, by default the last party of each side. With `full_rank` off the blocks are built over the
    nonzero Schmidt terms only.
    """
    if full_rank and sd.rank < sd.coefficients.size:
        raise NotGenericException(
            f"The Schmidt rank {sd.rank} is less than {sd.coefficients.size}, the operator blocks are not defined."
        )
    keep = (sd.left.labels[-1], sd.right.labels[-1]) if keep is None else tuple(keep)
    if keep[0] not in sd.left.labels or keep[1] not in sd.right.labels:
        raise ArgumentException(f"The parties {keep} must be one from {sd.left} and one from {sd.right}.")
    terms = np.flatnonzero(sd.coefficients > 0)
    q = _partial_blocks(sd.left_basis[:, terms], sd.left_dims, sd.left.labels.index(keep[0]))
    r = _partial_blocks(sd.right_basis[:, terms], sd.right_dims, sd.right.labels.index(keep[1]))
    return OperatorBlocks(keep, np.array(sd.coefficients[terms]), q, r)
