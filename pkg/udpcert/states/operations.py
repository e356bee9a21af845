# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import itertools
import logging

import numpy as np

from dataclasses import dataclass, field

from .state import (
    ArgumentException,
    DensityOperator,
    LabelException,
    MarginalSet,
    PureState,
    SubsystemSet,
    _freeze,
)

RANK_TOL = 1e-10
UNITARY_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
SUM_TOL = 1e-12

log = logging.getLogger("states")


def reduced_matrix(amplitudes, dims, axes):
    """
    Return the reduced density matrix of the subsystems at `axes` (in the given order) as a plain array.
    This is the unchecked counterpart of `partial_trace` used in the numerical inner loops.
    """
    t = np.moveaxis(np.reshape(amplitudes, dims), list(axes), list(range(len(axes))))
    m = t.reshape(int(np.prod([dims[i] for i in axes])), -1)
    return m @ m.conj().T


def apply_local_operator(tensor, operator, axes):
    """
    Apply `operator` on the subsystems at `axes` of an amplitude tensor and return the new tensor.
    The operator matrix is indexed over `axes` in the given order.
    """
    tensor = np.asarray(tensor)
    axes = list(axes)
    t = np.moveaxis(tensor, axes, list(range(len(axes))))
    shape = t.shape
    m = np.asarray(operator) @ t.reshape(int(np.prod(shape[: len(axes)])), -1)
    return np.moveaxis(m.reshape(shape), list(range(len(axes))), axes)


def partial_trace(state, keep):
    """
    Trace out all subsystems that are not in `keep` from a `PureState` or a `DensityOperator`.
    """
    keep = SubsystemSet.parse(keep, state.labels)
    axes = keep.indices(state.labels)
    kdims = tuple(state.dims[i] for i in axes)
    if isinstance(state, PureState):
        matrix = reduced_matrix(state.amplitudes, state.dims, axes)
    elif isinstance(state, DensityOperator):
        n = len(state.dims)
        rest = [i for i in range(n) if i not in axes]
        t = np.transpose(state.tensor(), list(axes) + rest + [n + i for i in axes] + [n + i for i in rest])
        dk, dr = int(np.prod(kdims)), int(np.prod([state.dims[i] for i in rest]))
        matrix = np.einsum("ajbj->ab", t.reshape(dk, dr, dk, dr))
    else:
        raise ArgumentException(f"Cannot compute the partial trace of {type(state).__name__}.")
    return DensityOperator(keep.labels, kdims, matrix)


def _parse_bipartition(bipartition, labels):
    if isinstance(bipartition, str):
        if "|" not in bipartition:
            raise ArgumentException(f"Invalid bipartition '{bipartition}', the format must be LEFT|RIGHT.")
        bipartition = bipartition.split("|", 1)
    if len(bipartition) != 2:
        raise ArgumentException("The bipartition must have exactly two parts.")
    left = SubsystemSet.parse(bipartition[0], labels)
    right = SubsystemSet.parse(bipartition[1], labels)
    if set(left.labels) & set(right.labels) or set(left.labels) | set(right.labels) != set(labels):
        raise ArgumentException(f"The sets {left} and {right} are not a partition of {list(labels)}.")
    return left, right


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """
    The Schmidt decomposition of a pure state along a bipartition. The columns of `left_basis`
    and `right_basis` are the vectors |i>_left and |i>_right and the coefficients are the squared
    singular values in decreasing order.
    """

    labels: tuple
    dims: tuple
    left: SubsystemSet
    right: SubsystemSet
    coefficients: np.ndarray = field(repr=False)
    left_basis: np.ndarray = field(repr=False)
    right_basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "left_basis", _freeze(self.left_basis))
        object.__setattr__(self, "right_basis", _freeze(self.right_basis))
        if np.any(c < 0):
            raise ArgumentException("The Schmidt coefficients must be non-negative.")
        if abs(np.sum(c) - 1) > SUM_TOL:
            raise ArgumentException(f"The Schmidt coefficients sum to {np.sum(c):.15g}.")
        if np.any(np.diff(c) > 0):
            raise ArgumentException("The Schmidt coefficients must be in decreasing order.")
        for name, b in (("left", self.left_basis), ("right", self.right_basis)):
            if b.shape[1] != c.size:
                raise ArgumentException(f"The {name} basis must have {c.size} columns.")
            if np.max(np.abs(b.conj().T @ b - np.eye(c.size))) > ORTHONORMAL_TOL:
                raise ArgumentException(f"The {name} basis is not orthonormal.")

    @property
    def left_dims(self):
        return tuple(self.dims[i] for i in self.left.indices(self.labels))

    @property
    def right_dims(self):
        return tuple(self.dims[i] for i in self.right.indices(self.labels))

    @property
    def rank(self):
        return int(np.count_nonzero(self.coefficients))

    def amplitudes(self, phases=None, rotation=None):
        """
        Return the amplitudes of the state sum_i exp(i*phi_i) sqrt(lambda_i) |i>_left |i>_right in the
        parent index order. An optional `rotation` matrix W replaces the left vectors by the columns of
        left_basis @ W.
        """
        a = np.sqrt(self.coefficients).astype(complex)
        if phases is not None:
            phases = np.asarray(phases, dtype=float)
            if phases.shape != a.shape:
                raise ArgumentException(f"Expected {a.size} phases, got {phases.size}.")
            a = a * np.exp(1j * phases)
        left = self.left_basis if rotation is None else self.left_basis @ np.asarray(rotation)
        m = (left * a) @ self.right_basis.T
        axes = list(self.left.indices(self.labels)) + list(self.right.indices(self.labels))
        t = m.reshape(self.left_dims + self.right_dims)
        return np.transpose(t, np.argsort(axes)).ravel()

    def reconstruct(self, phases=None):
        return PureState.create(self.labels, self.dims, self.amplitudes(phases))

    def to_dict(self):
        return {
            "bipartition": f"{self.left}|{self.right}",
            "coefficients": self.coefficients,
            "left_basis": self.left_basis,
            "right_basis": self.right_basis,
        }


def schmidt_decompose(state, bipartition, rank_tol=RANK_TOL):
    """
    Decompose `state` along the bipartition given as `(left, right)` or as a string such as `AB|CD`.
    Singular values below `rank_tol` times the largest one are set to zero. The phase of every left basis
    column is fixed so that its first entry of the largest magnitude is real and non-negative, the conjugate
    phase goes to the matching right column.
    """
    left, right = _parse_bipartition(bipartition, state.labels)
    laxes, raxes = left.indices(state.labels), right.indices(state.labels)
    dl = int(np.prod([state.dims[i] for i in laxes]))
    t = np.transpose(state.tensor(), list(laxes) + list(raxes))
    u, s, vh = np.linalg.svd(t.reshape(dl, -1), full_matrices=False)
    s = np.where(s < rank_tol * s[0], 0.0, s)
    lambdas = s**2
    lambdas = lambdas / np.sum(lambdas)

    v = vh.T.copy()
    for i in range(u.shape[1]):
        k = np.argmax(np.abs(u[:, i]))
        phase = u[k, i] / abs(u[k, i])
        u[:, i] = u[:, i] / phase
        v[:, i] = v[:, i] * phase
    return SchmidtDecomposition(state.labels, state.dims, left, right, lambdas, u, v)


def schmidt_compose(coefficients, left_basis, right_basis, labels, dims, bipartition):
    """
    Build a state directly in the Schmidt form from its coefficients and bases. The coefficients
    are sorted in decreasing order together with the basis columns.
    """
    left, right = _parse_bipartition(bipartition, labels)
    coefficients = np.asarray(coefficients, dtype=float)
    order = np.argsort(-coefficients, kind="stable")
    sd = SchmidtDecomposition(
        tuple(labels),
        tuple(dims),
        left,
        right,
        coefficients[order],
        np.asarray(left_basis)[:, order],
        np.asarray(right_basis)[:, order],
    )
    return sd.reconstruct(), sd


def two_body_config(labels):
    """
    Return all pairs of the labels, e.g. AB, AC, AD, BC, BD, CD for four parties.
    """
    return [SubsystemSet(x) for x in itertools.combinations(labels, 2)]


def marginal_set(state, config):
    """
    Compute the marginals of `state` for all subsystem sets in `config`.
    """
    if isinstance(config, str):
        config = [x for x in config.split(",") if x.strip() != ""]
    items = []
    for item in config:
        s = SubsystemSet.parse(item, state.labels)
        items.append((s, partial_trace(state, s)))
    return MarginalSet(items)


def marginal_distance(m1, m2):
    """
    Return sqrt(sum_S ||rho_S - sigma_S||^2) with the Hilbert-Schmidt norm over the marginals of both sets.
    """
    if [s.labels for s in m1.config] != [s.labels for s in m2.config]:
        raise ArgumentException("The marginal sets have different configurations.")
    total = 0.0
    for (s, rho), (_, sigma) in zip(m1, m2):
        if rho.dims != sigma.dims:
            raise ArgumentException(f"The marginals for {s} have different dimensions.")
        total += np.sum(np.abs(rho.matrix - sigma.matrix) ** 2)
    return float(np.sqrt(total))


def fidelity(s1, s2):
    """
    Return |<s1|s2>|.
    """
    if not s1.same_space(s2):
        raise ArgumentException("The states are defined on different spaces.")
    return float(abs(np.vdot(s1.amplitudes, s2.amplitudes)))


def check_unitary(u, dim=None, tol=UNITARY_TOL):
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or (dim is not None and u.shape[0] != dim):
        raise ArgumentException(f"The matrix of shape {u.shape} is not a {dim}x{dim} matrix.")
    if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) > tol:
        raise ArgumentException("The matrix is not unitary.")
    return u


def apply_local_unitaries(state, unitaries):
    """
    Apply single-party unitaries given as a dictionary of labels and matrices.
    """
    t = state.tensor()
    for label, u in unitaries.items():
        if label not in state.labels:
            raise LabelException(f"The label '{label}' is not one of {list(state.labels)}.")
        axis = state.labels.index(label)
        t = apply_local_operator(t, check_unitary(u, state.dims[axis]), [axis])
    return PureState.create(state.labels, state.dims, t)
