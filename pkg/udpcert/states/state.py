# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import json
import logging

import numpy as np

from dataclasses import dataclass, field

from udpcert.utils import dumps

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10
READ_NORM_TOL = 1e-8

log = logging.getLogger("states")


class ArgumentException(Exception):
    pass


class LabelException(ArgumentException):
    pass


def _freeze(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SubsystemSet:
    """
    A non-empty set of subsystem labels. The labels are always kept in the order
    of the parent label list so that all reshaping derives from one index convention.
    """

    labels: tuple

    @classmethod
    def parse(cls, value, parent):
        """
        Create the set from a value such as `AB`, `A+E1`, `["A", "B"]` or an existing set,
        validated against the parent labels. Concatenated labels are matched greedily,
        longest label first.
        """
        parent = tuple(parent)
        if isinstance(value, SubsystemSet):
            labels = list(value.labels)
        elif isinstance(value, str):
            if "+" in value:
                labels = [x.strip() for x in value.split("+") if x.strip() != ""]
            else:
                labels, rest = [], value.strip()
                candidates = sorted(parent, key=len, reverse=True)
                while rest:
                    match = next(iter([x for x in candidates if rest.startswith(x)]), None)
                    if match is None:
                        raise LabelException(f"Cannot parse '{value}', unknown label at '{rest}'.")
                    labels.append(match)
                    rest = rest[len(match) :]
        else:
            labels = list(value)

        if len(labels) == 0:
            raise ArgumentException("The subsystem set must not be empty.")
        if len(set(labels)) != len(labels):
            raise LabelException(f"The subsystem set {labels} contains duplicate labels.")
        for x in labels:
            if x not in parent:
                raise LabelException(f"The label '{x}' is not one of {list(parent)}.")
        return cls(tuple(x for x in parent if x in labels))

    def indices(self, parent):
        return tuple(list(parent).index(x) for x in self.labels)

    def complement(self, parent):
        return tuple(x for x in parent if x not in self.labels)

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return "".join(self.labels) if all(len(x) == 1 for x in self.labels) else "+".join(self.labels)


@dataclass(frozen=True, eq=False)
class PureState:
    """
    A pure state over labeled qudit subsystems. Amplitudes are indexed lexicographically
    over the subsystem basis indices with the last subsystem running fastest.
    """

    labels: tuple
    dims: tuple
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "amplitudes", _freeze(np.ravel(self.amplitudes)))
        if len(self.labels) != len(self.dims):
            raise ArgumentException("The number of labels and dimensions must be the same.")
        if len(set(self.labels)) != len(self.labels):
            raise LabelException(f"The labels {list(self.labels)} contain duplicates.")
        if any(d < 1 for d in self.dims):
            raise ArgumentException(f"Invalid dimensions {list(self.dims)}.")
        if self.amplitudes.size != int(np.prod(self.dims)):
            raise ArgumentException(
                f"The number of amplitudes {self.amplitudes.size} does not match the dimensions {list(self.dims)}."
            )
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm**2 - 1) > NORM_TOL:
            raise ArgumentException(f"The state is not normalized, the squared norm is {norm**2:.15g}.")

    @classmethod
    def create(cls, labels, dims, amplitudes, renormalize=True):
        """
        Create a state from amplitudes that do not have to be normalized.
        """
        amplitudes = np.ravel(np.asarray(amplitudes, dtype=complex))
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise ArgumentException("The amplitudes must not all be zero.")
        if renormalize:
            amplitudes = amplitudes / norm
        return cls(labels, dims, amplitudes)

    @classmethod
    def basis(cls, labels, dims, index):
        """
        Create a computational basis state such as |0000> from a tuple of local indices.
        """
        amplitudes = np.zeros(int(np.prod(dims)), dtype=complex)
        amplitudes[np.ravel_multi_index(tuple(index), tuple(dims))] = 1
        return cls(labels, dims, amplitudes)

    @property
    def num_parties(self):
        return len(self.labels)

    @property
    def dim(self):
        return self.amplitudes.size

    def tensor(self):
        return self.amplitudes.reshape(self.dims)

    def density(self):
        return DensityOperator(self.labels, self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))

    def same_space(self, other):
        return self.labels == other.labels and self.dims == other.dims

    def to_dict(self):
        return {
            "labels": list(self.labels),
            "dims": list(self.dims),
            "re": self.amplitudes.real.tolist(),
            "im": self.amplitudes.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data, renormalize=False, tol=READ_NORM_TOL):
        """
        Create the state from the JSON state format. The state is rejected when its norm deviates
        from 1 by more than `tol` unless `renormalize` is set.
        """
        try:
            labels, dims = data["labels"], data["dims"]
            amplitudes = np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float)
        except (KeyError, TypeError, ValueError) as e:
            raise ArgumentException(f"Invalid state format. {str(e)}")
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > tol:
            if not renormalize:
                raise ArgumentException(f"The state is not normalized (norm={norm:.12g}).")
            log.warning(f"The state norm is {norm:.12g}, the state will be renormalized.")
        return cls.create(labels, dims, amplitudes)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """
    A density operator over labeled qudit subsystems, using the same index convention as `PureState`.
    """

    labels: tuple
    dims: tuple
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "matrix", _freeze(self.matrix))
        n = int(np.prod(self.dims))
        if self.matrix.shape != (n, n):
            raise ArgumentException(f"The matrix shape {self.matrix.shape} does not match the dimensions {self.dims}.")
        if np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0) > HERMITIAN_TOL:
            raise ArgumentException("The density operator is not Hermitian.")
        if abs(np.trace(self.matrix) - 1) > TRACE_TOL:
            raise ArgumentException(f"The trace of the density operator is {np.trace(self.matrix).real:.15g}.")
        if np.linalg.eigvalsh(self.matrix)[0] < PSD_FLOOR:
            raise ArgumentException("The density operator is not positive semidefinite.")

    def tensor(self):
        return self.matrix.reshape(self.dims + self.dims)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)[::-1]

    def purity(self):
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def to_dict(self):
        return {
            "labels": list(self.labels),
            "dims": list(self.dims),
            "re": self.matrix.real.tolist(),
            "im": self.matrix.imag.tolist(),
        }


@dataclass(frozen=True, eq=False)
class MarginalSet:
    """
    An ordered list of marginals, each a pair of a `SubsystemSet` and its `DensityOperator`.
    """

    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        for subsystems, rho in self.items:
            if tuple(subsystems.labels) != tuple(rho.labels):
                raise LabelException(f"The marginal labels {rho.labels} do not match the set {subsystems}.")

    @property
    def config(self):
        return tuple(s for s, _ in self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __getitem__(self, key):
        if isinstance(key, int):
            return self.items[key][1]
        for s, rho in self.items:
            if str(s) == key or s.labels == tuple(key):
                return rho
        raise KeyError(f"There is no marginal for '{key}'.")

    def to_dict(self):
        return {"marginals": [{"subsystems": str(s), "rho": rho.to_dict()} for s, rho in self.items]}


def read_state(file, renormalize=False, tol=READ_NORM_TOL):
    """
    Read a state from a file in the JSON state format, the norm is checked with `tol`.
    """
    with open(file, "rt", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ArgumentException(f"Cannot read the state from {file}. {str(e)}")
    return PureState.from_dict(data, renormalize=renormalize, tol=tol)


def write_state(state, file):
    with open(file, "wt", encoding="utf-8") as f:
        f.write(dumps(state.to_dict()) + "\n")
