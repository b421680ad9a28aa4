"""Small dense complex operator/vector engine.

Everything here is a thin, immutable wrapper around ``numpy`` arrays. The
largest space in use is three particles of dimension 6 (216), so dense
storage is always adequate.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

DEFAULT_TOL = 1e-10
NORM_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Operator:
    """A square complex matrix. Immutable once built."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"operator must be a non-empty square matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> Operator:
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> Operator:
        return cls(np.zeros((dim, dim)))

    def adjoint(self) -> Operator:
        return Operator(self.matrix.conj().T)

    def is_hermitian(self, tol: float = NORM_TOL) -> bool:
        return bool(np.linalg.norm(self.matrix - self.matrix.conj().T) < tol)

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self.matrix))

    def allclose(self, other: Operator, tol: float = NORM_TOL) -> bool:
        _check_dims(self.dim, other.dim)
        return distance(self, other) < tol

    def __matmul__(self, other: Operator) -> Operator:
        _check_dims(self.dim, other.dim)
        return Operator(self.matrix @ other.matrix)

    def __add__(self, other: Operator) -> Operator:
        _check_dims(self.dim, other.dim)
        return Operator(self.matrix + other.matrix)

    def __sub__(self, other: Operator) -> Operator:
        _check_dims(self.dim, other.dim)
        return Operator(self.matrix - other.matrix)

    def __neg__(self) -> Operator:
        return Operator(-self.matrix)

    def __mul__(self, scalar: complex) -> Operator:
        return Operator(self.matrix * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class StateVector:
    """A complex vector. Use :meth:`normalized` to build unit states."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = _frozen(self.amplitudes)
        if a.ndim != 1 or a.shape[0] == 0:
            raise ValueError(f"state must be a non-empty 1-d array, got shape {a.shape}")
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def normalized(cls, amplitudes: Iterable[complex] | np.ndarray) -> StateVector:
        a = np.asarray(amplitudes, dtype=np.complex128)
        n = np.linalg.norm(a)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(a / n)

    @classmethod
    def basis(cls, dim: int, index: int) -> StateVector:
        a = np.zeros(dim, dtype=np.complex128)
        a[index] = 1.0
        return cls(a)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: StateVector) -> complex:
        """<self|other>"""
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def kron(self, other: StateVector) -> StateVector:
        return StateVector(np.kron(self.amplitudes, other.amplitudes))

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


class DimensionMismatch(ValueError):
    """Raised when two objects of incompatible dimension are combined."""


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimension mismatch: {a} vs {b}")


def tensor(a: Operator, b: Operator, *more: Operator) -> Operator:
    """Kronecker product, left factor most significant."""
    return Operator(reduce(np.kron, [op.matrix for op in (a, b, *more)]))


def commutator(a: Operator, b: Operator) -> Operator:
    _check_dims(a.dim, b.dim)
    return Operator(a.matrix @ b.matrix - b.matrix @ a.matrix)


def apply(a: Operator, v: StateVector) -> np.ndarray:
    """Return ``a @ v`` as a raw array; no renormalization."""
    _check_dims(a.dim, v.dim)
    out = a.matrix @ v.amplitudes
    out.flags.writeable = False
    return out


def eigen_residual(a: Operator, v: StateVector, eigenvalue: complex) -> float:
    """Return ||a v - eigenvalue v||_2."""
    return float(np.linalg.norm(apply(a, v) - eigenvalue * v.amplitudes))


def is_eigenvector(a: Operator, v: StateVector, eigenvalue: complex, tol: float = DEFAULT_TOL) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    return eigen_residual(a, v, eigenvalue) < tol


def expectation(a: Operator, v: StateVector) -> complex:
    """<v|a|v>"""
    return complex(np.vdot(v.amplitudes, apply(a, v)))


def distance(a: Operator, b: Operator) -> float:
    """Frobenius norm of ``a - b``."""
    _check_dims(a.dim, b.dim)
    return float(np.linalg.norm(a.matrix - b.matrix))
