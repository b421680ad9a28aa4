"""Hilbert spaces, named operators and particle permutations.

A single particle carries a spin (dimension 2, ``|up> = (1, 0)`` is the +1
eigenvector of Z) and a spatial mode (dimension 3, basis Here/There/Yonder).
Within a particle the spin index varies slower than the mode index; particle 1
is the most significant factor overall, so the full basis index is::

    ((s1 * 3 + m1) * 6 + (s2 * 3 + m2)) * 6 + (s3 * 3 + m3)

Spin-only labels drop the mode factors and live in dimension ``2 ** n``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cache, reduce

import numpy as np

from .linalg import Operator

SPIN_DIM = 2
MODE_DIM = 3
PARTICLE_DIM = SPIN_DIM * MODE_DIM
N_PARTICLES = 3


class Pauli(enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"


class Spatial(enum.Enum):
    ANY = "a"
    HERE = "h"
    THERE = "t"
    YONDER = "y"


PAULI_MATRICES: dict[Pauli, np.ndarray] = {
    Pauli.I: np.eye(2, dtype=complex),
    Pauli.X: np.array([[0, 1], [1, 0]], dtype=complex),
    Pauli.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Pauli.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}

MODE_INDEX = {Spatial.HERE: 0, Spatial.THERE: 1, Spatial.YONDER: 2}


def spatial_matrix(tag: Spatial) -> np.ndarray:
    """Identity for ``ANY``, otherwise the rank-1 projector onto the mode."""
    if tag is Spatial.ANY:
        return np.eye(MODE_DIM, dtype=complex)
    m = np.zeros((MODE_DIM, MODE_DIM), dtype=complex)
    i = MODE_INDEX[tag]
    m[i, i] = 1.0
    return m


def mode_projector(tag: Spatial) -> Operator:
    return Operator(spatial_matrix(tag))


def positional_projector(tag: Spatial) -> Operator:
    """I_2 (x) Pi_tag on one particle (dimension 6)."""
    return Operator(np.kron(np.eye(SPIN_DIM), spatial_matrix(tag)))


@dataclass(frozen=True)
class FactorSpec:
    pauli: Pauli
    spatial: Spatial = Spatial.ANY

    def __str__(self) -> str:
        if self.spatial is Spatial.ANY:
            return self.pauli.value
        return f"{self.pauli.value}_{self.spatial.value}"

    def matrix(self, spin_only: bool) -> np.ndarray:
        p = PAULI_MATRICES[self.pauli]
        if spin_only:
            return p
        return np.kron(p, spatial_matrix(self.spatial))

    def _key(self) -> tuple[str, str]:
        return (self.pauli.value, self.spatial.value)

    def __lt__(self, other: FactorSpec) -> bool:
        return self._key() < other._key()


@dataclass(frozen=True)
class ObservableLabel:
    """A product observable on 2 or 3 particles.

    ``spin_only`` labels act on the spin factors alone; the others act on the
    full spin (x) mode space of every particle.
    """

    factors: tuple[FactorSpec, ...]
    spin_only: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) not in (2, 3):
            raise ValueError(f"labels cover 2 or 3 particles, got {len(self.factors)}")
        if self.spin_only and any(f.spatial is not Spatial.ANY for f in self.factors):
            raise ValueError("spin-only labels cannot carry spatial tags")

    @property
    def n_particles(self) -> int:
        return len(self.factors)

    @property
    def dim(self) -> int:
        local = SPIN_DIM if self.spin_only else PARTICLE_DIM
        return local**self.n_particles

    def permuted(self, perm: Permutation) -> ObservableLabel:
        return ObservableLabel(perm.permute(self.factors), self.spin_only)

    def __str__(self) -> str:
        if self.spin_only:
            return "".join(str(f) for f in self.factors)
        return " ".join(str(f) for f in self.factors)


def parse_label(text: str, spin_only: bool | None = None) -> ObservableLabel:
    """Build a label from compact notation.

    ``"XYY"`` is a spin-only label; ``"X_h Y_t Y_y"`` (or ``"Xh Yt Yy"``) puts a
    spatial projector on every factor. A bare factor such as ``"X"`` in a
    whitespace-separated label means no spatial restriction.
    """
    text = text.strip()
    tokens = text.split() if any(c.isspace() for c in text) else list(text)
    factors = []
    for tok in tokens:
        tok = tok.replace("_", "")
        if not 1 <= len(tok) <= 2:
            raise ValueError(f"bad factor {tok!r} in label {text!r}")
        pauli = Pauli(tok[0].upper())
        spatial = Spatial(tok[1].lower()) if len(tok) == 2 else Spatial.ANY
        factors.append(FactorSpec(pauli, spatial))
    if spin_only is None:
        spin_only = all(f.spatial is Spatial.ANY for f in factors)
    return ObservableLabel(tuple(factors), spin_only)


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0, ..., n-1}``.

    Acting on a product of factors, the factor at position ``i`` is moved to
    position ``mapping[i]``. Composition ``p * q`` applies ``q`` first.
    """

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"not a permutation: {self.mapping}")

    @classmethod
    def identity(cls, n: int = N_PARTICLES) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int = N_PARTICLES) -> Permutation:
        m = list(range(n))
        m[i], m[j] = m[j], m[i]
        return cls(tuple(m))

    @property
    def n(self) -> int:
        return len(self.mapping)

    @property
    def parity(self) -> int:
        """+1 for even permutations, -1 for odd ones (via cycle lengths)."""
        seen = [False] * self.n
        sign = 1
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.mapping[i]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def __mul__(self, other: Permutation) -> Permutation:
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different size")
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(self.n)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return Permutation(tuple(inv))

    def permute(self, items: tuple) -> tuple:
        if len(items) != self.n:
            raise ValueError("length mismatch")
        out = [None] * self.n
        for i, item in enumerate(items):
            out[self.mapping[i]] = item
        return tuple(out)


def all_permutations(n: int = N_PARTICLES) -> list[Permutation]:
    """All of S_n, in lexicographic order of the mapping tuples."""
    return [Permutation(p) for p in itertools.permutations(range(n))]


def build_operator(label: ObservableLabel) -> Operator:
    """Tensor product over particles of (Pauli (x) projector-or-identity)."""
    mats = [f.matrix(label.spin_only) for f in label.factors]
    return Operator(reduce(np.kron, mats))


@cache
def _factor_permutation_matrix(factor_map: tuple[int, ...], dims: tuple[int, ...]) -> np.ndarray:
    # factor i (of size dims[i]) moves to slot factor_map[i]
    n = len(dims)
    out_dims = [0] * n
    for i, j in enumerate(factor_map):
        out_dims[j] = dims[i]
    if out_dims != list(dims):
        raise ValueError("factor permutation must preserve the slot dimensions")
    total = int(np.prod(dims))
    # transpose an index tensor: output axis j carries input axis factor_map^-1(j)
    inverse = [0] * n
    for i, j in enumerate(factor_map):
        inverse[j] = i
    idx = np.arange(total).reshape(dims).transpose(inverse).reshape(-1)
    mat = np.zeros((total, total), dtype=complex)
    mat[np.arange(total), idx] = 1.0
    mat.flags.writeable = False
    return mat


def permutation_operator(perm: Permutation, spin_only: bool = False) -> Operator:
    """Unitary exchanging whole particles (spin and mode travel together)."""
    local = SPIN_DIM if spin_only else PARTICLE_DIM
    return Operator(_factor_permutation_matrix(perm.mapping, (local,) * perm.n))


def spatial_permutation_operator(perm: Permutation) -> Operator:
    """Unitary permuting only the mode factors of a 3-particle state; spins stay put."""
    if perm.n != N_PARTICLES:
        raise ValueError("spatial permutations act on three particles")
    # factors are ordered (s1, m1, s2, m2, s3, m3)
    factor_map = []
    for i in range(N_PARTICLES):
        factor_map.append(2 * i)
        factor_map.append(2 * perm.mapping[i] + 1)
    dims = (SPIN_DIM, MODE_DIM) * N_PARTICLES
    return Operator(_factor_permutation_matrix(tuple(factor_map), dims))
