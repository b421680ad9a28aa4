"""The three-particle states and an exchange-symmetry audit."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    MODE_DIM,
    N_PARTICLES,
    PARTICLE_DIM,
    SPIN_DIM,
    Permutation,
    Spatial,
    MODE_INDEX,
    all_permutations,
    permutation_operator,
    spatial_permutation_operator,
)
from .linalg import DEFAULT_TOL, StateVector, apply

UP, DOWN = 0, 1
H, T, Y = (MODE_INDEX[s] for s in (Spatial.HERE, Spatial.THERE, Spatial.YONDER))

# (mode order, sign) for the six terms of the Slater determinant, as written out
SLATER_TERMS: tuple[tuple[tuple[int, int, int], int], ...] = (
    ((H, T, Y), +1),
    ((H, Y, T), -1),
    ((T, H, Y), -1),
    ((T, Y, H), +1),
    ((Y, T, H), -1),
    ((Y, H, T), +1),
)


def spin_basis(*spins: int) -> StateVector:
    """Product spin state, e.g. ``spin_basis(UP, DOWN, UP)``."""
    idx = 0
    for s in spins:
        idx = idx * SPIN_DIM + s
    return StateVector.basis(SPIN_DIM ** len(spins), idx)


def mode_basis(*modes: int) -> StateVector:
    idx = 0
    for m in modes:
        idx = idx * MODE_DIM + m
    return StateVector.basis(MODE_DIM ** len(modes), idx)


def combine(spin: StateVector, spatial: StateVector) -> StateVector:
    """Form ``spin (x) spatial`` and reorder into the per-particle basis.

    ``spin`` lives on (s1, s2, s3) and ``spatial`` on (m1, m2, m3); the result
    is indexed (s1, m1, s2, m2, s3, m3).
    """
    if spin.dim != SPIN_DIM**N_PARTICLES or spatial.dim != MODE_DIM**N_PARTICLES:
        raise ValueError("expected a 3-particle spin state and a 3-particle mode state")
    t = np.multiply.outer(
        spin.amplitudes.reshape((SPIN_DIM,) * N_PARTICLES),
        spatial.amplitudes.reshape((MODE_DIM,) * N_PARTICLES),
    )
    t = t.transpose(0, 3, 1, 4, 2, 5)
    return StateVector(t.reshape(-1))


def ghz_spin() -> StateVector:
    """(|up up up> - |down down down>) / sqrt(2), dimension 8."""
    a = spin_basis(UP, UP, UP).amplitudes - spin_basis(DOWN, DOWN, DOWN).amplitudes
    return StateVector.normalized(a)


def psi_prime() -> StateVector:
    """GHZ spins with every particle in the Here mode."""
    return combine(ghz_spin(), mode_basis(H, H, H))


def slater_spatial() -> StateVector:
    """Signed sum over spatial permutations of |h, t, y>, normalized."""
    ref = combine(spin_basis(UP, UP, UP), mode_basis(H, T, Y))
    acc = np.zeros(ref.dim, dtype=complex)
    for perm in all_permutations():
        acc += perm.parity * apply(spatial_permutation_operator(perm), ref)
    # strip the |up up up> spin factor back off
    t = acc.reshape((SPIN_DIM, MODE_DIM) * N_PARTICLES)[UP, :, UP, :, UP, :]
    return StateVector.normalized(t.reshape(-1))


def slater_spatial_explicit() -> StateVector:
    """The same determinant from its six written-out terms."""
    acc = np.zeros(MODE_DIM**N_PARTICLES, dtype=complex)
    for modes, sign in SLATER_TERMS:
        acc += sign * mode_basis(*modes).amplitudes
    return StateVector(acc / math.sqrt(6))


def psi_tilde() -> StateVector:
    """GHZ spins times the spatial Slater determinant over Here/There/Yonder."""
    return combine(ghz_spin(), slater_spatial())


def psi_tilde_explicit() -> StateVector:
    return combine(ghz_spin(), slater_spatial_explicit())


@dataclass(frozen=True)
class PermutationVerdict:
    permutation: Permutation
    parity: int
    residual_plus: float
    residual_minus: float
    tol: float

    @property
    def eigenvalue(self) -> int | None:
        """+1 or -1 if ``v`` is an eigenvector of the exchange, else None."""
        plus = self.residual_plus < self.tol
        minus = self.residual_minus < self.tol
        if plus and not minus:
            return 1
        if minus and not plus:
            return -1
        return None

    @property
    def residual(self) -> float:
        return min(self.residual_plus, self.residual_minus)


@dataclass(frozen=True)
class SymmetryReport:
    """Per-permutation exchange behaviour of a state, with residual norms.

    ``classification`` is ``"symmetric"`` when every exchange has eigenvalue +1,
    ``"parity-signed"`` when every exchange has eigenvalue equal to its parity
    (i.e. the state is antisymmetric), and ``"neither"`` otherwise.
    """

    verdicts: tuple[PermutationVerdict, ...]

    @property
    def classification(self) -> str:
        eigs = [v.eigenvalue for v in self.verdicts]
        if all(e == 1 for e in eigs):
            return "symmetric"
        if all(e == v.parity for e, v in zip(eigs, self.verdicts)):
            return "parity-signed"
        return "neither"

    @property
    def definitive(self) -> bool:
        return all(v.eigenvalue is not None for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "permutations": [
                {
                    "mapping": list(v.permutation.mapping),
                    "parity": v.parity,
                    "eigenvalue": v.eigenvalue,
                    "residual_plus": v.residual_plus,
                    "residual_minus": v.residual_minus,
                }
                for v in self.verdicts
            ],
        }


def symmetry_report(v: StateVector, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Apply all six whole-particle exchanges to ``v`` and classify it."""
    if v.dim == PARTICLE_DIM**N_PARTICLES:
        spin_only = False
    elif v.dim == SPIN_DIM**N_PARTICLES:
        spin_only = True
    else:
        raise ValueError(f"expected a 3-particle state of dimension 216 or 8, got {v.dim}")
    verdicts = []
    for perm in all_permutations():
        pv = apply(permutation_operator(perm, spin_only=spin_only), v)
        verdicts.append(
            PermutationVerdict(
                permutation=perm,
                parity=perm.parity,
                residual_plus=float(np.linalg.norm(pv - v.amplitudes)),
                residual_minus=float(np.linalg.norm(pv + v.amplitudes)),
                tol=tol,
            )
        )
    return SymmetryReport(tuple(verdicts))
