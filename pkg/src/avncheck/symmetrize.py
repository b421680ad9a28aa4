"""Symmetrization of product observables over particle exchange.

The symmetrized operator is the plain sum of the *distinct* labels in the
orbit of the source label under permutations of the particle positions. No
division by the orbit size: ``XYY`` symmetrizes to ``XYY + YXY + YYX``, whose
eigenvalue on the GHZ state is +3.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .hilbert import ObservableLabel, all_permutations, build_operator, parse_label
from .linalg import Operator


def orbit(label: ObservableLabel) -> tuple[ObservableLabel, ...]:
    """Distinct permuted copies of ``label``, in order of first appearance."""
    seen: dict[ObservableLabel, None] = {}
    for perm in all_permutations(label.n_particles):
        seen.setdefault(label.permuted(perm), None)
    return tuple(seen)


def orbit_size(label: ObservableLabel) -> int:
    return len(orbit(label))


@dataclass(frozen=True)
class SymmetrizedOperator:
    source_label: ObservableLabel
    terms: tuple[ObservableLabel, ...]

    @cached_property
    def matrix(self) -> Operator:
        total = build_operator(self.terms[0])
        for term in self.terms[1:]:
            total = total + build_operator(term)
        return total

    @property
    def averaged(self) -> Operator:
        """Orbit average instead of orbit sum."""
        return self.matrix * (1.0 / len(self.terms))

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms)


def symmetrize(label: ObservableLabel | str) -> SymmetrizedOperator:
    if isinstance(label, str):
        label = parse_label(label)
    return SymmetrizedOperator(label, orbit(label))


def sym(label: ObservableLabel | str) -> Operator:
    """Shorthand for ``symmetrize(label).matrix``."""
    return symmetrize(label).matrix
