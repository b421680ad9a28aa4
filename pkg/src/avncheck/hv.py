"""Exhaustive search for noncontextual +/-1 value assignments.

A :class:`Scenario` names abstract observables and lists constraints on their
values. :func:`search` enumerates all ``2**n`` assignments and counts the ones
meeting every constraint; a zero count is an all-versus-nothing contradiction.

Assignments are enumerated in lexicographic order over the declared symbol
order with -1 before +1, so assignment number ``k`` gives the first symbol the
value of the most significant bit of ``k``. All arithmetic is in integers.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_OBSERVABLES = 20
DEFAULT_MAX_WITNESSES = 32
SYMBOL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_CHUNK_BITS = 16

Assignment = dict[str, int]


class ScenarioError(ValueError):
    """An invalid scenario. ``code`` identifies the failure kind."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class ResourceLimitError(ScenarioError):
    """The scenario has more observables than the exhaustive search accepts."""

    def __init__(self, n: int, cap: int):
        super().__init__("observable-cap", f"{n} observables exceed the search cap of {cap}")
        self.n = n
        self.cap = cap


class ConstraintKind(enum.Enum):
    PRODUCT = "product"
    SUM = "sum"


@dataclass(frozen=True)
class Constraint:
    """``product`` has one term; ``sum`` adds the products of each term."""

    kind: ConstraintKind
    terms: tuple[tuple[str, ...], ...]
    target: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(tuple(t) for t in self.terms))
        if not self.terms or any(len(t) == 0 for t in self.terms):
            raise ScenarioError("empty-term", "constraint terms must be non-empty")
        if self.kind is ConstraintKind.PRODUCT:
            if len(self.terms) != 1:
                raise ScenarioError("malformed", "a product constraint has exactly one term")
            if self.target not in (-1, 1):
                raise ScenarioError(
                    "target-range", f"product target must be +1 or -1, got {self.target}"
                )
        else:
            k = len(self.terms)
            if abs(self.target) > k or (self.target - k) % 2:
                raise ScenarioError(
                    "target-range",
                    f"sum of {k} products cannot equal {self.target} "
                    f"(needs |target| <= {k} with the parity of {k})",
                )

    @classmethod
    def product(cls, symbols: Iterable[str], target: int) -> Constraint:
        return cls(ConstraintKind.PRODUCT, (tuple(symbols),), target)

    @classmethod
    def sum_of_products(cls, terms: Iterable[Iterable[str]], target: int) -> Constraint:
        return cls(ConstraintKind.SUM, tuple(tuple(t) for t in terms), target)

    @property
    def symbols(self) -> tuple[str, ...]:
        """Distinct symbols in order of first use."""
        return tuple(dict.fromkeys(s for term in self.terms for s in term))

    def holds(self, values: Mapping[str, int]) -> bool:
        total = 0
        for term in self.terms:
            p = 1
            for s in term:
                p *= values[s]
            total += p
        return total == self.target

    def __str__(self) -> str:
        sign = f"{self.target:+d}"
        if self.kind is ConstraintKind.PRODUCT:
            return f"{' '.join(self.terms[0])} = {sign}"
        return " + ".join(" ".join(t) for t in self.terms) + f" = {sign}"


@dataclass(frozen=True)
class Scenario:
    observables: tuple[str, ...]
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "observables", tuple(self.observables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for s in self.observables:
            if not SYMBOL_RE.match(s):
                raise ScenarioError("bad-symbol", f"invalid symbol name {s!r}")
        dupes = [s for s, c in _counts(self.observables).items() if c > 1]
        if dupes:
            raise ScenarioError("duplicate-symbol", f"duplicate symbol {dupes[0]!r}")
        if len(self.observables) > MAX_OBSERVABLES:
            raise ResourceLimitError(len(self.observables), MAX_OBSERVABLES)
        declared = set(self.observables)
        for c in self.constraints:
            for s in c.symbols:
                if s not in declared:
                    raise ScenarioError("unknown-symbol", f"constraint uses undeclared symbol {s!r}")

    def without(self, index: int) -> Scenario:
        """The same scenario with constraint ``index`` removed."""
        cs = list(self.constraints)
        del cs[index]
        return Scenario(self.observables, tuple(cs))


def _counts(items: Sequence[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    for s in items:
        out[s] = out.get(s, 0) + 1
    return out


@dataclass(frozen=True)
class SearchResult:
    count: int
    total: int
    witnesses: tuple[Assignment, ...] = field(default=())

    @property
    def satisfiable(self) -> bool:
        return self.count > 0

    def to_dict(self) -> dict:
        return {
            "satisfiable": self.satisfiable,
            "count": self.count,
            "total": self.total,
            "witnesses": [dict(w) for w in self.witnesses],
        }


def _value_block(n: int, start: int, stop: int) -> np.ndarray:
    """+/-1 values of assignments ``start..stop-1``; column j is symbol j."""
    k = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (k[:, None] >> shifts[None, :]) & 1
    return (2 * bits - 1).astype(np.int8)


def _satisfied(constraint: Constraint, values: np.ndarray, index: Mapping[str, int]) -> np.ndarray:
    total = np.zeros(values.shape[0], dtype=np.int64)
    for term in constraint.terms:
        p = np.ones(values.shape[0], dtype=np.int64)
        for s in term:
            p *= values[:, index[s]]
        total += p
    return total == constraint.target


def search(
    scenario: Scenario,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
    max_observables: int = MAX_OBSERVABLES,
) -> SearchResult:
    """Count every assignment satisfying all constraints.

    The count is always exact; at most ``max_witnesses`` satisfying
    assignments are kept, in enumeration order.
    """
    n = len(scenario.observables)
    if n > max_observables:
        raise ResourceLimitError(n, max_observables)
    index = {s: j for j, s in enumerate(scenario.observables)}
    total = 1 << n
    count = 0
    witnesses: list[Assignment] = []
    chunk = 1 << _CHUNK_BITS
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        values = _value_block(n, start, stop)
        ok = np.ones(stop - start, dtype=bool)
        for c in scenario.constraints:
            ok &= _satisfied(c, values, index)
        hits = np.flatnonzero(ok)
        count += int(hits.size)
        for h in hits[: max(0, max_witnesses - len(witnesses))]:
            witnesses.append({s: int(values[h, j]) for j, s in enumerate(scenario.observables)})
    return SearchResult(count=count, total=total, witnesses=tuple(witnesses))


def local_solutions(constraint: Constraint) -> list[Assignment]:
    """All valuations of one constraint's own symbols that satisfy it.

    Ordered by the number of -1 values, then lexicographically (-1 < +1).
    """
    syms = constraint.symbols
    sols = []
    for vals in itertools.product((-1, 1), repeat=len(syms)):
        v = dict(zip(syms, vals))
        if constraint.holds(v):
            sols.append(v)
    sols.sort(key=lambda v: (sum(1 for x in v.values() if x < 0), tuple(v.values())))
    return sols


def contextual_solutions(scenario: Scenario) -> list[list[Assignment]]:
    """Per constraint, every local valuation satisfying it in isolation."""
    return [local_solutions(c) for c in scenario.constraints]


def contextual_witness(scenario: Scenario) -> list[Assignment] | None:
    """A context-dependent assignment: one valuation per constraint.

    Each constraint (context) may value a shared symbol differently. Returns
    None when some constraint cannot be met even on its own. Within each
    context the valuation with the fewest -1 values is chosen.
    """
    per_context = contextual_solutions(scenario)
    if any(not sols for sols in per_context):
        return None
    return [sols[0] for sols in per_context]


def validate_contextual(scenario: Scenario, witness: Sequence[Mapping[str, int]]) -> bool:
    """Check a per-context valuation against each constraint independently."""
    if len(witness) != len(scenario.constraints):
        return False
    for c, vals in zip(scenario.constraints, witness):
        if any(vals.get(s) not in (-1, 1) for s in c.symbols):
            return False
        if not c.holds(vals):
            return False
    return True


def is_noncontextual(witness: Sequence[Mapping[str, int]]) -> bool:
    """True if every symbol gets the same value in every context that uses it."""
    seen: dict[str, int] = {}
    for vals in witness:
        for s, v in vals.items():
            if seen.setdefault(s, v) != v:
                return False
    return True


# Scenarios for the catalogued arguments. Symbols only; quantum bindings live
# in :mod:`avncheck.scenarios`.

GHZ_ROWS = (("X1", "Y2", "Y3"), ("Y1", "X2", "Y3"), ("Y1", "Y2", "X3"))
GHZ_LAST = ("X1", "X2", "X3")
GHZ_SYMBOLS = ("X1", "X2", "X3", "Y1", "Y2", "Y3")


def ghz_scenario(last_target: int = -1) -> Scenario:
    """Three mixed rows with product +1 and XXX with product ``last_target``."""
    cs = [Constraint.product(row, 1) for row in GHZ_ROWS]
    cs.append(Constraint.product(GHZ_LAST, last_target))
    return Scenario(GHZ_SYMBOLS, tuple(cs))


def symmetrized_ghz_scenario() -> Scenario:
    """The three mixed rows collapse into one sum constraint worth +3."""
    return Scenario(
        GHZ_SYMBOLS,
        (Constraint.sum_of_products(GHZ_ROWS, 3), Constraint.product(GHZ_LAST, -1)),
    )


POSITIONAL_SYMBOLS = ("Xh", "Xt", "Xy", "Yh", "Yt", "Yy")


def positional_ghz_scenario() -> Scenario:
    """GHZ rows over spins of the particles found here, there and yonder."""
    rows = (("Xh", "Yt", "Yy"), ("Yh", "Xt", "Yy"), ("Yh", "Yt", "Xy"))
    cs = [Constraint.product(r, 1) for r in rows]
    cs.append(Constraint.product(("Xh", "Xt", "Xy"), -1))
    return Scenario(POSITIONAL_SYMBOLS, tuple(cs))


MERMIN_SQUARE = (
    ("IX", "XI", "XX"),
    ("ZI", "IZ", "ZZ"),
    ("ZX", "XZ", "YY"),
)


def mermin_square_scenario() -> Scenario:
    """Rows and the first two columns multiply to +1, the last column to -1."""
    symbols = tuple(s for row in MERMIN_SQUARE for s in row)
    cs = [Constraint.product(row, 1) for row in MERMIN_SQUARE]
    for j in range(3):
        col = tuple(row[j] for row in MERMIN_SQUARE)
        cs.append(Constraint.product(col, -1 if j == 2 else 1))
    return Scenario(symbols, tuple(cs))


def mermin_rectangle_scenario() -> Scenario:
    """Only the rows survive as contexts once the first two columns merge.

    Each row keeps its product rule over the two summands of the symmetrized
    entry and the remaining two-particle entry; no symbol is shared between
    rows.
    """
    symbols = tuple(s for row in MERMIN_SQUARE for s in row)
    return Scenario(symbols, tuple(Constraint.product(row, 1) for row in MERMIN_SQUARE))
