"""Catalogue of verifications, one per all-versus-nothing construction.

Each ``verify_*`` function recomputes every operator, state and search from
scratch and returns a :class:`VerificationReport`. A report concludes
``CONTRADICTION`` only if every quantum check passes and no noncontextual
assignment exists.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Mapping

import numpy as np

from . import hv
from .hilbert import (
    FactorSpec,
    ObservableLabel,
    Pauli,
    Spatial,
    build_operator,
    parse_label,
)
from .linalg import (
    DEFAULT_TOL,
    NORM_TOL,
    Operator,
    StateVector,
    commutator,
    distance,
    eigen_residual,
    expectation,
)
from .states import SymmetryReport, ghz_spin, psi_prime, psi_tilde, symmetry_report
from .symmetrize import sym

NONCOMMUTING_MIN_NORM = 0.5


class Conclusion(enum.Enum):
    CONTRADICTION = "ContradictionEstablished"
    NO_CONTRADICTION = "NoContradiction"


@dataclass(frozen=True)
class QuantumCheck:
    """One numerical claim.

    ``passed`` is recomputed from ``residual``, ``threshold`` and
    ``comparator`` (``"<"`` for equalities, ``">"`` for claims that something
    is nonzero). ``expected`` is None when there is no single target value.
    """

    description: str
    expected: complex | None
    computed: complex
    residual: float
    threshold: float
    comparator: str = "<"

    @property
    def passed(self) -> bool:
        return passes(self.residual, self.threshold, self.comparator)

    def to_dict(self) -> dict:
        exp = None
        if self.expected is not None:
            e = complex(self.expected)
            exp = e.real if e.imag == 0 else [e.real, e.imag]
        return {
            "description": self.description,
            "expected": exp,
            "computed_re": complex(self.computed).real,
            "computed_im": complex(self.computed).imag,
            "residual": self.residual,
            "comparator": self.comparator,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def passes(residual: float, threshold: float, comparator: str) -> bool:
    if comparator == "<":
        return residual < threshold
    if comparator == ">":
        return residual > threshold
    raise ValueError(f"unknown comparator {comparator!r}")


@dataclass(frozen=True)
class VerificationReport:
    name: str
    title: str
    quantum_checks: tuple[QuantumCheck, ...]
    scenario: hv.Scenario
    hv_result: hv.SearchResult
    expected_conclusion: Conclusion
    symmetry: SymmetryReport | None = None
    contextual_witness: tuple[dict, ...] | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def conclusion(self) -> Conclusion:
        return decide(all(c.passed for c in self.quantum_checks), self.hv_result.count)

    @property
    def as_expected(self) -> bool:
        return self.conclusion is self.expected_conclusion

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "title": self.title,
            "quantum_checks": [c.to_dict() for c in self.quantum_checks],
            "hv": {
                "constraints": [str(c) for c in self.scenario.constraints],
                **self.hv_result.to_dict(),
            },
            "conclusion": self.conclusion.value,
            "expected_conclusion": self.expected_conclusion.value,
        }
        if self.contextual_witness is not None:
            out["contextual_witness"] = [dict(w) for w in self.contextual_witness]
        if self.symmetry is not None:
            out["symmetry"] = self.symmetry.to_dict()
        out["notes"] = list(self.notes)
        return out


def decide(all_checks_pass: bool, hv_count: int) -> Conclusion:
    if all_checks_pass and hv_count == 0:
        return Conclusion.CONTRADICTION
    return Conclusion.NO_CONTRADICTION


# -- check builders ---------------------------------------------------------


def eigen_check(description: str, op: Operator, state: StateVector, value: complex,
                tol: float = DEFAULT_TOL) -> QuantumCheck:
    return QuantumCheck(description, value, expectation(op, state),
                        eigen_residual(op, state, value), tol)


def expectation_check(description: str, op: Operator, state: StateVector, value: complex,
                      tol: float = DEFAULT_TOL) -> QuantumCheck:
    got = expectation(op, state)
    return QuantumCheck(description, value, got, abs(got - value), tol)


def identity_check(description: str, lhs: Operator, rhs: Operator,
                   tol: float = NORM_TOL) -> QuantumCheck:
    d = distance(lhs, rhs)
    return QuantumCheck(description, 0.0, d, d, tol)


def scalar_identity_check(description: str, op: Operator, value: int,
                          tol: float = NORM_TOL) -> QuantumCheck:
    """``op == value * I``; ``computed`` is the normalized trace."""
    tr = complex(np.trace(op.matrix)) / op.dim
    return QuantumCheck(description, value, tr,
                        distance(op, Operator.identity(op.dim) * value), tol)


def commute_check(description: str, a: Operator, b: Operator,
                  tol: float = NORM_TOL) -> QuantumCheck:
    n = commutator(a, b).norm()
    return QuantumCheck(description, 0.0, n, n, tol)


def noncommute_check(description: str, a: Operator, b: Operator,
                     min_norm: float = NONCOMMUTING_MIN_NORM) -> QuantumCheck:
    n = commutator(a, b).norm()
    return QuantumCheck(description, None, n, n, min_norm, ">")


def _product(ops: list[Operator]) -> Operator:
    return reduce(lambda a, b: a @ b, ops)


def constraint_operator(constraint: hv.Constraint, binding: Mapping[str, Operator]) -> Operator:
    """Quantum counterpart of a constraint: sum over terms of operator products."""
    terms = [_product([binding[s] for s in term]) for term in constraint.terms]
    return reduce(lambda a, b: a + b, terms)


def _pairs(items: list) -> list[tuple]:
    return [(items[i], items[j]) for i in range(len(items)) for j in range(i + 1, len(items))]


# -- bindings ---------------------------------------------------------------


def _single(pauli: Pauli, particle: int, n: int = 3, spatial: Spatial = Spatial.ANY,
            frame: Spatial | None = None) -> ObservableLabel:
    """``pauli`` on one particle, identity elsewhere.

    ``frame`` puts the same spatial projector on every other particle, for the
    case where all particles share one location.
    """
    factors = []
    for k in range(n):
        if k == particle:
            factors.append(FactorSpec(pauli, spatial))
        else:
            factors.append(FactorSpec(Pauli.I, frame or Spatial.ANY))
    spin_only = spatial is Spatial.ANY and frame is None
    return ObservableLabel(tuple(factors), spin_only)


def ghz_binding() -> dict[str, Operator]:
    """X1..Y3 as single-qubit Paulis on the 8-dim spin space."""
    return {
        f"{p.value}{k + 1}": build_operator(_single(p, k))
        for p in (Pauli.X, Pauli.Y)
        for k in range(3)
    }


def ghz_here_binding() -> dict[str, Operator]:
    """X1..Y3 on the 216-dim space with every particle projected onto Here."""
    h = Spatial.HERE
    return {
        f"{p.value}{k + 1}": build_operator(_single(p, k, spatial=h, frame=h))
        for p in (Pauli.X, Pauli.Y)
        for k in range(3)
    }


def positional_binding() -> dict[str, Operator]:
    """``Xh`` is X on whichever particle is Here: sum over particles of X (x) Pi_h."""
    out = {}
    for p in (Pauli.X, Pauli.Y):
        for tag in (Spatial.HERE, Spatial.THERE, Spatial.YONDER):
            ops = [build_operator(_single(p, k, spatial=tag)) for k in range(3)]
            out[f"{p.value}{tag.value}"] = reduce(lambda a, b: a + b, ops)
    return out


def mermin_binding() -> dict[str, Operator]:
    return {s: build_operator(parse_label(s)) for row in hv.MERMIN_SQUARE for s in row}


def _constraint_eigen_checks(scenario: hv.Scenario, binding: Mapping[str, Operator],
                             state: StateVector, state_name: str) -> list[QuantumCheck]:
    return [
        eigen_check(f"{c} as eigenvalue on {state_name}", constraint_operator(c, binding),
                    state, c.target)
        for c in scenario.constraints
    ]


def _context_commute_checks(scenario: hv.Scenario,
                            binding: Mapping[str, Operator]) -> list[QuantumCheck]:
    checks = []
    for c in scenario.constraints:
        for a, b in _pairs(list(c.symbols)):
            checks.append(commute_check(f"[{a}, {b}] = 0 within context {c}", binding[a], binding[b]))
    return checks


# -- catalogue --------------------------------------------------------------

GHZ_LABELS = ("XYY", "YXY", "YYX", "XXX")
GHZ_EIGENVALUES = (1, 1, 1, -1)
POSITIONAL_LABELS = ("X_h Y_t Y_y", "Y_h X_t Y_y", "Y_h Y_t X_y", "X_h X_t X_y")
EXCHANGE_NOTE = (
    "exchange symmetry is reported as computed; a symmetric GHZ spin part times an "
    "antisymmetric spatial part is antisymmetric overall, whatever the particles are called"
)


def verify_ghz_distinguishable() -> VerificationReport:
    state = ghz_spin()
    ops = [build_operator(parse_label(s)) for s in GHZ_LABELS]
    checks = [
        eigen_check(f"{s} on GHZ -> {v:+d}", op, state, v)
        for s, op, v in zip(GHZ_LABELS, ops, GHZ_EIGENVALUES)
    ]
    checks += [
        commute_check(f"[{GHZ_LABELS[i]}, {GHZ_LABELS[j]}] = 0", ops[i], ops[j])
        for i, j in _pairs(list(range(4)))
    ]
    scenario = hv.ghz_scenario()
    checks += _constraint_eigen_checks(scenario, ghz_binding(), state, "GHZ")
    return VerificationReport(
        name="ghz-distinguishable",
        title="GHZ contradiction for three distinguishable qubits",
        quantum_checks=tuple(checks),
        scenario=scenario,
        hv_result=hv.search(scenario),
        expected_conclusion=Conclusion.CONTRADICTION,
        contextual_witness=tuple(hv.contextual_witness(scenario) or ()),
        notes=("a context-dependent assignment exists (contextual_witness) even though "
               "no noncontextual one does",),
    )


def verify_ghz_indistinguishable_contextuality() -> VerificationReport:
    state = psi_prime()
    summed = sym("X_h Y_h Y_h")
    xxx = build_operator(parse_label("X_h X_h X_h"))
    checks = [
        eigen_check("sym(XYY) with Pi_h on every particle on psi' -> +3", summed, state, 3),
        eigen_check("XXX with Pi_h on every particle on psi' -> -1", xxx, state, -1),
    ]
    checks += [
        eigen_check(f"summand {s} (Pi_h on every particle) on psi' -> +1",
                    build_operator(parse_label(" ".join(f"{c}_h" for c in s))), state, 1)
        for s in GHZ_LABELS[:3]
    ]
    checks.append(commute_check("[sym(XYY), XXX] = 0 (Pi_h frame)", summed, xxx))
    scenario = hv.symmetrized_ghz_scenario()
    binding = ghz_here_binding()
    checks += _constraint_eigen_checks(scenario, binding, state, "psi'")
    checks.append(identity_check(
        "sum constraint operator equals sym(XYY) built by orbit sum",
        constraint_operator(scenario.constraints[0], binding), summed))
    return VerificationReport(
        name="ghz-contextuality",
        title="Symmetrized GHZ contextuality for three identical particles (all Here)",
        quantum_checks=tuple(checks),
        scenario=scenario,
        hv_result=hv.search(scenario),
        expected_conclusion=Conclusion.CONTRADICTION,
        symmetry=symmetry_report(state),
        notes=("the Here projector is applied to the whole symmetrized sum; it commutes "
               "with the spin factors, so applying it per summand gives the same operator",
               EXCHANGE_NOTE),
    )


def verify_ghz_nonlocality() -> VerificationReport:
    state = psi_tilde()
    ops = [sym(s) for s in POSITIONAL_LABELS]
    checks = [
        eigen_check(f"sym({s}) on psi~ -> {v:+d}", op, state, v)
        for s, op, v in zip(POSITIONAL_LABELS, ops, GHZ_EIGENVALUES)
    ]
    occupancy = sym("I_h I_t I_y")
    checks.append(expectation_check("<psi~| sym(Pi+_h Pi+_t Pi+_y) |psi~> = 1", occupancy, state, 1))

    commute = [commute_check(f"[sym({POSITIONAL_LABELS[i]}), sym({POSITIONAL_LABELS[j]})] = 0",
                             ops[i], ops[j])
               for i, j in _pairs(list(range(4)))]
    notes = []
    if all(c.passed for c in commute):
        notes.append("the four symmetrized operators commute on the full 216-dim space")
    else:
        q = occupancy
        commute = [commute_check(f"Q [sym({POSITIONAL_LABELS[i]}), sym({POSITIONAL_LABELS[j]})] Q = 0, "
                                 "Q = one particle per region",
                                 q @ ops[i] @ q, q @ ops[j] @ q)
                   for i, j in _pairs(list(range(4)))]
        notes.append("the four symmetrized operators commute only on the one-particle-per-region subspace")
    checks += commute

    scenario = hv.positional_ghz_scenario()
    binding = positional_binding()
    checks += _constraint_eigen_checks(scenario, binding, state, "psi~")
    checks += [
        identity_check(f"product of positional spins for {s} equals sym({s})",
                       constraint_operator(c, binding), op)
        for s, c, op in zip(POSITIONAL_LABELS, scenario.constraints, ops)
    ]
    notes.append(EXCHANGE_NOTE)
    return VerificationReport(
        name="ghz-nonlocality",
        title="Symmetrized GHZ nonlocality for three identical particles in separate regions",
        quantum_checks=tuple(checks),
        scenario=scenario,
        hv_result=hv.search(scenario),
        expected_conclusion=Conclusion.CONTRADICTION,
        symmetry=symmetry_report(state),
        notes=tuple(notes),
    )


def verify_mermin_square() -> VerificationReport:
    scenario = hv.mermin_square_scenario()
    binding = mermin_binding()
    checks = []
    for c in scenario.constraints:
        checks.append(scalar_identity_check(f"product {' '.join(c.terms[0])} = {c.target:+d} I",
                                            constraint_operator(c, binding), c.target))
    checks += _context_commute_checks(scenario, binding)
    return VerificationReport(
        name="mermin-square",
        title="Mermin square on two distinguishable qubits",
        quantum_checks=tuple(checks),
        scenario=scenario,
        hv_result=hv.search(scenario),
        expected_conclusion=Conclusion.CONTRADICTION,
    )


RECTANGLE_COMMUTATORS = (
    # (a, b, coefficient, c) meaning [sym(a), sym(b)] = coefficient * sym(c)
    ("IX", "IZ", -2j, "IY"),
    ("IX", "XZ", -2, "XY"),
    ("IZ", "XZ", 2, "YZ"),
)


def rectangle_commutator_coefficient(a: str, b: str, c: str) -> complex:
    """Best-fit ``k`` in ``[sym(a), sym(b)] = k sym(c)`` (least squares)."""
    lhs = commutator(sym(a), sym(b)).matrix.ravel()
    basis = sym(c).matrix.ravel()
    return complex(np.vdot(basis, lhs) / np.vdot(basis, basis))


def verify_symmetrized_mermin_rectangle() -> VerificationReport:
    checks = [
        identity_check(f"sym({s}) {p} = sym({s})", sym(s) @ build_operator(parse_label(p)), sym(s))
        for s, p in (("IX", "XX"), ("IZ", "ZZ"), ("XZ", "YY"))
    ]
    notes = []
    for a, b, k, c in RECTANGLE_COMMUTATORS:
        chk = identity_check(f"[sym({a}), sym({b})] = {_fmt_coeff(k)} sym({c}) (as claimed)",
                             commutator(sym(a), sym(b)), sym(c) * k)
        checks.append(chk)
        if not chk.passed:
            fit = rectangle_commutator_coefficient(a, b, c)
            checks.append(identity_check(
                f"[sym({a}), sym({b})] = {_fmt_coeff(fit)} sym({c}) (corrected coefficient)",
                commutator(sym(a), sym(b)), sym(c) * fit))
            notes.append(f"[sym({a}), sym({b})]: claimed coefficient {_fmt_coeff(k)} fails; "
                         f"the commutator of two Hermitian operators is anti-Hermitian and the "
                         f"coefficient is {_fmt_coeff(fit)}")
    first_column = ("IX", "IZ", "XZ")
    checks += [noncommute_check(f"[sym({a}), sym({b})] != 0", sym(a), sym(b))
               for a, b in _pairs(list(first_column))]
    scenario = hv.mermin_rectangle_scenario()
    binding = mermin_binding()
    for c in scenario.constraints:
        checks.append(scalar_identity_check(f"row product {' '.join(c.terms[0])} = +1 I",
                                            constraint_operator(c, binding), c.target))
    notes.append("no symbol is shared between contexts, so a noncontextual assignment exists")
    return VerificationReport(
        name="mermin-rectangle",
        title="Symmetrized Mermin rectangle (negative result)",
        quantum_checks=tuple(checks),
        scenario=scenario,
        hv_result=hv.search(scenario),
        expected_conclusion=Conclusion.NO_CONTRADICTION,
        notes=tuple(notes),
    )


def _fmt_coeff(k: complex) -> str:
    k = complex(k)
    re_, im = round(k.real, 12) + 0.0, round(k.imag, 12) + 0.0
    if im == 0:
        return f"{re_:g}"
    if re_ == 0:
        return f"{im:g}i"
    return f"({re_:g}{im:+g}i)"


CATALOG: dict[str, Callable[[], VerificationReport]] = {
    "ghz-distinguishable": verify_ghz_distinguishable,
    "ghz-contextuality": verify_ghz_indistinguishable_contextuality,
    "ghz-nonlocality": verify_ghz_nonlocality,
    "mermin-square": verify_mermin_square,
    "mermin-rectangle": verify_symmetrized_mermin_rectangle,
}


def run_catalog(names: list[str] | None = None) -> list[VerificationReport]:
    names = list(CATALOG) if names is None else names
    unknown = [n for n in names if n not in CATALOG]
    if unknown:
        raise KeyError(unknown[0])
    return [CATALOG[n]() for n in names]
