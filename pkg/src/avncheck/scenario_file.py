"""Reader and writer for the plain-text scenario format.

Example::

    # GHZ table
    observables: X1 X2 X3 Y1 Y2 Y3
    constraint: product X1 Y2 Y3 = +1
    constraint: sum ( X1 Y2 Y3 ; Y1 X2 Y3 ; Y1 Y2 X3 ) = 3

``observables:`` lines may repeat and accumulate. Symbols may be declared
after the constraints that use them. Errors carry 1-based line and column.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .hv import (
    MAX_OBSERVABLES,
    Constraint,
    ConstraintKind,
    Scenario,
    ScenarioError,
)

E_SYNTAX = "E001"
E_UNKNOWN_SYMBOL = "E002"
E_MALFORMED_TARGET = "E003"
E_TARGET_RANGE = "E004"
E_OBSERVABLE_CAP = "E005"
E_DUPLICATE_SYMBOL = "E006"
E_BAD_SYMBOL = "E007"

_TOKEN = re.compile(
    r"(?P<sym>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<int>[+-]?\d+)(?![^\s();=])"
    r"|(?P<punct>[();=])"
    r"|(?P<bad>[^\s();=]+)"
)
_HEADER = re.compile(r"\s*(observables|constraint)\s*:", re.IGNORECASE)


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    code: str
    message: str

    def format(self, filename: str = "<scenario>") -> str:
        return f"{filename}:{self.line}:{self.column}: error[{self.code}]: {self.message}"


class ScenarioParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.format() for d in diagnostics))

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, offset: int) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        assert m is not None  # the 'bad' alternative matches any non-space run
        toks.append(_Tok(m.lastgroup, m.group(), offset + pos + 1))
        pos = m.end()
    return toks


class _LineParser:
    def __init__(self, toks: list[_Tok], lineno: int, end_col: int):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = end_col

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def col(self) -> int:
        t = self.peek()
        return t.col if t else self.end_col

    def error(self, code: str, message: str, col: int | None = None) -> Diagnostic:
        return Diagnostic(self.lineno, self.col() if col is None else col, code, message)

    def expect_punct(self, ch: str) -> Diagnostic | None:
        t = self.peek()
        if t is None or t.kind != "punct" or t.text != ch:
            found = repr(t.text) if t else "end of line"
            return self.error(E_SYNTAX, f"expected {ch!r}, found {found}")
        self.i += 1
        return None

    def symbols(self) -> list[_Tok] | Diagnostic:
        out = []
        while (t := self.peek()) is not None and t.kind in ("sym", "bad", "int"):
            if t.kind != "sym":
                return self.error(E_BAD_SYMBOL, f"invalid symbol name {t.text!r}")
            out.append(t)
            self.i += 1
        if not out:
            return self.error(E_SYNTAX, "expected at least one symbol")
        return out


def _constraint(p: _LineParser) -> tuple[ConstraintKind, list[list[_Tok]], int, int] | Diagnostic:
    head = p.peek()
    if head is None or head.kind != "sym" or head.text.lower() not in ("product", "sum"):
        return p.error(E_SYNTAX, "expected 'product' or 'sum'")
    p.i += 1
    terms: list[list[_Tok]] = []
    if head.text.lower() == "product":
        kind = ConstraintKind.PRODUCT
        syms = p.symbols()
        if isinstance(syms, Diagnostic):
            return syms
        terms.append(syms)
    else:
        kind = ConstraintKind.SUM
        if (err := p.expect_punct("(")) is not None:
            return err
        while True:
            syms = p.symbols()
            if isinstance(syms, Diagnostic):
                return syms
            terms.append(syms)
            t = p.peek()
            if t is not None and t.text == ";":
                p.i += 1
                continue
            if (err := p.expect_punct(")")) is not None:
                return err
            break
    if (err := p.expect_punct("=")) is not None:
        return err
    t = p.peek()
    if t is None:
        return p.error(E_MALFORMED_TARGET, "missing target value")
    if t.kind != "int":
        return p.error(E_MALFORMED_TARGET, f"target must be an integer, got {t.text!r}")
    p.i += 1
    if p.peek() is not None:
        return p.error(E_SYNTAX, f"unexpected {p.peek().text!r} after target")
    return kind, terms, int(t.text), t.col


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        yield n, _strip_comment(raw).rstrip()


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text, collecting every diagnostic before failing."""
    diags: list[Diagnostic] = []
    declared: dict[str, _Tok] = {}
    order: list[str] = []
    parsed: list[tuple[int, ConstraintKind, list[list[_Tok]], int, int]] = []

    for lineno, line in _lines(text):
        if not line.strip():
            continue
        m = _HEADER.match(line)
        if m is None:
            first = len(line) - len(line.lstrip()) + 1
            diags.append(Diagnostic(lineno, first, E_SYNTAX,
                                    "expected 'observables:' or 'constraint:'"))
            continue
        toks = _tokenize(line[m.end():], m.end())
        p = _LineParser(toks, lineno, len(line) + 1)
        if m.group(1).lower() == "observables":
            for t in toks:
                if t.kind != "sym":
                    diags.append(p.error(E_BAD_SYMBOL, f"invalid symbol name {t.text!r}", t.col))
                elif t.text in declared:
                    first = declared[t.text]
                    diags.append(p.error(E_DUPLICATE_SYMBOL,
                                         f"duplicate symbol {t.text!r} (first declared at column {first.col})",
                                         t.col))
                else:
                    declared[t.text] = t
                    order.append(t.text)
                    if len(order) == MAX_OBSERVABLES + 1:
                        diags.append(p.error(E_OBSERVABLE_CAP,
                                             f"more than {MAX_OBSERVABLES} observables declared",
                                             t.col))
            continue
        result = _constraint(p)
        if isinstance(result, Diagnostic):
            diags.append(result)
        else:
            parsed.append((lineno, *result))

    constraints = []
    for lineno, kind, terms, target, target_col in parsed:
        ok = True
        for term in terms:
            for t in term:
                if t.text not in declared:
                    diags.append(Diagnostic(lineno, t.col, E_UNKNOWN_SYMBOL,
                                            f"unknown symbol {t.text!r}"))
                    ok = False
        names = [[t.text for t in term] for term in terms]
        try:
            c = Constraint(kind, tuple(tuple(n) for n in names), target)
        except ScenarioError as exc:
            code = E_TARGET_RANGE if exc.code == "target-range" else E_SYNTAX
            diags.append(Diagnostic(lineno, target_col if code == E_TARGET_RANGE else 1, code, str(exc)))
            continue
        if ok:
            constraints.append(c)

    if diags:
        diags.sort(key=lambda d: (d.line, d.column))
        raise ScenarioParseError(diags)
    return Scenario(tuple(order), tuple(constraints))


def format_scenario(scenario: Scenario) -> str:
    """Inverse of :func:`parse_scenario` (modulo comments and spacing)."""
    lines = ["observables: " + " ".join(scenario.observables) if scenario.observables else "observables:"]
    for c in scenario.constraints:
        if c.kind is ConstraintKind.PRODUCT:
            body = "product " + " ".join(c.terms[0])
        else:
            body = "sum ( " + " ; ".join(" ".join(t) for t in c.terms) + " )"
        lines.append(f"constraint: {body} = {c.target:+d}")
    return "\n".join(lines) + "\n"
