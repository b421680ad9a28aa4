"""Command-line front end.

Usage::

    avncheck verify all
    avncheck verify ghz-nonlocality --format json
    avncheck search ghz.scn --witnesses 4

Exit status: 0 when every requested report reaches its expected conclusion
(or a search completes), 1 on a mismatch, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import hv
from .scenario_file import ScenarioParseError, format_scenario, parse_scenario
from .scenarios import CATALOG, VerificationReport, run_catalog

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _fmt_num(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) < 5e-13:
        return f"{z.real:+.6g}"
    return f"{z.real:+.6g}{z.imag:+.6g}i"


def render_report(r: VerificationReport) -> str:
    out = [f"== {r.name}: {r.title}"]
    for c in r.quantum_checks:
        flag = "PASS" if c.passed else "FAIL"
        out.append(
            f"  [{flag}] {c.description}: computed {_fmt_num(c.computed)}, "
            f"residual {c.residual:.2e} ({c.comparator} {c.threshold:.2e})"
        )
    res = r.hv_result
    verdict = "SATISFIABLE" if res.satisfiable else "UNSATISFIABLE"
    out.append(
        f"  hv search: {len(r.scenario.observables)} observables, "
        f"{len(r.scenario.constraints)} constraints, count={res.count}/{res.total} {verdict}"
    )
    if r.contextual_witness:
        ctx = "; ".join(
            " ".join(f"{s}={v:+d}" for s, v in w.items()) for w in r.contextual_witness
        )
        out.append(f"  contextual witness (per constraint): {ctx}")
    if r.symmetry is not None:
        worst = max(v.residual for v in r.symmetry.verdicts)
        out.append(
            f"  exchange symmetry: {r.symmetry.classification} "
            f"(max residual {worst:.2e}, definitive={r.symmetry.definitive})"
        )
    for note in r.notes:
        out.append(f"  note: {note}")
    mark = "ok" if r.as_expected else "MISMATCH"
    out.append(
        f"  conclusion: {r.conclusion.value} (expected {r.expected_conclusion.value}) {mark}"
    )
    return "\n".join(out)


def _cmd_verify(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> int:
    names = list(CATALOG) if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in CATALOG:
        stderr.write(
            f"error: unknown verification {args.name!r}; choose from: all, {', '.join(CATALOG)}\n"
        )
        return EXIT_USAGE
    reports = run_catalog(names)
    ok = all(r.as_expected for r in reports)
    if args.format == "json":
        payload = {"reports": [r.to_dict() for r in reports], "all_as_expected": ok}
        stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        stdout.write("\n\n".join(render_report(r) for r in reports) + "\n")
        matched = sum(r.as_expected for r in reports)
        stdout.write(f"\n{matched}/{len(reports)} reports reached their expected conclusion\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_search(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        stderr.write(f"error: cannot read {path}: {exc.strerror or exc}\n")
        return EXIT_USAGE
    try:
        scenario = parse_scenario(text)
    except ScenarioParseError as exc:
        for d in exc.diagnostics:
            stderr.write(d.format(str(path)) + "\n")
        return EXIT_USAGE
    result = hv.search(scenario, max_witnesses=args.witnesses)
    verdict = "SATISFIABLE" if result.satisfiable else "UNSATISFIABLE"
    if args.format == "json":
        payload = {
            "file": str(path),
            "observables": list(scenario.observables),
            "constraints": [str(c) for c in scenario.constraints],
            "hv": result.to_dict(),
        }
        stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        stdout.write(format_scenario(scenario))
        stdout.write(f"count={result.count} {verdict}\n")
        for w in result.witnesses:
            stdout.write("  " + " ".join(f"{s}={v:+d}" for s, v in w.items()) + "\n")
        if result.count > len(result.witnesses):
            stdout.write(f"  ({result.count - len(result.witnesses)} more not shown)\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avncheck",
        description="Check all-versus-nothing contextuality and nonlocality arguments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    v = sub.add_parser("verify", parents=[fmt], help="run catalogued verifications")
    v.add_argument("name", help=f"one of: all, {', '.join(CATALOG)}")
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("search", parents=[fmt], help="search a scenario file for assignments")
    s.add_argument("file")
    s.add_argument("--witnesses", type=int, default=hv.DEFAULT_MAX_WITNESSES,
                   help="maximum number of satisfying assignments to list")
    s.set_defaults(func=_cmd_search)
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "witnesses", 0) < 0:
        stderr.write("error: --witnesses must be non-negative\n")
        return EXIT_USAGE
    return args.func(args, stdout, stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
