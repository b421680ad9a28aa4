import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from avncheck.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, run
from avncheck.scenarios import Conclusion, passes, decide

SCN_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_all_json():
    code, out, _ = _run("verify", "all", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    reports = payload["reports"]
    assert len(reports) == 5
    assert [r["conclusion"] for r in reports] == ["ContradictionEstablished"] * 4 + ["NoContradiction"]
    for r in reports:
        assert set(r) >= {"name", "quantum_checks", "hv", "conclusion"}
        assert set(r["hv"]) >= {"satisfiable", "count", "witnesses"}
        for c in r["quantum_checks"]:
            assert set(c) >= {"description", "expected", "computed_re", "computed_im", "residual", "pass"}


def test_json_round_trip_recomputes_conclusions():
    _, out, _ = _run("verify", "all", "--format", "json")
    for r in json.loads(out)["reports"]:
        flags = [passes(c["residual"], c["threshold"], c["comparator"]) for c in r["quantum_checks"]]
        assert flags == [c["pass"] for c in r["quantum_checks"]]
        assert decide(all(flags), r["hv"]["count"]).value == r["conclusion"]


def test_reports_are_byte_identical():
    assert _run("verify", "all", "--format", "json")[1] == _run("verify", "all", "--format", "json")[1]
    assert _run("verify", "all")[1] == _run("verify", "all")[1]


def test_verify_text_output():
    code, out, _ = _run("verify", "ghz-nonlocality")
    assert code == EXIT_OK
    assert "exchange symmetry: parity-signed" in out
    assert "conclusion: ContradictionEstablished" in out
    assert "residual" in out and "(< 1.00e-10)" in out


def test_verify_unknown_name():
    code, _, err = _run("verify", "nosuch")
    assert code == EXIT_USAGE
    assert "unknown verification 'nosuch'" in err


def test_verify_mismatch_exit(monkeypatch):
    from avncheck import scenarios

    real = scenarios.verify_mermin_square

    def flipped():
        r = real()
        return scenarios.VerificationReport(
            r.name, r.title, r.quantum_checks, r.scenario, r.hv_result, Conclusion.NO_CONTRADICTION)

    monkeypatch.setitem(scenarios.CATALOG, "mermin-square", flipped)
    code, out, _ = _run("verify", "mermin-square")
    assert code == EXIT_MISMATCH
    assert "MISMATCH" in out


def test_search_ghz_file():
    code, out, _ = _run("search", str(SCN_DIR / "ghz.scn"))
    assert code == EXIT_OK
    assert "count=0 UNSATISFIABLE" in out


def test_search_json_and_witnesses(tmp_path):
    f = tmp_path / "flip.scn"
    f.write_text((SCN_DIR / "ghz.scn").read_text().replace("X3 = -1", "X3 = +1"))
    code, out, _ = _run("search", str(f), "--format", "json", "--witnesses", "2")
    assert code == EXIT_OK
    hv = json.loads(out)["hv"]
    assert hv["count"] == 8 and len(hv["witnesses"]) == 2
    code, out, _ = _run("search", str(f), "--witnesses", "1")
    assert "count=8 SATISFIABLE" in out and "(7 more not shown)" in out


def test_search_parse_error(tmp_path):
    f = tmp_path / "bad.scn"
    f.write_text("observables: X1 X2\nconstraint: product X1 X2 = 2\n")
    code, _, err = _run("search", str(f))
    assert code == EXIT_USAGE
    assert f"{f}:2:29: error[E004]" in err


def test_search_missing_file(tmp_path):
    code, _, err = _run("search", str(tmp_path / "nope.scn"))
    assert code == EXIT_USAGE and "cannot read" in err


@pytest.mark.parametrize("argv", [[], ["frob"], ["verify"], ["verify", "all", "--format", "xml"]])
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "avncheck", "verify", "mermin-square"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "mermin-square" in proc.stdout
