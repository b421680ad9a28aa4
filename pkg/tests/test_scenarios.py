import numpy as np
import pytest

from avncheck import hv
from avncheck.hilbert import build_operator, parse_label
from avncheck.linalg import apply
from avncheck.scenarios import (
    CATALOG,
    Conclusion,
    QuantumCheck,
    constraint_operator,
    decide,
    ghz_binding,
    mermin_binding,
    positional_binding,
    run_catalog,
    verify_ghz_distinguishable,
    verify_ghz_indistinguishable_contextuality,
    verify_ghz_nonlocality,
    verify_mermin_square,
    verify_symmetrized_mermin_rectangle,
)
from avncheck.states import ghz_spin, psi_tilde
from avncheck.symmetrize import sym


def _check(report, fragment):
    matches = [c for c in report.quantum_checks if fragment in c.description]
    assert matches, fragment
    return matches[0]


def test_catalog_conclusions():
    reports = run_catalog()
    assert [r.name for r in reports] == list(CATALOG)
    assert [r.conclusion for r in reports] == [Conclusion.CONTRADICTION] * 4 + [Conclusion.NO_CONTRADICTION]
    assert all(r.as_expected for r in reports)


def test_unknown_catalog_entry():
    with pytest.raises(KeyError):
        run_catalog(["nosuch"])


def test_decide_rule():
    assert decide(True, 0) is Conclusion.CONTRADICTION
    assert decide(False, 0) is Conclusion.NO_CONTRADICTION
    assert decide(True, 3) is Conclusion.NO_CONTRADICTION


def test_ghz_distinguishable_report():
    r = verify_ghz_distinguishable()
    assert _check(r, "XYY on GHZ").residual < 1e-10
    assert _check(r, "[XYY, XXX]").residual < 1e-12
    assert r.hv_result.count == 0
    assert r.contextual_witness[3] == {"X1": -1, "X2": 1, "X3": 1}


def test_ghz_contextuality_report():
    r = verify_ghz_indistinguishable_contextuality()
    c = _check(r, "sym(XYY)")
    assert c.residual < 1e-10 and c.computed == pytest.approx(3)
    assert _check(r, "XXX with Pi_h").computed == pytest.approx(-1)
    assert r.hv_result.count == 0
    assert r.symmetry.classification == "symmetric"


def test_ghz_nonlocality_report():
    r = verify_ghz_nonlocality()
    assert _check(r, "sym(X_h Y_t Y_y) on").computed == pytest.approx(1)
    assert _check(r, "sym(X_h X_t X_y) on").computed == pytest.approx(-1)
    assert _check(r, "Pi+_h Pi+_t Pi+_y").residual < 1e-10
    assert any("full 216-dim" in n for n in r.notes)
    assert r.symmetry.classification == "parity-signed"
    assert r.hv_result.count == 0


def test_mermin_square_report():
    r = verify_mermin_square()
    assert _check(r, "product IX XI XX").computed == pytest.approx(1)
    assert _check(r, "product XX ZZ YY").computed == pytest.approx(-1)
    assert r.hv_result.count == 0


def test_rectangle_report_flags_claimed_coefficients():
    r = verify_symmetrized_mermin_rectangle()
    claimed = [c for c in r.quantum_checks if "(as claimed)" in c.description]
    assert [c.passed for c in claimed] == [True, False, False]
    corrected = [c for c in r.quantum_checks if "(corrected coefficient)" in c.description]
    assert len(corrected) == 2 and all(c.passed for c in corrected)
    assert r.hv_result.satisfiable
    assert r.conclusion is Conclusion.NO_CONTRADICTION


def test_constraint_operators_match_quantum_objects():
    # product of single-qubit bindings over a context = the joint observable
    b = ghz_binding()
    for c, label in zip(hv.ghz_scenario().constraints, ("XYY", "YXY", "YYX", "XXX")):
        assert np.array_equal(constraint_operator(c, b).matrix, build_operator(parse_label(label)).matrix)
    pb = positional_binding()
    for c, label in zip(hv.positional_ghz_scenario().constraints,
                        ("X_h Y_t Y_y", "Y_h X_t Y_y", "Y_h Y_t X_y", "X_h X_t X_y")):
        assert np.max(np.abs(constraint_operator(c, pb).matrix - sym(label).matrix)) < 1e-12


@pytest.mark.parametrize("scenario,binding,state", [
    (hv.ghz_scenario(), ghz_binding(), ghz_spin()),
    (hv.positional_ghz_scenario(), positional_binding(), psi_tilde()),
])
def test_product_constraints_are_quantum_eigenvalues(scenario, binding, state):
    for c in scenario.constraints:
        out = apply(constraint_operator(c, binding), state)
        assert np.linalg.norm(out - c.target * state.amplitudes) < 1e-10


def test_mermin_constraints_are_operator_identities():
    b = mermin_binding()
    for c in hv.mermin_square_scenario().constraints:
        assert np.max(np.abs(constraint_operator(c, b).matrix - c.target * np.eye(4))) < 1e-12


def test_quantum_check_comparators():
    assert QuantumCheck("x", 0, 0, 1e-13, 1e-12).passed
    assert not QuantumCheck("x", 0, 0, 1e-11, 1e-12).passed
    assert QuantumCheck("x", None, 1, 1.0, 0.5, ">").passed
    d = QuantumCheck("x", -2j, 1 + 2j, 0.1, 1.0).to_dict()
    assert d["expected"] == [0.0, -2.0] and d["computed_im"] == 2.0


def test_reports_recomputed_each_call():
    a, b = verify_ghz_nonlocality(), verify_ghz_nonlocality()
    assert a is not b
    assert a.to_dict() == b.to_dict()
