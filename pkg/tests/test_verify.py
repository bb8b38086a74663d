"""The verification suite itself: green on the built-ins, red when sabotaged."""

import json

from starprod.lie import heisenberg, random_two_step, sl2, virasoro
from starprod.shapovalov import canonical_element
from starprod.verify import (
    CheckResult,
    VerificationReport,
    check_associativity,
    check_canonicity,
    check_closed_forms,
    check_determinant_structure,
    check_first_order,
    check_invariance,
    check_oracle_agreement,
    check_order_bounds,
    check_residue,
    property_suite,
    run_all,
)

BUILTIN_CHECKS = {
    "associativity",
    "invariance",
    "residue",
    "first-order",
    "order-bounds",
    "determinant",
    "oracle",
    "canonicity",
    "closed-form",
    "confluence",
    "product-associativity",
    "antipode",
    "coproduct",
}


def test_run_all_builtins():
    for alg in (sl2(1), heisenberg(2, 1), virasoro(1, 1)):
        report = run_all(alg, window=3)
        assert report.passed, report.to_text()
        assert {r.name for r in report.results} == BUILTIN_CHECKS


def test_run_all_random_algebra():
    report = run_all(random_two_step(3), window=3)
    assert report.passed, report.to_text()
    # no closed form is claimed for a random algebra
    assert {r.name for r in report.results} == BUILTIN_CHECKS - {"closed-form"}


def test_run_all_clamps_window_to_cutoff():
    report = run_all(virasoro(1, 1), window=5)
    assert report.passed
    assoc = next(r for r in report.results if r.name == "associativity")
    assert "window 2" in assoc.detail


def _tampered_sl2(window=2):
    """Fresh sl2 with the degree-1 coefficient of the canonical element doubled."""
    alg = sl2(1)
    canonical_element(alg, window)
    basis, coeffs, det = alg._cache[("component", 1, "desc")]
    key = next(iter(coeffs))
    coeffs[key] = coeffs[key].scale(2)
    return alg


def test_tampering_breaks_associativity():
    result = check_associativity(_tampered_sl2(), 2)
    assert not result.passed
    assert "residual" in result.detail


def test_tampering_breaks_invariance():
    result = check_invariance(_tampered_sl2(), 2)
    assert not result.passed


def test_tampering_breaks_residue_and_closed_form():
    alg = _tampered_sl2()
    assert not check_residue(alg, 2).passed
    assert not check_first_order(alg, 2).passed
    assert not check_closed_forms(alg).passed


def test_untampered_checks_pass_directly():
    alg = virasoro(1, 1)
    assert check_associativity(alg, 2).passed
    assert check_invariance(alg, 2).passed
    assert check_residue(alg, 2).passed
    assert check_first_order(alg, 2).passed
    assert check_order_bounds(alg, 2).passed
    assert check_determinant_structure(alg, 2).passed
    assert check_oracle_agreement(alg, 2).passed
    assert check_canonicity(alg, 2).passed
    assert check_closed_forms(alg).passed


def test_closed_form_dispatch():
    assert check_closed_forms(random_two_step(0)) is None
    assert check_closed_forms(sl2(1)).detail.startswith("matches 1/(n!")
    assert "exp(" in check_closed_forms(heisenberg(1, 1)).detail
    assert "two-generator table" in check_closed_forms(virasoro(1, 1)).detail


def test_property_suite():
    results = property_suite(sl2(1), seed=5, samples=25)
    assert [r.name for r in results] == [
        "confluence",
        "product-associativity",
        "antipode",
        "coproduct",
    ]
    assert all(r.passed for r in results)
    # truncated algebras sample only in-window words, so this must also pass
    assert all(r.passed for r in property_suite(virasoro(1, 1), seed=5, samples=25))


def test_report_rendering():
    report = VerificationReport("demo")
    report.add(CheckResult("alpha", True, "fine"))
    text = report.to_text()
    assert text.splitlines()[0] == "verification of demo"
    assert "PASS alpha: fine" in text
    assert text.splitlines()[-1] == "OK"

    report.add(CheckResult("beta", False, "broken"))
    assert not report.passed
    assert report.to_text().splitlines()[-1] == "FAILED"
    assert "FAIL beta: broken" in report.to_text()

    data = json.loads(json.dumps(report.to_json()))
    assert data["algebra"] == "demo"
    assert data["passed"] is False
    assert data["checks"][0] == {"name": "alpha", "passed": True, "detail": "fine"}
