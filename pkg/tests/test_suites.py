import pytest

from drinfeld.exactfield import parse_poly
from drinfeld.suites import SUITES, SuiteError, default_order, run_suite


def test_default_orders():
    assert default_order("aexp-vs-product", 3) == 18
    assert default_order("theorem1", 3) == 54
    assert default_order("theorem1", 5) == 60


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_reports_schema(suite):
    rep = run_suite(suite, 2, 12)
    assert rep["schema"] == 1 and rep["suite"] == suite
    assert rep["status"] == "pass"
    for c in rep["checks"]:
        assert c["status"] in ("pass", "fail")


def test_aexp_vs_product_q5():
    rep = run_suite("aexp-vs-product", 5, 30)
    assert rep["status"] == "pass"


def test_serre_printed_fails_odd_q_and_variant_holds():
    rep = run_suite("serre", 3, 20)
    by = {c["identity"]: c for c in rep["checks"]}
    assert by["serre-printed"]["status"] == "fail"
    assert by["serre-printed"]["first_failing_exponent"] == 1
    assert by["serre-coefficient-one"]["status"] == "pass"
    assert by["serre-coefficient-one"]["sigma"] == "1"
    assert by["serre-level-T-coefficient-one"]["status"] == "pass"
    assert rep["status"] == "fail"


def test_serre_q2_passes():
    rep = run_suite("serre", 2, 20)
    assert rep["status"] == "pass"
    assert rep["fitted"]["sigma"]["serre-printed"] == "1"


def test_suite_errors():
    with pytest.raises(SuiteError):
        run_suite("nope", 3)
    with pytest.raises(ValueError):
        run_suite("theorem1", 6)
    with pytest.raises(SuiteError):
        run_suite("theorem1", 3, 20, parse_poly("T+1", 3))
    with pytest.raises(SuiteError):
        run_suite("serre", 3, 1)
