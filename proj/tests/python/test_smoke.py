import json

import pytest

quonlab = pytest.importorskip("quonlab")


def test_defining_relation_exact():
    rec = quonlab.check_identity("qmut[b(1), bd(1)] == 1", twice_j=2, q="1/2")
    assert rec["status"] == "pass"
    assert rec["residual"] == 0.0


def test_su2_closure_float():
    rec = quonlab.check_identity("comm[Jp, Jm] == 2*J0", twice_j=2, q=0.9)
    assert rec["status"] == "pass"
    assert rec["residual"] <= 1e-10


def test_failing_identity_reports_fail():
    rec = quonlab.check_identity("comm[Jp, Jm] == 3*J0", twice_j=2, q="1/2")
    assert rec["status"] == "fail"


def test_syntax_error_is_typed():
    with pytest.raises(quonlab.QuonParseError):
        quonlab.check_identity("comm[Jp Jm] == 2*J0", twice_j=2, q="1/2")


def test_mode_validation():
    with pytest.raises(quonlab.QuonConfigError):
        quonlab.check_identity("bd(2) == bd(2)", twice_j=2, q="1/2")


def test_gram_exact_entries():
    rows = quonlab.gram(twice_j=1, n=2, q="1/2")
    assert rows[0][0] == "3/2"  # <(m,m)|(m,m)> = 1 + q
    flat = [v for row in rows for v in row]
    assert "1/2" in flat  # the overlap of reordered words


def test_positivity_interior_and_endpoint():
    ok = quonlab.positivity(twice_j=1, n=2, q="1/2")
    assert ok["positive_definite"] and ok["rank"] == 4
    edge = quonlab.positivity(twice_j=1, n=2, q="1")
    assert not edge["positive_definite"] and edge["rank"] == 3


def test_series_coefficients():
    table = quonlab.series_coefficients(order=1, q="1/2")
    assert table["orders"]["1"]["1"] == "4/3"
    with pytest.raises(quonlab.QuonEndpointError):
        quonlab.series_coefficients(order=1, q="1")


def test_clebsch_gordan_value():
    cg = quonlab.clebsch_gordan(1, 1, 1, -1, 0, 0)
    assert cg["sign"] == 1 and cg["radicand"] == "1/2"


def test_couple_pair_norm():
    top = quonlab.couple_pair(twice_j=1, twice_J=2, twice_M=2, q="1/2")
    assert top["norm_sq"] == "3/2"  # 1 + q at q = 1/2


def test_run_suites_roundtrip():
    cfg = {
        "twice_j": 1,
        "n_max": 2,
        "q_list": ["1/2"],
        "checks": ["eq2", "positivity"],
    }
    out = quonlab.run_suites(json.dumps(cfg))
    assert out["passed"] is True
    parsed = json.loads(out["json"])
    assert parsed["summary"]["failed"] == 0
    assert any(rec["suite"] == "eq2" for rec in out["checks"])
