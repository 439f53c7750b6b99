import json

import pytest
from click.testing import CliRunner
from hypothesis import given
from hypothesis import strategies as st

from osp_yangian.cli import EXIT_CONFIG, RunConfig, main, run
from osp_yangian.report import FAIL, INCONCLUSIVE, STATUSES, VerificationReport
from osp_yangian.root_data import enumerate_borels


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_borels_b11():
    r = invoke("borels", "--m", "1", "--n", "1")
    assert r.exit_code == 0
    assert "X—O" in r.output and "X—#" in r.output


def test_cartan_json():
    r = invoke("cartan", "--m", "1", "--n", "1", "--borel", "de", "--format", "json")
    doc = json.loads(r.output)
    assert doc["checks"][0]["details"] == "[[0,-1],[-1,1]]"
    assert doc["exit_code"] == 0


@pytest.mark.parametrize("m,n", [(2, 1), (1, 2)])
def test_all_order_matches_enumeration(m, n):
    r = invoke("borels", "--m", str(m), "--n", str(n), "--format", "json")
    names = [c["name"] for c in json.loads(r.output)["checks"]]
    assert names == [b.tags for b in enumerate_borels(m, n)]


def test_invalid_shuffle():
    r = invoke("cartan", "--m", "1", "--n", "1", "--borel", "dd")
    assert r.exit_code == EXIT_CONFIG
    r = invoke("cartan", "--borel", "dx")
    assert r.exit_code == EXIT_CONFIG


def test_invalid_bounds():
    assert invoke("check-minimal", "--max-word-len", "0").exit_code == EXIT_CONFIG
    assert invoke("check-minimal", "--timeout", "-1").exit_code == EXIT_CONFIG


def test_no_timings_is_deterministic():
    a = invoke("check-lie", "--m", "1", "--n", "1", "--no-timings", "--format", "json").output
    b = invoke("check-lie", "--m", "1", "--n", "1", "--no-timings", "--format", "json").output
    assert a == b
    assert json.loads(a)["exit_code"] == 0


def test_check_casimir_cli():
    r = invoke("check-casimir", "--m", "0", "--n", "1")
    assert r.exit_code == 0, r.output


def test_check_minimal_all_borels():
    r = invoke("check-minimal", "--m", "1", "--n", "1", "--borel", "all", "--format", "json")
    doc = json.loads(r.output)
    assert r.exit_code == 0, r.output
    assert doc["summary"]["pass"] == len(doc["checks"]) > 300
    assert {c["name"].split(":")[0] for c in doc["checks"]} == {"de", "ed"}


def test_check_thx_low_level():
    r = invoke("check-thx", "--borel", "ed", "--max-level", "1")
    assert r.exit_code == 0, r.output


def test_check_thx_black_node_is_inconclusive():
    rep, code = run("check-thx", RunConfig(borel="ed"))
    assert code == 2
    assert {c.name for c in rep.failures()} == {
        f"ed: thx({g};i=2,j=2,r=2,s={t})" for g in "+-" for t in (0, 1)
    }


# -- reports ----------------------------------------------------------------

checks = st.lists(
    st.tuples(st.text(min_size=1, max_size=12), st.sampled_from(STATUSES), st.text(max_size=20),
              st.floats(0, 1e4, allow_nan=False)),
    max_size=8,
)


@given(checks, st.dictionaries(st.sampled_from(["m", "n", "borel"]), st.integers(0, 3)))
def test_json_round_trip(cs, params):
    rep = VerificationReport("x", params)
    for name, status, det, ms in cs:
        rep.add(name, status, det, ms)
    text = rep.to_json()
    assert VerificationReport.from_json(text).to_json() == text


@given(st.lists(st.sampled_from(STATUSES), max_size=10))
def test_exit_codes(statuses):
    rep = VerificationReport("x")
    for k, s in enumerate(statuses):
        rep.add(str(k), s)
    if FAIL in statuses:
        assert rep.exit_code == 1
    elif INCONCLUSIVE in statuses:
        assert rep.exit_code == 2
    else:
        assert rep.exit_code == 0


def test_unknown_status_rejected():
    with pytest.raises(ValueError):
        VerificationReport("x").add("a", "maybe")
