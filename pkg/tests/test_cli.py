import io
import json

import pytest

from qeuler.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_compute_plain():
    code, out = run("compute", "--family", "plain", "--n", "0..3", "--x", "0", "--q", "1/2", "--output", "json")
    assert code == 0
    recs = records(out)
    assert len(recs) == 4
    assert recs[0]["value"] == "1/1"
    assert recs[1]["value"] == "-2/3"


def test_compute_ordering_and_reduction():
    code, out = run("compute", "--family", "plain", "--n", "0..1", "--x", "0,1", "--q", "1/2,1/3")
    keys = [(r["n"], r["x"], r["q"]) for r in records(out)]
    assert keys == sorted(keys, key=lambda k: (k[0], k[1], k[2] == "1/3"))
    _, a = run("compute", "--family", "barnes", "--w", "1,1", "--n", "1", "--x", "0", "--q", "1/2")
    _, b = run("compute", "--family", "order-r", "--r", "2", "--n", "1", "--x", "0", "--q", "1/2")
    assert records(a)[0]["value"] == records(b)[0]["value"]


def test_usage_errors(capsys):
    code, out = run("compute", "--family", "plain", "--q", "1")
    assert code == 2 and out == ""
    err = json.loads(capsys.readouterr().err)
    assert "q=1 invalid in exact mode" in err["message"]
    assert run("verify", "bogus-suite")[0] == 2
    assert run("compute", "--family", "chi")[0] == 2
    assert run("compute", "--family", "plain", "--x", "1/2")[0] == 2
    assert run("frobnicate")[0] == 2


def test_runtime_error(capsys):
    code, out = run("compute", "--family", "extended-hr", "--h", "1", "--r", "1", "--q", "-1")
    assert code == 3
    assert json.loads(capsys.readouterr().err)["error"] == "VanishingPochhammerFactor"


def test_verify_suites():
    code, out = run("verify", "recurrence")
    assert code == 0
    recs = records(out)
    assert recs[-1]["case"] == "summary" and recs[-1]["status"] == "pass"
    assert all(r["residual"] == 0.0 for r in recs if r["status"] == "pass")
    code, out = run("verify", "interpolation", "--n", "0..1", "--q", "1/2")
    assert code == 0
    assert any("relation residual" in r["detail"] for r in records(out) if r["status"] == "info")


def test_verify_failure_exit_code():
    # an impossible tolerance on a float suite must fail
    code, _ = run("verify", "q-limit", "--tol", "1e-30", "--n", "0..4")
    assert code == 1


def test_zeta_family_commands():
    code, out = run("zeta", "--s", "0", "--w", "1", "--a", "1", "--x", "1", "--q", "1/2")
    assert code == 0
    assert abs(records(out)[0]["value"]["re"] - 2 / 3) <= 1e-10
    code, out = run("lfun", "--char", "quad:3", "--s", "0", "--q", "1/2")
    assert code == 0
    assert run("lfun", "--s", "0")[0] == 2
    code, out = run("interp-check", "--w", "1,2", "--a", "1,1", "--n", "0..2")
    assert code == 0 and len(records(out)) == 3
    code, out = run("mellin-check", "--s", "1.5", "--w", "1,2", "--a", "1,1")
    assert code == 0 and records(out)[0]["passed"]
    assert run("zeta", "--a", "0")[0] == 2


def test_padic_commands():
    code, out = run("padic-check", "--family", "order-r", "--r", "2", "--n", "0..3", "--x", "0,1",
                    "--q", "4,7", "--p", "3", "--prec-M", "4")
    assert code == 0 and all(r["match"] for r in records(out))
    code, out = run("compute", "--family", "plain", "--n", "1", "--x", "0", "--q", "4", "--method",
                    "padic_integral", "--p", "3", "--prec-M", "4")
    assert code == 0 and records(out)[0]["value"]["modulus"] == "3^4"
    assert run("padic-check", "--q", "2", "--p", "3")[0] == 2


def test_series_method():
    code, out = run("compute", "--family", "order-r", "--r", "2", "--n", "2", "--x", "1", "--q", "1/2",
                    "--method", "series", "--tol", "1e-6")
    rec = records(out)[0]
    assert code == 0 and rec["method"] == "series_abel" and rec["error_bound"] <= 1e-6


def test_csv_output():
    code, out = run("compute", "--family", "chi", "--char", "quad:5", "--n", "0..1", "--output", "csv")
    lines = out.splitlines()
    assert lines[0] == "family,n,x,q,method,value,error_bound"
    assert len(lines) == 3


@pytest.mark.parametrize("argv", [
    ("compute", "--family", "barnes-twisted", "--w", "1,2", "--a", "0,1", "--n", "0..4", "--x", "0,2",
     "--q", "1/2,3/5"),
    ("zeta", "--s", "2,1", "--w", "1,2", "--a", "1,1"),
    ("verify", "distribution", "--n", "0..1"),
])
def test_deterministic_and_round_trip(argv):
    _, a = run(*argv)
    _, b = run(*argv)
    assert a == b
    for line in a.splitlines():
        assert json.dumps(json.loads(line)) == line
