import json
import subprocess
import sys

import pytest

from nichols_lift.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_list_and_show(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    for name in ("cartan-A2-N3", "cartan-B2-N5", "standard-G2-a", "super-A2-minus"):
        assert name in out
    code, out, _ = run(capsys, "catalog", "show", "cartan-A1")
    assert code == 0 and out.startswith("presentation cartan-A1-N3")
    assert run(capsys, "catalog", "show", "missing")[0] == 2
    assert run(capsys, "catalog", "show")[0] == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "cartan-A2-N3", "--lam", "r112=1", "--lam", "r221=1")
    assert code == 0 and "dim            27" in out
    code, out, _ = run(capsys, "verify", "cartan-B2-N5", "--lam", "all=1", "--json")
    assert code == 0 and json.loads(out)["flat"] is True
    code, out, err = run(capsys, "verify", "cartan-A2-N5-skew", "--lam", "r112=1")
    assert code == 3 and "trace digest" in out and "inadmissible" in err
    code, out, _ = run(capsys, "verify", "brj23-b", "--lam", "p1=1", "--degree-bound", "16")
    assert code == 4


def test_verify_degree_bound_too_small_is_inconclusive(capsys):
    code, out, _ = run(capsys, "verify", "cartan-B2-N5", "--lam", "all=1", "--degree-bound", "4", "--json")
    assert code == 4 and json.loads(out)["status"] == "inconclusive"


def test_homogeneous_small_bound_can_still_be_certified(capsys):
    # the skipped overlaps sit in degrees with no normal words, so they vanish
    code, out, _ = run(capsys, "verify", "cartan-A2-N3", "--degree-bound", "3", "--json")
    assert code == 0 and json.loads(out)["dim"] == 27


def test_usage_and_input_errors(capsys, tmp_path):
    assert run(capsys, "verify", "cartan-A1", "--lam", "nope")[0] == 2
    assert run(capsys, "verify", "cartan-A1", "--lam", "q9=1")[0] == 1
    assert run(capsys, "verify", "cartan-A1", "--order", "2")[0] == 2
    assert run(capsys, "verify", "cartan-A1", "--degree-bound", "0")[0] == 2
    assert run(capsys)[0] == 2
    bad = tmp_path / "bad.pres"
    bad.write_text("presentation x\nfield 2\ntheta 1\nmatrix [-1]\nrel a s0 y2^2\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 1 and "line 5" in err and str(bad) in err


def test_verify_with_checks_is_reported(capsys):
    code, out, _ = run(capsys, "verify", "cartan-A2-N3", "--check", "50", "--seed", "4", "--json")
    d = json.loads(out)
    assert code == 0 and d["confluence_checks"] == 50 and d["confluence_failures"] == 0


def test_admissible(capsys):
    code, out, _ = run(capsys, "admissible", "cartan-A2-N3")
    assert code == 0 and out.count("  admissible") == 5
    code, out, _ = run(capsys, "admissible", "cartan-A1-N2", "--realization", "2", "--json")
    assert code == 0 and json.loads(out)["admissible"] == []


def test_dim(capsys):
    assert run(capsys, "dim", "cartan-A1")[1].strip() == "3"
    code, out, _ = run(capsys, "dim", "cartan-B2-N5")
    assert code == 0 and out.startswith("infinite")
    assert run(capsys, "dim", "cartan-A2-N5", "--lam", "r112=1")[0] == 3


def test_isom_files(capsys, tmp_path):
    a = tmp_path / "a.datum"
    b = tmp_path / "b.datum"
    c = tmp_path / "c.datum"
    a.write_text("datum\nbase linking-A1xA1\nlambda l12 = 1\n")
    b.write_text("datum\nbase linking-A1xA1\nlambda l12 = -1\n")
    c.write_text("datum\nbase linking-A1xA1\n")
    code, out, _ = run(capsys, "isom", str(a), str(b))
    assert code == 0 and out.startswith("isomorphic")
    code, out, _ = run(capsys, "isom", str(a), str(c), "--json")
    assert code == 0 and json.loads(out) == {"isomorphic": False, "witness": None}
    assert run(capsys, "isom", str(a), str(a))[1].startswith("isomorphic: sigma = ()")


def test_lift(capsys):
    code, out, _ = run(capsys, "lift", "cartan-A1-N2", "--realization", "4", "--lam", "p1=1", "--json")
    d = json.loads(out)
    assert code == 0 and d["dim"] == 8 and d["dim_expected"] == 8
    code, out, _ = run(capsys, "lift", "linking-A1xA1", "--realization", "2,2", "--lam", "l12=1", "--show")
    assert code == 0 and "rel gord1 s0 y3^2 tail 1" in out
    assert run(capsys, "lift", "cartan-A1-N3", "--realization", "2")[0] == 1


def test_diagram(capsys):
    code, out, _ = run(capsys, "diagram", "cartan-A2-N3")
    assert code == 0 and "edge y1 -- y2: z^2" in out


def test_verify_catalog(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--jobs", "2", "--json")
    assert code == 0
    assert all(r["status"] in ("finite", "infinite") for r in json.loads(out))


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "nichols_lift", *argv], capture_output=True)


def test_json_reports_are_byte_identical_across_processes():
    argv = ("verify", "cartan-B2-N5", "--lam", "all=1", "--json", "--check", "100", "--seed", "9")
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout


@pytest.mark.parametrize("status, code", [("zero", 3), ("inconclusive", 4)])
def test_exit_code_is_a_function_of_status(status, code):
    from nichols_lift.deform import VerifyReport
    from nichols_lift.groebner import GBReport

    rep = VerifyReport("x", {}, GBReport(status), None, 16, None)
    assert rep.exit_code() == code
    assert VerifyReport("x", {}, GBReport("finite", 3), None, 16, True).exit_code() == 0
    assert VerifyReport("x", {}, GBReport("finite", 3), None, 16, False).exit_code() == 4
