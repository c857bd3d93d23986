import json
import subprocess
import sys

import numpy as np
import pytest

from singspace.cli import run
from singspace.spaces import parse_space, random_subspace
from singspace.structure import exceptional_space


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rank(capsys):
    assert call(capsys, "rank", "1 0; 0 1", "--q", "2") == (0, "2\n", "")
    code, out, _ = call(capsys, "rank", "1 1; 1 1", "--q", "3", "--json")
    assert json.loads(out) == {"rank": 1}


def test_demo_exceptional_round_trips(capsys, tmp_path):
    code, out, _ = call(capsys, "demo-exceptional")
    assert code == 0
    assert parse_space(out) == exceptional_space()
    path = tmp_path / "ex.txt"
    path.write_text(out)
    code, out, _ = call(capsys, "classify", str(path), "--json")
    assert code == 0
    assert json.loads(out) == {
        "status": "Classified",
        "dim": 2,
        "max_rank": 1,
        "witnesses": [{"kind": "ExceptionalF2"}],
    }


def test_classify_from_stdin():
    demo = subprocess.run([sys.executable, "-m", "singspace.cli", "demo-exceptional"], capture_output=True, text=True)
    res = subprocess.run(
        [sys.executable, "-m", "singspace.cli", "classify", "-"], input=demo.stdout, capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "status: Classified" in res.stdout and "ExceptionalF2" in res.stdout


def test_verify_bound(capsys):
    code, out, err = call(capsys, "verify", "--bound", "--n", "2", "--p", "2", "--q", "2")
    assert code == 0
    assert "violations: 0" in out and "wall_time" in err


def test_verify_json_is_deterministic(capsys):
    argv = ["verify", "--equality", "--n", "2", "--p", "2", "--q", "2", "--json"]
    _, a, _ = call(capsys, *argv)
    _, b, _ = call(capsys, *argv, "--jobs", "2")
    assert a == b
    assert json.loads(a)["outcome_histogram"]["ExceptionalF2"] == 9


def test_verify_budget_exit_code(capsys):
    code, _, err = call(capsys, "verify", "--bound", "--n", "3", "--p", "3", "--q", "3")
    assert code == 3 and "BudgetExceeded" in err


def test_cap_exit_code(capsys):
    code, _, err = call(capsys, "classify", "--random", "5", "--n", "3", "--p", "3", "--q", "2", "--cap", "8")
    assert code == 3 and "CapExceeded" in err


def test_usage_errors(capsys):
    assert call(capsys, "rank", "1 0; 0 1")[0] == 2
    assert call(capsys, "rank", "1 0; 0", "--q", "2")[0] == 2
    assert call(capsys, "classify")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 2


def test_complete(capsys):
    code, out, _ = call(capsys, "complete", "--n", "2", "--p", "3", "--q", "3", "--row", "0 1 0", "--col", "0 0")
    assert code == 0 and out.strip() == "0 1 0; 0 0 1"
    code, out, _ = call(capsys, "complete", "--n", "2", "--p", "2", "--q", "3", "--row", "0 0", "--col", "0 1")
    assert code == 2 and out.startswith("NoCompletion")


def test_schur_inline(capsys):
    code, out, _ = call(capsys, "schur", "--n", "2", "--p", "2", "--q", "2", "--gen", "1 0; 0 0", "--gen", "0 0; 1 0", "--json")
    assert json.loads(out)["kind"] == "FixedForm"
    assert json.loads(out)["f"] == [1, 0]


def test_dualize_round_trip(capsys, tmp_path):
    argv = ["--n", "2", "--p", "3", "--q", "3", "--random", "2", "--seed", "7"]
    code, out, _ = call(capsys, "dualize", *argv)
    assert code == 0
    Sperp = parse_space(out)
    assert Sperp.shape == (3, 2) and Sperp.dim == 4
    path = tmp_path / "perp.txt"
    path.write_text(out)
    _, again, _ = call(capsys, "dualize", str(path))
    S = random_subspace(2, 3, 2, 3, np.random.default_rng(7))
    assert parse_space(again) == S.as_affine()


def test_spectrum(capsys):
    code, out, _ = call(capsys, "spectrum", "--n", "2", "--p", "2", "--q", "2", "--gen", "0 0; 1 0", "--gen", "0 0; 0 1", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["spectrum"] == sorted(r["rank_yhat"] for r in data["table"])
    for row in data["table"]:
        assert row["rank_yhat"] == 2 - row["dim_s_sub_y"]
