"""Command-line behavior: output documents, exit codes, determinism."""

import json

import pytest

from regfactor.cli import main


@pytest.fixture()
def problem(tmp_path):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps({"n": 7, "ideal_generators": [[5, 1], [7, 2]]}))
    return str(path)


@pytest.fixture()
def small_problem(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps({"n": 3, "ideal_generators": []}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_diagram_text(problem, capsys):
    code, out, _ = run(capsys, "diagram", problem)
    assert code == 0
    assert "after step 5:" in out
    assert "BBXX--." in out
    assert "crosses=5 plus_minus=12 bullets=4" in out


def test_diagram_json(problem, capsys):
    code, out, _ = run(capsys, "diagram", problem, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["counts"] == {"crosses": 5, "plus_minus": 12, "bullets": 4}
    assert doc["crosses"][0] == [4, 1]


def test_permutation(problem, capsys):
    code, out, _ = run(capsys, "permutation", problem, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["w"] == [4, 6, 7, 5, 3, 2, 1]
    assert doc["inversions"] == 17 == doc["dim"]
    assert doc["reflection_product_matches"] is True


def test_invariants(problem, capsys):
    code, out, _ = run(capsys, "invariants", problem, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["invariants"]) == 5
    assert doc["invariants"][0]["P"] == "y[4,1]"
    entry = doc["invariants"][3]
    assert entry["case"] == 2 and entry["degree"] == 1 == entry["d_star"]


def test_verify_passes(small_problem, capsys):
    code, out, _ = run(capsys, "verify", small_problem, "--trials", "10")
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_orbit_stats(problem, capsys):
    code, out, _ = run(
        capsys, "orbit-stats", problem, "--trials", "5", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc == {
        "n": 7,
        "max_rank": 12,
        "corank": 5,
        "plus_minus": 12,
        "crosses": 5,
        "match": True,
    }


def test_oracle(small_problem, capsys):
    code, out, _ = run(
        capsys, "oracle", small_problem, "--max-degree", "2", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["basis"] == ["y[3,1]", "y[3,1]^2"]


def test_extremal_scan(small_problem, capsys):
    code, out, _ = run(capsys, "extremal-scan", small_problem, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert {"rows": [3], "cols": [1], "degree": 0, "extremal": True} in doc[
        "extremal_minors"
    ]


def test_extremal_scan_budget_exit(problem, capsys):
    code, _, err = run(capsys, "extremal-scan", problem, "--budget", "5")
    assert code == 3
    assert "budget" in err


def test_oracle_budget_exit(problem, capsys):
    code, _, err = run(capsys, "oracle", problem, "--max-degree", "4", "--budget", "7")
    assert code == 3
    assert "budget" in err


def test_verify_failure_exit(monkeypatch, small_problem, capsys):
    from regfactor.verify import CheckResult, VerificationReport
    import regfactor.cli as cli

    failing = VerificationReport([CheckResult("probe", "fail", detail="forced")])
    monkeypatch.setattr(cli, "full_report", lambda *a, **k: failing)
    code, out, _ = run(capsys, "verify", small_problem)
    assert code == 1
    assert "FAIL" in out


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "diagram", str(bad))[0] == 2

    bad.write_text(json.dumps({"n": 3}))
    assert run(capsys, "diagram", str(bad))[0] == 2

    bad.write_text(json.dumps({"n": 3, "ideal_generators": [], "extra": 1}))
    assert run(capsys, "diagram", str(bad))[0] == 2

    bad.write_text(json.dumps({"n": 0, "ideal_generators": []}))
    assert run(capsys, "diagram", str(bad))[0] == 2

    bad.write_text(json.dumps({"n": 3, "ideal_generators": [[1, 1]]}))
    assert run(capsys, "diagram", str(bad))[0] == 2

    assert run(capsys, "diagram", str(tmp_path / "missing.json"))[0] == 2


def test_strict_mode_rejects_non_closed(problem, capsys):
    code, _, err = run(capsys, "verify", problem, "--strict")
    assert code == 2
    assert "not closed" in err


def test_unknown_subcommand(problem, capsys):
    assert run(capsys, "frobnicate", problem)[0] == 2


def test_byte_identical_reruns(problem, capsys):
    first = run(capsys, "verify", problem, "--trials", "5", "--format", "json")
    second = run(capsys, "verify", problem, "--trials", "5", "--format", "json")
    assert first == second
    third = run(capsys, "invariants", problem)
    fourth = run(capsys, "invariants", problem)
    assert third == fourth


def test_json_documents_round_trip(problem, capsys):
    for command in ["diagram", "permutation", "invariants", "orbit-stats"]:
        code, out, _ = run(capsys, command, problem, "--format", "json", "--trials", "5")
        assert code == 0
        doc = json.loads(out)
        assert json.loads(json.dumps(doc)) == doc
