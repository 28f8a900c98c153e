"""Command line behavior: values, determinism, exit codes, file output."""

import json
import subprocess
import sys

import pytest

from zeropat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_pair_family_values(capsys):
    code, out = run_cli(capsys, "pair", "--family", "lambda:6", "--format", "text")
    assert code == 0 and out.strip() == "-360"
    code, out = run_cli(capsys, "pair", "--family", "pi:4", "--format", "text")
    assert code == 0 and out.strip() == "8"


def test_pair_literal_pattern(capsys):
    code, out = run_cli(
        capsys, "pair", "--n", "3", "--pattern", "[[1,2],[1,3],[2,3]]",
        "--format", "text",
    )
    assert code == 0 and out.strip() == "6"


def test_pair_json_payload(capsys):
    code, out = run_cli(capsys, "pair", "--family", "lambda:4")
    data = json.loads(out)
    assert data["pairing"] == -12 and data["nonsingular"] is True
    assert data["schema_version"] == 1


def test_classify_small(capsys):
    code, out = run_cli(capsys, "classify", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert data["census"]["num_classes"] == 3
    assert data["expected_mismatches"] == {}
    assert len(data["classes"]) == 3


def test_classify_weak_flag(capsys):
    code, out = run_cli(capsys, "classify", "--n", "4", "--weak", "--format", "text")
    assert code == 0 and out.strip() == "12"


def test_classify_csv(capsys):
    code, out = run_cli(capsys, "classify", "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("canonical,orbit_size")
    assert len(lines) == 2


def test_classify_deterministic_output(capsys):
    _, out1 = run_cli(capsys, "classify", "--n", "3")
    _, out2 = run_cli(capsys, "classify", "--n", "3")
    assert out1 == out2


def test_classify_out_file(tmp_path, capsys):
    target = tmp_path / "census.json"
    code, _ = run_cli(capsys, "classify", "--n", "2", "--out", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["census"]["total_patterns"] == 2


def test_stabdim_command(capsys):
    code, out = run_cli(capsys, "stabdim", "--family", "ne:4")
    assert code == 0
    assert "stabilizer dimension: 4" in out
    assert "defective: no" in out


def test_stabdim_json(capsys):
    code, out = run_cli(
        capsys, "stabdim", "--n", "4", "--family", "ne:4", "--format", "json"
    )
    data = json.loads(out)
    assert data["stab_dim"] == 4 and data["defective"] is False


def test_invariants_zero(capsys):
    code, out = run_cli(capsys, "invariants", "--matrix", "zero")
    data = json.loads(out)
    assert code == 0
    assert data["invariants"] == [0.0] * 16


def test_invariants_file(tmp_path, capsys):
    mat = [[[0, 0], [0, 0], [1, 0]], [[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]]]
    path = tmp_path / "m.json"
    path.write_text(json.dumps(mat))
    code, out = run_cli(capsys, "invariants", "--matrix", str(path))
    data = json.loads(out)
    assert code == 0
    assert abs(data["invariants"][0] - 3.0) < 1e-12  # tr(X X*) of a permutation


def test_verify_suite_pass(capsys):
    code, out = run_cli(capsys, "verify", "pi-family", "--max-n", "5")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True


def test_verify_jfamily_small(capsys):
    code, out = run_cli(capsys, "verify", "jfamily", "--samples", "20")
    assert code == 0


def test_verify_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "nonesuch"])


def test_flags3_small(capsys):
    code, out = run_cli(
        capsys, "flags3", "--samples", "1", "--restarts", "300", "--seed", "7"
    )
    assert code == 0
    data = json.loads(out)
    s = data["samples"][0]
    assert s["N"] % 6 == 0
    assert len(s["P1"]) == s["N"]
    assert all(r <= 1e-18 for r in s["cluster_residuals"])


def test_flags3_deterministic(capsys):
    _, out1 = run_cli(capsys, "flags3", "--samples", "1", "--restarts", "200", "--seed", "3")
    _, out2 = run_cli(capsys, "flags3", "--samples", "1", "--restarts", "200", "--seed", "3")
    assert out1 == out2


def test_verify_extremal_with_sample(capsys):
    code, out = run_cli(
        capsys, "verify", "extremal", "--max-n", "3", "--sample5", "50"
    )
    assert code == 0
    data = json.loads(out)
    assert data["reports"][0]["passed"]


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "zeropat", "pair", "--family", "pi:5", "--format", "text"],
        capture_output=True, text=True, cwd="/root/pkg",
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "15"
