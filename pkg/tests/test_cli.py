import json
import pathlib
import subprocess
import sys

import numpy as np
import pytest

from compalg import cli
from compalg.algebras import CompositionAlgebra, build_named
from compalg.diagrams import cycle_diagram

GOLDEN = pathlib.Path(__file__).parent / "golden" / "cli"


def run_main(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# ------------------------------------------------------------ exit codes


def test_classify_prints_the_tree_and_exits_zero(capsys):
    rc, out, err = run_main(capsys, "hurwitz", "classify")
    assert rc == 0
    for needle in ("delta = 7", "delta = 3", "delta = 1", "delta = 0",
                   "imaginary octonions", "zero space"):
        assert needle in out


def test_algebra_verify_passes(capsys):
    rc, out, err = run_main(capsys, "algebra", "verify", "--name", "octonions")
    assert rc == 0
    assert "check composition: pass" in out
    assert err == ""


def test_unknown_algebra_is_a_usage_error(capsys):
    rc, out, err = run_main(capsys, "algebra", "verify", "--name", "bogus")
    assert rc == 2
    assert out == ""
    assert "bogus" in err


def test_unknown_subcommand_is_a_usage_error(capsys):
    assert cli.main(["frobnicate"]) == 2


def test_missing_required_flag_is_a_usage_error(capsys):
    assert cli.main(["triality", "verify"]) == 2


def test_seed_must_fit_in_64_bits(capsys):
    assert cli.main(["algebra", "props", "--name", "reals", "--seed", "-1"]) == 2
    assert cli.main(["algebra", "props", "--name", "reals",
                     "--seed", str(2 ** 64)]) == 2


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0


def test_failed_verification_exits_one(capsys, monkeypatch):
    O = build_named("octonions")
    table = np.array(O.mul_table, dtype=object).copy()
    table[1, 2, 3] = -table[1, 2, 3] + 1
    bad = CompositionAlgebra("octonions", table, O.form)
    monkeypatch.setattr(cli, "build_named", lambda name: bad)
    rc, out, err = run_main(capsys, "algebra", "verify", "--name", "octonions")
    assert rc == 1
    assert "check composition: FAIL" in out
    assert "witnesses" in out
    assert "exit status: 1" in out


# ------------------------------------------------------------ report format


@pytest.mark.parametrize("argv", [
    ("algebra", "verify", "--name", "split_octonions"),
    ("vpa", "verify", "--from", "quaternions"),
    ("vpa", "roundtrip", "--from", "octonions"),
    ("triality", "verify", "--algebra", "complexes"),
    ("triality", "roundtrip", "--algebra", "split_quaternions"),
    ("sym", "verify", "--algebra", "quaternions", "--special"),
    ("sym", "extract", "--algebra", "split_complexes"),
    ("hurwitz", "derive"),
])
def test_json_mode_emits_one_parseable_document(capsys, argv):
    rc, out, err = run_main(capsys, *argv, "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["exit_status"] == 0
    assert doc["command"] == list(argv) + ["--format", "json"]
    assert all(c["passed"] for c in doc["checks"])


def test_text_and_json_agree_on_outcome(capsys):
    rc_t, out_t, _ = run_main(capsys, "sym", "verify", "--algebra", "octonions")
    rc_j, out_j, _ = run_main(capsys, "sym", "verify", "--algebra", "octonions",
                              "--format", "json")
    assert rc_t == rc_j == 0
    assert json.loads(out_j)["exit_status"] == 0
    assert "exit status: 0" in out_t


def test_repeat_runs_are_byte_identical(capsys):
    outs = set()
    for _ in range(2):
        rc, out, _ = run_main(capsys, "hurwitz", "derive", "--seed", "3",
                              "--format", "json")
        assert rc == 0
        outs.add(out)
    assert len(outs) == 1
    assert json.loads(out)["seed"] == 3


def test_report_echoes_the_command_and_seed(capsys):
    rc, out, _ = run_main(capsys, "algebra", "props", "--name", "reals", "--seed", "11")
    assert out.startswith("command: algebra props --name reals --seed 11\nseed: 11\n")


# ------------------------------------------------------------ golden files


def _golden_case(fname):
    text = (GOLDEN / fname).read_text()
    return text


@pytest.mark.parametrize("fname,argv", [
    ("algebra_verify_quaternions.json",
     ["algebra", "verify", "--name", "quaternions", "--format", "json"]),
    ("hurwitz_classify.json", ["hurwitz", "classify", "--format", "json"]),
    ("hurwitz_classify.txt", ["hurwitz", "classify"]),
    ("sym_extract_reals.json",
     ["sym", "extract", "--algebra", "reals", "--format", "json"]),
    ("diagram_reduce_theta.json",
     ["diagram", "reduce", "--rules", "g2", "theta_input.json", "--format", "json"]),
])
def test_golden_output_is_pinned(capsys, monkeypatch, fname, argv):
    monkeypatch.chdir(GOLDEN)
    rc, out, err = run_main(capsys, *argv)
    assert rc == 0
    assert out == _golden_case(fname)


def test_verify_all_matches_its_golden_file(capsys):
    rc, out, err = run_main(capsys, "verify-all", "--format", "json")
    assert rc == 0
    assert out == _golden_case("verify_all.json")
    doc = json.loads(out)
    assert doc["payload"]["total_checks"] == len(doc["checks"]) >= 80
    assert all(c["passed"] for c in doc["payload"]["criteria"])


# ------------------------------------------------------------ diagram verbs


def test_diagram_eval_tensor_shape(capsys, tmp_path):
    path = tmp_path / "ring4.json"
    path.write_text(json.dumps(cycle_diagram(4).to_json()))
    rc, out, _ = run_main(capsys, "diagram", "eval", "--algebra", "quaternions",
                          str(path), "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    entry = doc["payload"]["files"][0]
    assert entry["shape"] == [3, 3, 3, 3]
    assert entry["tensor"][0][0][0][0] == 2


def test_diagram_reduce_rejects_garbage_files(capsys, tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    rc, out, err = run_main(capsys, "diagram", "reduce", "--rules", "g2", str(path))
    assert rc == 2
    assert "garbage.json" in err


def test_diagram_reduce_missing_file(capsys, tmp_path):
    rc, out, err = run_main(capsys, "diagram", "reduce", "--rules", "generic",
                            str(tmp_path / "absent.json"))
    assert rc == 2


# ------------------------------------------------------------ console script


def test_console_script_is_wired_up():
    proc = subprocess.run(
        [sys.executable, "-m", "compalg.cli", "algebra", "props", "--name", "reals"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "associative" in proc.stdout
