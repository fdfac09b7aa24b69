import json

import pytest

from ybx.cli import main
from ybx.formats import dumps_canonical, family_from_json, load_json


def write(path, obj):
    path.write_text(dumps_canonical(obj))
    return str(path)


@pytest.fixture
def shift3_problem(tmp_path):
    return write(
        tmp_path / "problem.json",
        {"jordan": [{"eigenvalue": "0", "sizes": [3]}]},
    )


def test_solve_jordan_input(tmp_path, shift3_problem, capsys):
    out = tmp_path / "family.json"
    assert main(["solve", shift3_problem, str(out), "--frame", "jordan"]) == 0
    captured = capsys.readouterr().out
    assert "branches: 1" in captured
    assert "anticommutant dimension (nilpotent part): 3" in captured
    assert "nilpotent block sizes: 3" in captured
    family = family_from_json(load_json(str(out)))
    assert family.frame == "jordan"
    assert family.parameters() == ("x", "y")


def test_solve_matrix_input_original_frame(tmp_path, capsys):
    problem = write(
        tmp_path / "problem.json",
        {
            "matrix": [["0", "1"], ["0", "0"]],
            "eigenvalues": ["0"],
        },
    )
    out = tmp_path / "family.json"
    assert main(["solve", problem, str(out)]) == 0
    family = family_from_json(load_json(str(out)))
    assert family.frame == "original"


def test_solve_nonsingular(tmp_path, capsys):
    problem = write(
        tmp_path / "problem.json",
        {"jordan": [{"eigenvalue": "2", "sizes": [1]}, {"eigenvalue": "3", "sizes": [1]}]},
    )
    out = tmp_path / "family.json"
    assert main(["solve", problem, str(out)]) == 0
    captured = capsys.readouterr().out
    assert "branches: 1" in captured
    assert "nilpotent block sizes: (none)" in captured
    family = family_from_json(load_json(str(out)))
    assert family.template.is_zero()
    assert family.branches[0].free_parameters == ()


def test_solve_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["solve", str(bad), str(tmp_path / "out.json")]) == 2


def test_solve_bad_eigenvalue_exit_3(tmp_path):
    problem = write(
        tmp_path / "problem.json",
        {"matrix": [["0", "1"], ["0", "0"]], "eigenvalues": ["5"]},
    )
    assert main(["solve", problem, str(tmp_path / "out.json")]) == 3


def test_solve_incomplete_spectrum_exit_3(tmp_path):
    problem = write(
        tmp_path / "problem.json",
        {
            "matrix": [["0", "0"], ["0", "1"]],
            "eigenvalues": ["0"],
        },
    )
    assert main(["solve", problem, str(tmp_path / "out.json")]) == 3


def test_solve_singular_w_exit_3(tmp_path):
    problem = write(
        tmp_path / "problem.json",
        {
            "jordan": [{"eigenvalue": "0", "sizes": [2]}],
            "w": [["1", "1"], ["1", "1"]],
        },
    )
    assert main(["solve", problem, str(tmp_path / "out.json")]) == 3


def test_depth_env_override(tmp_path, shift3_problem, monkeypatch):
    monkeypatch.setenv("YBX_DEPTH_LIMIT", "not a number")
    assert main(["solve", shift3_problem, str(tmp_path / "out.json")]) == 2
    monkeypatch.setenv("YBX_DEPTH_LIMIT", "4")
    assert main(["solve", shift3_problem, str(tmp_path / "out.json")]) == 0
    monkeypatch.delenv("YBX_DEPTH_LIMIT")
    assert main(["solve", shift3_problem, str(tmp_path / "out2.json"), "--depth", "2"]) == 0


def test_sample_verify_round_trip(tmp_path, shift3_problem, capsys):
    family_path = tmp_path / "family.json"
    assert main(["solve", shift3_problem, str(family_path), "--frame", "jordan"]) == 0
    sample_path = tmp_path / "k.json"
    assert main([
        "sample", str(family_path), "0", str(sample_path), "--set", "x=1/2", "--set", "y=-2i",
    ]) == 0
    matrix_path = write(
        tmp_path / "J.json", {"matrix": [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]}
    )
    assert main(["verify", str(matrix_path), str(sample_path)]) == 0
    captured = capsys.readouterr().out
    assert "equation residual A*X*A - X*A*X: zero" in captured
    assert "anti-commutation residual A*X + X*A: zero" in captured


def test_verify_failure_locates_entry(tmp_path, capsys):
    a = write(tmp_path / "a.json", {"matrix": [["1", "0"], ["0", "1"]]})
    assert main(["verify", a, a]) == 1
    captured = capsys.readouterr().out
    assert "equation residual A*X*A - X*A*X: zero" in captured
    assert "anti-commutation residual A*X + X*A: nonzero at (0, 0): 2" in captured


def test_verify_shape_error_exit_2(tmp_path):
    a = write(tmp_path / "a.json", {"matrix": [["1", "0"], ["0", "1"]]})
    b = write(tmp_path / "b.json", {"matrix": [["1"]]})
    assert main(["verify", a, b]) == 2


def test_sample_error_exit_codes(tmp_path, shift3_problem):
    family_path = tmp_path / "family.json"
    main(["solve", shift3_problem, str(family_path), "--frame", "jordan"])
    out = str(tmp_path / "k.json")
    assert main(["sample", str(family_path), "0", out, "--set", "x=1"]) == 1  # missing y
    assert main(["sample", str(family_path), "5", out, "--set", "x=1"]) == 2  # bad branch
    assert main(["sample", str(family_path), "0", out, "--set", "x"]) == 2  # bad flag
    assert main(["sample", str(family_path), "0", out, "--set", "nope=1"]) == 2  # unknown name


def test_sample_disequality_violation(tmp_path):
    problem = write(
        tmp_path / "problem.json", {"jordan": [{"eigenvalue": "0", "sizes": [4, 3]}]}
    )
    family_path = tmp_path / "family.json"
    assert main(["solve", problem, str(family_path), "--frame", "jordan"]) == 0
    family = family_from_json(load_json(str(family_path)))
    index = next(i for i, b in enumerate(family.branches) if b.disequalities)
    branch = family.branches[index]
    pinned = str(branch.disequalities[0])
    args = ["sample", str(family_path), str(index), str(tmp_path / "k.json")]
    for name in branch.free_parameters:
        args += ["--set", f"{name}={'0' if name == pinned else '1'}"]
    assert main(args) == 1


def test_anticommutant_command(tmp_path, capsys):
    left = write(tmp_path / "left.json", {"jordan": [{"eigenvalue": "0", "sizes": [3, 4]}]})
    out = tmp_path / "basis.json"
    assert main(["anticommutant", left, left, str(out)]) == 0
    captured = capsys.readouterr().out
    assert "dimension: 13" in captured
    data = load_json(str(out))
    assert data["dimension"] == 13
    assert len(data["basis"]) == 13
    assert data["left_dim"] == data["right_dim"] == 7


def test_anticommutant_trivial(tmp_path, capsys):
    left = write(tmp_path / "left.json", {"jordan": [{"eigenvalue": "1", "sizes": [3]}]})
    out = tmp_path / "basis.json"
    assert main(["anticommutant", left, left, str(out)]) == 0
    assert "dimension: 0" in capsys.readouterr().out


def test_anticommutant_mixed_pair(tmp_path, capsys):
    left = write(tmp_path / "left.json", {"jordan": [{"eigenvalue": "1", "sizes": [2]}]})
    right = write(tmp_path / "right.json", {"jordan": [{"eigenvalue": "-1", "sizes": [3]}]})
    out = tmp_path / "basis.json"
    assert main(["anticommutant", left, right, str(out)]) == 0
    assert "dimension: 2" in capsys.readouterr().out


def test_anticommutant_matrix_inputs(tmp_path, capsys):
    problem = write(
        tmp_path / "diag.json",
        {"matrix": [["2", "0"], ["0", "-2"]], "eigenvalues": ["2", "-2"]},
    )
    out = tmp_path / "basis.json"
    assert main(["anticommutant", problem, problem, str(out)]) == 0
    captured = capsys.readouterr().out
    assert "dimension: 2" in captured
    data = load_json(str(out))
    grids = [[[v for v in row] for row in g] for g in data["basis"]]
    assert [["0", "1"], ["0", "0"]] in grids and [["0", "0"], ["1", "0"]] in grids


def test_solve_two_block_matrix_input(tmp_path, capsys):
    # the 7x7 two-block nilpotent matrix fed as a plain matrix with the
    # single eigenvalue 0: exact Jordan computation recovers the block sizes
    rows = [["0"] * 7 for _ in range(7)]
    for i, j in ((0, 1), (1, 2), (3, 4), (4, 5), (5, 6)):
        rows[i][j] = "1"
    problem = write(tmp_path / "p.json", {"matrix": rows, "eigenvalues": ["0"]})
    out = tmp_path / "family.json"
    assert main(["solve", problem, str(out), "--frame", "jordan"]) == 0
    captured = capsys.readouterr().out
    assert "branches: 4" in captured
    assert "anticommutant dimension (nilpotent part): 13" in captured
    assert "nilpotent block sizes: 4 3" in captured


def test_example_enumeration(tmp_path, capsys):
    assert main(["example", "4.1", str(tmp_path / "out41")]) == 0
    report = (tmp_path / "out41" / "report.txt").read_text()
    assert "all checks passed" in report
    assert (tmp_path / "out41" / "problem.json").exists()
    assert (tmp_path / "out41" / "family_original.json").exists()
    capsys.readouterr()
    assert main(["example", "4.2", str(tmp_path / "out42")]) == 0
    report = (tmp_path / "out42" / "report.txt").read_text()
    assert "k22*k31 = 0" in report
    assert "all checks passed" in report


def test_example_unknown_exit_2(tmp_path):
    assert main(["example", "9.9", str(tmp_path / "nope")]) == 2


def test_family_files_round_trip_bytes(tmp_path, shift3_problem):
    family_path = tmp_path / "family.json"
    main(["solve", shift3_problem, str(family_path), "--frame", "jordan"])
    text = family_path.read_text()
    restored = dumps_canonical(json.loads(text))
    assert restored == text
