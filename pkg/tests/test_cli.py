"""Command-line behavior: output formats, exit codes, spec loading."""

import json

from starprod.cli import main
from starprod.lie import GradedLieAlgebra, Generator, sl2


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_text(capsys):
    code, out, err = _run(capsys, "validate", "--builtin", "sl2", "--param", "z=1")
    assert code == 0 and err == ""
    assert out.splitlines() == ["sl2: valid", "  character pairing at degree 1: nonsingular"]


def test_validate_json(capsys):
    code, out, _ = _run(
        capsys, "validate", "--builtin", "sl2", "--param", "z=5/3", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data == {"algebra": "sl2", "passed": True, "failures": [], "nonsingular": {"1": True}}


def test_validate_singular_character(capsys):
    code, out, _ = _run(
        capsys, "validate", "--builtin", "heisenberg", "--param", "n=1", "--param", "w=0"
    )
    assert code == 3
    assert "SINGULAR" in out


def test_pairing_text(capsys):
    code, out, _ = _run(
        capsys,
        "pairing", "--builtin", "virasoro", "--param", "delta=1", "--param", "c=1",
        "--degree", "2",
    )
    assert code == 0
    assert out == (
        "virasoro, degree 2\n"
        "basis: L-1^2, L-2\n"
        "  [4*λ+8*λ^2, -6*λ]\n"
        "  [6*λ, -9/2*λ]\n"
        "det = 18*λ^2-36*λ^3\n"
    )


def test_pairing_json(capsys):
    code, out, _ = _run(
        capsys,
        "pairing", "--builtin", "virasoro", "--param", "delta=1", "--param", "c=1",
        "--degree", "2", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["basis"] == {"minus": ["L-1^2", "L-2"], "plus": ["L1^2", "L2"]}
    assert data["matrix"] == [["4*λ+8*λ^2", "-6*λ"], ["6*λ", "-9/2*λ"]]
    assert data["det"] == "18*λ^2-36*λ^3"


def test_pairing_singular_exit(capsys):
    code, _, err = _run(
        capsys,
        "pairing", "--builtin", "heisenberg", "--param", "n=1", "--param", "w=0",
        "--degree", "1",
    )
    assert code == 3
    assert err.startswith("error:")


def test_pairing_window_exit(capsys):
    # an explicit cutoff is never widened, so degree 3 cannot be computed
    code, _, err = _run(
        capsys,
        "pairing", "--builtin", "virasoro", "--param", "delta=1", "--param", "c=1",
        "--degree", "3", "--cutoff", "2",
    )
    assert code == 4
    assert err.startswith("error:")


def test_pairing_order_flag(capsys):
    base = [
        "pairing", "--builtin", "virasoro", "--param", "delta=1", "--param", "c=1",
        "--degree", "4",
    ]
    _, out_desc, _ = _run(capsys, *base)
    _, out_asc, _ = _run(capsys, *base, "--order", "asc")
    assert "basis: L-1^4, L-2 L-1^2, L-3 L-1, L-2^2, L-4" in out_desc
    assert "basis: L-1^4, L-2 L-1^2, L-2^2, L-3 L-1, L-4" in out_asc


def test_star_text(capsys):
    code, out, _ = _run(capsys, "star", "--builtin", "sl2", "--param", "z=1")
    assert code == 0
    assert out == (
        "sl2: product series through ħ^3 (slots within ±3)\n"
        "  ħ^0: 1 · 1 ⊗ 1\n"
        "  ħ^1: -1 · f ⊗ e\n"
        "  ħ^2: 1/2 · f^2 ⊗ e^2\n"
        "  ħ^3: 1/2 · f^2 ⊗ e^2  +  -1/6 · f^3 ⊗ e^3\n"
    )


def test_star_truncated_header(capsys):
    code, out, _ = _run(
        capsys,
        "star", "--builtin", "virasoro", "--param", "delta=1", "--param", "c=1",
        "--max-degree", "3", "--cutoff", "2",
    )
    assert code == 0
    assert out.splitlines()[0] == "virasoro: product series through ħ^3 (slots within ±2)"


def test_star_json_deterministic(capsys):
    argv = ("star", "--builtin", "sl2", "--param", "z=1", "--format", "json")
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["orders"]["0"] == [{"coeff": "1", "left": [], "right": []}]
    assert data["orders"]["1"] == [{"coeff": "-1", "left": ["f"], "right": ["e"]}]


def test_verify_command(capsys):
    code, out, _ = _run(
        capsys, "verify", "--builtin", "sl2", "--param", "z=1", "--max-degree", "2"
    )
    assert code == 0
    assert out.splitlines()[0] == "verification of sl2"
    assert out.splitlines()[-1] == "OK"

    code, out, _ = _run(
        capsys,
        "verify", "--builtin", "heisenberg", "--param", "n=1", "--param", "w=1",
        "--max-degree", "2", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_spec_file(tmp_path, capsys):
    path = tmp_path / "algebra.json"
    path.write_text(json.dumps(sl2(2).to_json()))
    code, out, _ = _run(capsys, "validate", "--spec", str(path))
    assert code == 0
    assert "sl2: valid" in out


def test_spec_file_failing_validation(tmp_path, capsys):
    gens = [Generator(0, "f", -1), Generator(1, "h", 0), Generator(2, "e", 1)]
    brackets = {(2, 0): [(1, 1)], (1, 2): [(2, 3)], (1, 0): [(0, -2)]}
    bad = GradedLieAlgebra("bad", gens, brackets, {1: 1})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad.to_json()))
    code, out, _ = _run(capsys, "validate", "--spec", str(path))
    assert code == 2
    assert "INVALID" in out


def test_parse_errors(capsys):
    assert _run(capsys, "star")[0] == 5  # no algebra given
    assert _run(capsys)[0] == 5  # no subcommand
    assert _run(capsys, "validate", "--builtin", "sl2", "--param", "z=banana")[0] == 5
    assert _run(capsys, "validate", "--builtin", "sl2", "--param", "z")[0] == 5
    assert _run(capsys, "validate", "--builtin", "so8")[0] == 5  # not a choice
    assert _run(capsys, "validate", "--spec", "/no/such/file.json")[0] == 5
    code, _, err = _run(
        capsys, "validate", "--builtin", "sl2", "--param", "z=1", "--spec", "x.json"
    )
    assert code == 5 and "mutually exclusive" in err


def test_spec_with_param_rejected(tmp_path, capsys):
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(sl2(1).to_json()))
    code, _, err = _run(capsys, "validate", "--spec", str(path), "--param", "z=2")
    assert code == 5
    assert "--param only applies to --builtin" in err
