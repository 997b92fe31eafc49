import json
import math

import pytest

from schwinger.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degeneracy_csv_matches_three_mode_formula(capsys):
    code, out, _ = run_cli(
        capsys, "degeneracy", "--n", "3", "--N", "6", "--statistics", "boson"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "two_lz,lz,g"
    rows = {int(r.split(",")[0]): int(r.split(",")[2]) for r in lines[1:]}
    for lz2, g in rows.items():
        lz = abs(lz2) // 2
        assert g == 1 + (6 - lz) // 2
    assert set(rows) == set(range(-12, 13, 2))


def test_crossover_commands(capsys):
    code, out, _ = run_cli(capsys, "crossover", "--n", "4", "--statistics", "boson")
    assert code == 0 and out.strip() == "22"
    code, out, _ = run_cli(
        capsys, "crossover", "--n", "3", "--statistics", "boson", "--N-max", "1000"
    )
    assert code == 0 and out.strip() == "none (N <= 1000)"
    code, out, _ = run_cli(
        capsys, "crossover", "--statistics", "fermion", "--scan-modes", "16"
    )
    assert code == 0 and "n=12" in out


def test_basis_table_contains_known_row(capsys):
    code, out, _ = run_cli(
        capsys, "basis", "--n", "3", "--N", "3", "--statistics", "boson",
        "--format", "table",
    )
    assert code == 0
    assert "|3,3,1;C=0> = +0.894427191000|1,2,0> +0.447213595500|2,0,1>" in out


def test_basis_json_round_trips(capsys):
    code, out, _ = run_cli(
        capsys, "basis", "--n", "2", "--N", "2", "--statistics", "boson",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["sector"] == {"n": 2, "N": 2, "statistics": "boson"}
    assert payload["labels"] == [[4, 4, 4, 0], [4, 4, 0, 0], [4, 4, -4, 0]]
    assert payload["matrix"]["re"] == [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
    ]


def test_basis_csv_framing(capsys):
    code, out, _ = run_cli(
        capsys, "basis", "--n", "3", "--N", "1", "--statistics", "fermion",
        "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,two_l,l,two_lz,lz,C,occupation,re,im"
    assert lines[1] == "1,2,1,2,1,0,1 0 0,1.0,0.0"


def test_threemode_single_state(capsys):
    code, out, _ = run_cli(
        capsys, "threemode", "--N", "3", "--l", "1", "--lz", "0", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,l,lz,occupation,amplitude"
    rows = {r.split(",")[3]: float(r.split(",")[4]) for r in lines[1:]}
    assert rows["0 3 0"] == pytest.approx(math.sqrt(3 / 5))
    assert rows["1 1 1"] == pytest.approx(-math.sqrt(2 / 5))


def test_threemode_table_counts(capsys):
    code, out, _ = run_cli(capsys, "threemode", "--N", "2", "--table")
    assert code == 0
    assert len(out.strip().splitlines()) == 6


def test_qbinom_verify(capsys):
    code, out, _ = run_cli(capsys, "qbinom", "--j", "6", "--k", "3", "--verify")
    assert code == 0
    assert "degeneracy identity: PASS" in out


def test_distribution_marginal(capsys):
    code, out, _ = run_cli(
        capsys, "distribution", "--state", "ghz", "--N", "2", "--axis", "z",
        "--marginal-lj",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "two_lz,lz,p"
    assert len(lines) == 2 and lines[1].startswith("0,0,")
    assert float(lines[1].split(",")[2]) == pytest.approx(1.0, abs=1e-10)


def test_distribution_closed_form_agrees(capsys):
    _, generic, _ = run_cli(
        capsys, "distribution", "--state", "w", "--N", "3", "--axis", "x"
    )
    _, closed, _ = run_cli(
        capsys, "distribution", "--state", "w", "--N", "3", "--axis", "x",
        "--closed-form",
    )

    def parse(text):
        rows = {}
        for line in text.strip().splitlines()[1:]:
            parts = line.split(",")
            rows[(int(parts[0]), int(parts[2]))] = float(parts[4])
        return rows

    a, b = parse(generic), parse(closed)
    assert set(a) == set(b)
    for key in a:
        assert a[key] == pytest.approx(b[key], abs=1e-9)


def test_determinism_bytes(capsys):
    outputs = []
    for _ in range(2):
        code, out, _ = run_cli(
            capsys, "basis", "--n", "4", "--N", "3", "--statistics", "boson",
            "--format", "json",
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["basis", "--n", "3"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["nonsense"])
    assert err.value.code == 1


def test_validation_error_exit_code(capsys):
    code = main(["basis", "--n", "3", "--N", "5", "--statistics", "fermion"])
    assert code == 2
    _, err = capsys.readouterr().out, capsys.readouterr().err


def test_crossover_usage_without_n(capsys):
    code = main(["crossover", "--statistics", "boson"])
    assert code == 1


def test_env_var_overrides_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("SCHWINGER_TOL", "1e-11")
    code, out, _ = run_cli(
        capsys, "basis", "--n", "2", "--N", "1", "--statistics", "boson",
        "--format", "json",
    )
    assert code == 0
    monkeypatch.setenv("SCHWINGER_TOL", "not-a-number")
    with pytest.raises(SystemExit):
        main(["basis", "--n", "2", "--N", "1"])


def test_verify_command_passes(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("checks passed")
