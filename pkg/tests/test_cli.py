import json
import subprocess
import sys

import numpy as np
import pytest

from symgame.cli import main
from symgame.check import build_minimal_system
from symgame.game import FiniteGame, load_game, save_game
from symgame.linalg import exact_rank, read_triplets

from _oracles import EXAMPLE1_ROWS, example_game, family_matrix


@pytest.fixture
def example1_file(tmp_path):
    path = tmp_path / "example1.json"
    path.write_bytes(save_game(FiniteGame(3, 2, example_game(EXAMPLE1_ROWS, [1, 2, 3, 4, 5, 6]))))
    return path


@pytest.fixture
def perturbed_file(tmp_path):
    g = FiniteGame(3, 2, example_game(EXAMPLE1_ROWS, [1, 2, 3, 4, 5, 6])).with_payoff(1, 1, 2)
    path = tmp_path / "perturbed.json"
    path.write_bytes(save_game(g))
    return path


class TestCheck:
    def test_symmetric_exit_zero(self, example1_file, capsys):
        assert main(["check", str(example1_file)]) == 0
        assert "symmetric: yes" in capsys.readouterr().out

    def test_perturbed_exit_one_with_witness(self, perturbed_file, capsys):
        assert main(["check", str(perturbed_file), "--method", "minimal"]) == 1
        out = capsys.readouterr().out
        assert "symmetric: no" in out and "chain(i=1): V_1[1] - V_2[1] = 1" in out

    @pytest.mark.parametrize("method", ["prop1", "minimal", "both", "full"])
    def test_methods_json(self, perturbed_file, capsys, method):
        assert main(["check", str(perturbed_file), "--method", method, "--format", "json"]) == 1
        doc = json.loads(capsys.readouterr().out)
        assert all(not r["symmetric"] and r["violations"] for r in doc["reports"])

    def test_exact_flag(self, example1_file, capsys):
        assert main(["check", str(example1_file), "--exact", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["reports"][0]["max_residual"] == 0

    def test_missing_file(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "nope.json")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"players": 3, "strategies": 2, "payoffs": [[1,2,3,4,5,6,7]]}')
        assert main(["check", str(bad)]) == 2

    @pytest.mark.parametrize("tol", ["0", "-1", "abc", "nan"])
    def test_bad_tolerance(self, example1_file, tol):
        assert main(["check", str(example1_file), "--tol", tol]) == 2

    def test_oracle_check(self, example1_file, perturbed_file, capsys):
        assert main(["oracle-check", str(example1_file)]) == 0
        assert main(["oracle-check", str(perturbed_file), "--format", "json"]) == 1
        out = capsys.readouterr().out
        doc = json.loads(out[out.index("{"):])
        assert doc["witness"]["sigma"] == [1, 3, 2] or doc["witness"]["sigma"][0] != 1
        assert main(["oracle-check", str(perturbed_file), "--generators-only"]) == 1


class TestDim:
    def test_four_two(self, capsys):
        assert main(["dim", "4", "2", "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["dimension"] == 8

    def test_three_two(self, capsys):
        assert main(["dim", "3", "2", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert (doc["dimension"], doc["minimal_system_rows"]) == (6, 18)
        assert exact_rank(build_minimal_system(3, 2)) == 18

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_two_players(self, k, capsys):
        assert main(["dim", "2", str(k), "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["dimension"] == k * k

    def test_human_pattern(self, capsys):
        assert main(["dim", "3", "2"]) == 0
        out = capsys.readouterr().out
        assert "V_1: [a1 a3 a3 a5 a2 a4 a4 a6]" in out
        assert "V_3: [a1 a2 a3 a4 a3 a4 a5 a6]" in out

    def test_human_pattern_suppressed_when_large(self, capsys):
        assert main(["dim", "5", "3"]) == 0
        assert "pattern" not in capsys.readouterr().out

    def test_bad_args(self):
        assert main(["dim", "1", "2"]) == 2
        assert main(["dim"]) == 2


class TestExports:
    def test_basis_3_2(self, tmp_path, capsys):
        out = tmp_path / "b.txt"
        classes = tmp_path / "classes.json"
        assert main(["basis", "3", "2", "--out", str(out), "--classes", str(classes)]) == 0
        header, mat = read_triplets(out.read_bytes())
        assert mat.shape == (24, 6) and header["n"] == 3
        np.testing.assert_array_equal(mat.toarray(), family_matrix(EXAMPLE1_ROWS))
        assert len(json.loads(classes.read_text())) == 6

    def test_basis_2_2(self, tmp_path):
        out = tmp_path / "b.txt"
        assert main(["basis", "2", "2", "--out", str(out)]) == 0
        assert read_triplets(out.read_bytes())[1].shape == (8, 4)

    def test_system_3_2(self, tmp_path):
        out = tmp_path / "s.txt"
        assert main(["system", "3", "2", "--out", str(out)]) == 0
        header, mat = read_triplets(out.read_bytes())
        assert mat.shape == (18, 24) and exact_rank(mat) == 18
        assert header["kind"] == "minimal_system"

    def test_full_system_kind(self, tmp_path):
        out = tmp_path / "s.txt"
        assert main(["system", "3", "2", "--kind", "full", "--out", str(out)]) == 0
        assert read_triplets(out.read_bytes())[1].shape == (24, 24)

    @pytest.mark.parametrize("cmd", [["basis", "3", "3"], ["system", "4", "2"], ["generate", "3", "2"]])
    def test_deterministic(self, tmp_path, cmd):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(cmd + ["--out", str(a)]) == 0
        assert main(cmd + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_size_cap_env(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SYMGAME_SIZE_CAP", "10")
        assert main(["basis", "3", "2", "--out", str(tmp_path / "x")]) == 2
        assert "size cap" in capsys.readouterr().err


class TestProjectGenerate:
    def test_symmetric_distance_zero(self, example1_file, tmp_path, capsys):
        out = tmp_path / "p.json"
        assert main(["project", str(example1_file), "--out", str(out), "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["distance"] == 0
        assert load_game(out.read_bytes()) == load_game(example1_file.read_bytes())

    def test_perturbed(self, perturbed_file, tmp_path, capsys):
        out = tmp_path / "p.json"
        assert main(["project", str(perturbed_file), "--out", str(out), "--format", "json"]) == 0
        dist = json.loads(capsys.readouterr().out)["distance"]
        # one of three equal entries raised by 1: residual (2/3, -1/3, -1/3)
        assert dist == pytest.approx((2 / 3) ** 0.5, rel=1e-12)
        assert main(["check", str(out)]) == 0
        again = tmp_path / "pp.json"
        assert main(["project", str(out), "--out", str(again)]) == 0
        np.testing.assert_allclose(load_game(again.read_bytes()).payoffs, load_game(out.read_bytes()).payoffs,
                                   atol=1e-12)

    def test_project_to_stdout(self, perturbed_file, capsys):
        assert main(["project", str(perturbed_file), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["game"]["players"] == 3

    def test_generate_round_trip(self, tmp_path):
        out = tmp_path / "g.json"
        assert main(["generate", "3", "3", "--seed", "4", "--out", str(out)]) == 0
        g = load_game(out.read_bytes(), exact=True)
        assert (g.n, g.k) == (3, 3)
        assert main(["check", str(out)]) == 0
        assert main(["oracle-check", str(out)]) == 0

    def test_generate_real(self, tmp_path):
        out = tmp_path / "g.json"
        assert main(["generate", "4", "2", "--real", "--seed", "1", "--out", str(out)]) == 0
        assert main(["check", str(out), "--method", "both"]) == 0

    def test_generate_bad_range(self):
        assert main(["generate", "3", "2", "--low", "5", "--high", "1"]) == 2


def test_module_entry_point(example1_file):
    proc = subprocess.run([sys.executable, "-m", "symgame", "check", str(example1_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
