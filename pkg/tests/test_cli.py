import json
import random

import pytest
import yaml

from conftest import SAMPLE_EDGES, SMALL_EDGES, edges_doc
from grove_moves.documents import grove_to_doc
from grove_moves.grove import target_grove
from grove_moves.spin import legal_successors


@pytest.fixture
def sample_file(write_doc):
    return write_doc("sample.json", edges_doc(4, SAMPLE_EDGES))


@pytest.fixture
def small_file(write_doc):
    return write_doc("small.json", edges_doc(2, SMALL_EDGES))


def test_no_command(run_cli):
    code, out, _ = run_cli([])
    assert code == 2
    assert "usage:" in out


def test_version(run_cli):
    code, out, _ = run_cli(["--version"])
    assert code == 0
    assert out.startswith("grove-moves ")


def test_usage_error(run_cli):
    code, _, err = run_cli(["target"])
    assert code == 2
    assert err.startswith("error: usage:")


class TestTarget:
    def test_json(self, run_cli):
        code, out, _ = run_cli(["target", "-n", "2"])
        assert code == 0
        assert json.loads(out) == {
            "n": 2,
            "edges": [[[-1, -1], [1, -1]], [[0, 0], [1, -1]]],
        }

    def test_yaml(self, run_cli):
        code, out, _ = run_cli(["target", "-n", "2", "--format", "yaml"])
        assert code == 0
        assert yaml.safe_load(out)["n"] == 2

    def test_bad_size(self, run_cli):
        code, out, err = run_cli(["target", "-n", "0"])
        assert code == 2
        assert out == ""
        assert err.startswith("error: board:")

    def test_output_file(self, run_cli, tmp_path):
        path = tmp_path / "target.json"
        code, out, err = run_cli(["target", "-n", "3", "-o", str(path)])
        assert code == 0
        assert out == ""
        assert f"Output written to: {path}" in err
        assert json.loads(path.read_text())["n"] == 3


class TestGroveCommands:
    def test_validate_valid(self, run_cli, sample_file):
        code, out, _ = run_cli(["validate", "-i", sample_file])
        assert code == 0
        assert json.loads(out)["valid"] is True

    def test_validate_invalid(self, run_cli, write_doc):
        path = write_doc("empty.json", {"n": 2, "edges": []})
        code, out, _ = run_cli(["validate", "-i", path])
        assert code == 1
        report = json.loads(out)
        assert report["valid"] is False
        assert report["violations"][0]["axiom"] == "connectivity"

    def test_to_ast(self, run_cli, sample_file):
        code, out, _ = run_cli(["to-ast", "-i", sample_file])
        assert code == 0
        assert json.loads(out) == {"n": 4, "rows": [[0, 1, 0, 0], [0, -1, 1], [1, 0], [0]]}

    def test_to_ast_rejects_non_grove(self, run_cli, write_doc):
        path = write_doc("empty.json", {"n": 2, "edges": []})
        code, _, err = run_cli(["to-ast", "-i", path])
        assert code == 1
        assert err.startswith("error: invalid-grove:")

    def test_diff(self, run_cli, sample_file):
        code, out, _ = run_cli(["diff", "-i", sample_file])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["red"]) == len(doc["black"]) == len(doc["blue"]) == 4
        assert [[-2, 0], [-1, -1]] in doc["black"]

    def test_malformed_document(self, run_cli, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli(["diff", "-i", str(path)])
        assert code == 2
        assert err.startswith("error: malformed-document:")


class TestSpins:
    def test_apply_spin(self, run_cli, small_file):
        code, out, _ = run_cli(
            ["apply-spin", "-i", small_file, "--pivot", "0,0", "--from", "SW", "--to", "SE"]
        )
        assert code == 0
        assert json.loads(out)["edges"] == [[[-1, -1], [1, -1]], [[0, 0], [1, -1]]]

    def test_illegal_spin(self, run_cli, small_file):
        code, _, err = run_cli(
            ["apply-spin", "-i", small_file, "--pivot", "0,0", "--from", "SW", "--to", "W"]
        )
        assert code == 1
        assert err.startswith("error: illegal-spin:")
        assert "partition" in err

    def test_bad_pivot(self, run_cli, small_file):
        code, _, err = run_cli(
            ["apply-spin", "-i", small_file, "--pivot", "0", "--from", "SW", "--to", "SE"]
        )
        assert code == 2
        assert "I,J" in err

    def test_reduce_clockwise_with_stats(self, run_cli, small_file):
        code, out, _ = run_cli(["reduce", "-i", small_file, "--clockwise", "--stats"])
        assert code == 0
        doc = json.loads(out)
        assert doc["spins"] == [
            {"pivot": [1, -1], "from": "W", "to": "NW"},
            {"pivot": [-1, -1], "from": "NE", "to": "E"},
        ]
        assert doc["stats"]["clockwise"] is True
        assert doc["stats"]["phases"]["cycle"] == 1

    def test_reduce_then_replay(self, run_cli, sample_file, tmp_path):
        seq_path = tmp_path / "seq.json"
        code, _, _ = run_cli(["reduce", "-i", sample_file, "-o", str(seq_path)])
        assert code == 0
        code, out, _ = run_cli(["replay", "-i", sample_file, "-s", str(seq_path)])
        assert code == 0
        target = run_cli(["target", "-n", "4"])[1]
        assert json.loads(out) == json.loads(target)

    def test_reduce_size_seven(self, run_cli, write_doc):
        rng = random.Random(7)
        g = target_grove(7)
        for _ in range(40):
            _, g = rng.choice(legal_successors(g))
        path = write_doc("seven.json", grove_to_doc(g))
        code, out, err = run_cli(["reduce", "-i", path, "--stats"])
        assert code == 0, err
        doc = json.loads(out)
        assert doc["n"] == 7
        assert doc["stats"]["length"] == len(doc["spins"])

    def test_replay_failure(self, run_cli, small_file, write_doc):
        spin = {"pivot": [0, 0], "from": "SW", "to": "SE"}
        seq = write_doc("seq.json", {"n": 2, "spins": [spin, spin]})
        code, _, err = run_cli(["replay", "-i", small_file, "-s", seq])
        assert code == 1
        assert err.startswith("error: replay: Spin 1 failed")

    def test_replay_size_mismatch(self, run_cli, small_file, write_doc):
        seq = write_doc("seq.json", {"n": 3, "spins": []})
        code, _, err = run_cli(["replay", "-i", small_file, "-s", seq])
        assert code == 2
        assert "size 3" in err

    def test_verbose_logs_to_stderr(self, run_cli, small_file):
        code, out, err = run_cli(["reduce", "-i", small_file, "-v"])
        assert code == 0
        assert "INFO" in err
        assert "Reduced grove of size 2" in err
        assert "INFO" not in out


class TestEnumerateAndVerify:
    def test_count_only(self, run_cli):
        code, out, _ = run_cli(["enumerate", "-n", "3", "--count-only"])
        assert code == 0
        assert json.loads(out) == {"n": 3, "count": 9}

    def test_asts(self, run_cli):
        code, out, _ = run_cli(["enumerate", "-n", "2", "--asts"])
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 3
        assert [[1, 0], [0]] in doc["asts"]

    def test_groves_listed(self, run_cli):
        doc = json.loads(run_cli(["enumerate", "-n", "2"])[1])
        assert len(doc["groves"]) == 3

    def test_budget(self, run_cli):
        code, _, err = run_cli(["enumerate", "-n", "6", "--count-only"])
        assert code == 2
        assert err.startswith("error: budget:")

    def test_verify_moves(self, run_cli):
        code, out, _ = run_cli(["verify", "-n", "2", "--moves"])
        assert code == 0
        doc = json.loads(out)
        assert doc["summary"] == "connected, 3 nodes"
        assert doc["diameter"] == 1

    def test_verify_spins(self, run_cli):
        code, out, _ = run_cli(["verify", "-n", "3", "--spins"])
        assert code == 0
        doc = json.loads(out)
        assert doc["connected"] is True
        assert doc["grove_count"] == 9

    def test_verify_injectivity(self, run_cli):
        code, out, _ = run_cli(["verify", "-n", "2", "--injectivity"])
        assert code == 0
        assert json.loads(out)["injective"] is True

    def test_verify_modes_exclusive(self, run_cli):
        code, _, _ = run_cli(["verify", "-n", "2", "--moves", "--spins"])
        assert code == 2

    def test_move_graph_budget(self, run_cli):
        code, _, err = run_cli(["verify", "-n", "5"])
        assert code == 2
        assert "move_graph_budget" in err


class TestMovePathAndCube:
    def test_move_path(self, run_cli, write_doc):
        a = write_doc("a.json", {"n": 2, "rows": [[0, 1], [0]]})
        b = write_doc("b.json", {"n": 2, "rows": [[1, 0], [0]]})
        code, out, _ = run_cli(["move-path", "-a", a, "-b", b])
        assert code == 0
        assert json.loads(out)["moves"] == [
            {"row": 1, "col": 1, "kind": "M1", "sign": "subtract"}
        ]

    def test_move_path_not_an_ast(self, run_cli, write_doc):
        a = write_doc("a.json", {"n": 2, "rows": [[1, -1], [1]]})
        b = write_doc("b.json", {"n": 2, "rows": [[1, 0], [0]]})
        code, _, err = run_cli(["move-path", "-a", a, "-b", b])
        assert code == 1
        assert err.startswith("error: not-an-ast:")

    def test_cube(self, run_cli):
        code, out, _ = run_cli(["cube", "--level", "3", "--count-only"])
        assert code == 0
        doc = json.loads(out)
        assert doc["term_count"] == 9
        assert doc["cell"] == [1, 1, 1]
        assert "exponent_patterns" not in doc

    def test_cube_bad_level(self, run_cli):
        code, _, err = run_cli(["cube", "--level", "0"])
        assert code == 2
        assert err.startswith("error: recurrence:")


class TestRender:
    def test_text(self, run_cli, write_doc):
        path = write_doc("target.json", edges_doc(2, [((0, 0), (1, -1)), ((-1, -1), (1, -1))]))
        code, out, _ = run_cli(["render", "-i", path, "--format", "text"])
        assert code == 0
        assert out.splitlines()[2] == "  o---o"

    def test_svg_diff(self, run_cli, sample_file):
        code, out, _ = run_cli(["render", "-i", sample_file, "--diff"])
        assert code == 0
        assert out.startswith("<?xml")
        assert 'stroke="#FF0000"' in out


class TestConfig:
    def test_budget_from_config(self, run_cli, tmp_path):
        config = tmp_path / "settings.yaml"
        config.write_text("settings:\n  enumeration_budget: 2\n")
        code, _, err = run_cli(["enumerate", "-n", "3", "--config", str(config)])
        assert code == 2
        assert "limit 2" in err

    def test_bad_config(self, run_cli, tmp_path):
        config = tmp_path / "settings.yaml"
        config.write_text("unknown_key: 1\n")
        code, _, err = run_cli(["target", "-n", "2", "--config", str(config)])
        assert code == 2
        assert err.startswith("error: configuration:")

    def test_config_from_environment(self, run_cli, tmp_path, monkeypatch):
        config = tmp_path / "settings.yaml"
        config.write_text("recurrence_budget: 2\n")
        monkeypatch.setenv("GROVE_MOVES_CONFIG", str(config))
        code, _, err = run_cli(["cube", "--level", "3"])
        assert code == 2
        assert "recurrence_budget" in err
