import json

import pytest

from zkhomology import cli
from zkhomology.corpus import entry, names, to_input_dict
from zkhomology.jsonio import (
    action_to_dict,
    dump_json,
    load_input,
    parse_input,
    triple_to_dict,
)
from zkhomology.transfer import build_triple


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def path_file(tmp_path):
    return _write(tmp_path, "path.json", to_input_dict(entry("path_flip")))

@pytest.fixture
def antipodal_file(tmp_path):
    return _write(tmp_path, "anti.json", to_input_dict(entry("cycle4_antipodal")))


@pytest.fixture
def triple_file(tmp_path, corpus_actions):
    tri = build_triple(corpus_actions["path_flip"])
    return _write(tmp_path, "triple.json", triple_to_dict(tri))


class TestCheck:
    def test_regular_exit_zero(self, path_file, capsys):
        assert cli.run(["check", path_file]) == 0
        out = capsys.readouterr().out
        assert "regular" in out

    def test_non_regular_exit_three_with_witness(self, antipodal_file, capsys):
        assert cli.run(["check", antipodal_file]) == 3
        out = capsys.readouterr().out
        assert "NON-REGULAR" in out and "(0, 1)" in out and "(0, 3)" in out

    def test_wrong_order_perm_exit_two(self, tmp_path, capsys):
        bad = {"k": 3, "simplices": [[0, 1, 2]], "generator": [1, 0, 2]}
        assert cli.run(["check", _write(tmp_path, "bad.json", bad)]) == 2

    def test_malformed_json_exit_two(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert cli.run(["check", str(path)]) == 2

    def test_missing_file_exit_two(self, tmp_path):
        assert cli.run(["check", str(tmp_path / "nope.json")]) == 2

    def test_valid_triple(self, triple_file, capsys):
        assert cli.run(["check", triple_file]) == 0
        assert "valid" in capsys.readouterr().out


class TestHomology:
    def test_path_compressed_table(self, path_file, capsys):
        assert cli.run(["homology", path_file, "--mode", "compressed"]) == 0
        out = capsys.readouterr().out
        assert "compressed betti: [1, 0]" in out
        assert "[1]" in out  # snf lift for d=1

    def test_path_both_match(self, path_file, capsys):
        assert cli.run(["homology", path_file, "--mode", "both"]) == 0
        out = capsys.readouterr().out
        assert "MATCH" in out

    def test_json_schema(self, path_file, capsys):
        assert cli.run(["homology", path_file, "--mode", "compressed",
                        "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["field"] == "Q"
        assert data["betti"] == [1, 0]
        assert data["per_dim"][1] == {
            "d": 1, "dimC": 2, "rank": 2, "snf_lifts": ["1"]}

    def test_octagon_both_all_fields(self, tmp_path, capsys):
        f = _write(tmp_path, "oct.json", to_input_dict(entry("cycle8_rot4")))
        for field in ("Q", "Fp:2", "Fp:3", "Fp:5"):
            assert cli.run(["homology", f, "--mode", "both", "--field", field]) == 0
            assert "MATCH" in capsys.readouterr().out

    def test_non_regular_needs_flag(self, antipodal_file, capsys):
        assert cli.run(["homology", antipodal_file, "--mode", "compressed"]) == 3

    def test_regularize_flag(self, antipodal_file, capsys):
        assert cli.run(["homology", antipodal_file, "--mode", "both",
                        "--regularize"]) == 0
        out = capsys.readouterr().out
        assert "[1, 1]" in out and "MATCH" in out

    def test_direct_mode_ignores_regularity(self, antipodal_file, capsys):
        assert cli.run(["homology", antipodal_file, "--mode", "direct"]) == 0
        assert "direct betti: [1, 1]" in capsys.readouterr().out

    def test_bad_field_exit_two(self, path_file):
        assert cli.run(["homology", path_file, "--field", "Fp:6"]) == 2

    def test_non_coprime_generator_exit_two(self, tmp_path):
        f = _write(tmp_path, "c9.json", to_input_dict(entry("cycle9_rot3")))
        assert cli.run(["homology", f, "--generator", "0"]) == 2

    def test_lift_flag(self, path_file, capsys):
        for lift in ("lex-min", "lex-max"):
            assert cli.run(["homology", path_file, "--mode", "compressed",
                            "--lift", lift]) == 0
            assert "betti: [1, 0]" in capsys.readouterr().out

    def test_triple_input_compressed_only(self, triple_file, capsys):
        assert cli.run(["homology", triple_file, "--mode", "compressed"]) == 0
        assert "betti: [1, 0]" in capsys.readouterr().out
        assert cli.run(["homology", triple_file, "--mode", "both"]) == 2
        assert cli.run(["homology", triple_file, "--mode", "direct"]) == 2


class TestVerify:
    def test_corpus_entry_passes(self, path_file, capsys):
        assert cli.run(["verify", path_file]) == 0
        out = capsys.readouterr().out
        assert "all checks passed" in out
        assert "FAIL" not in out

    def test_k1_trivially_passes(self, tmp_path, capsys):
        f = _write(tmp_path, "triv.json", to_input_dict(entry("trivial_k1_octagon")))
        assert cli.run(["verify", f]) == 0

    def test_non_regular_without_flag(self, antipodal_file):
        assert cli.run(["verify", antipodal_file]) == 3

    def test_non_regular_with_flag(self, antipodal_file, capsys):
        assert cli.run(["verify", antipodal_file, "--regularize"]) == 0

    def test_corrupted_triple_coset_failure(self, tmp_path, corpus_actions, capsys):
        tri = build_triple(corpus_actions["path_flip"])
        body = triple_to_dict(tri)
        body["triple"]["Tstar"]["0,1|1"] = [1]  # no longer a coset of S([1])
        f = _write(tmp_path, "tampered.json", body)
        assert cli.run(["verify", f]) == 4
        out = capsys.readouterr().out
        assert "FAIL triple-structure" in out and "coset" in out

    def test_triple_verify_json(self, triple_file, capsys):
        assert cli.run(["verify", triple_file, "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True
        assert all(c["ok"] for c in data["checks"])


class TestCorpusCommand:
    def test_list(self, capsys):
        assert cli.run(["corpus", "--list"]) == 0
        out = capsys.readouterr().out
        for name in names():
            assert name in out

    def test_write_and_use(self, tmp_path, capsys):
        target = tmp_path / "out.json"
        assert cli.run(["corpus", "two_triangles_swap", "-o", str(target)]) == 0
        capsys.readouterr()
        assert cli.run(["homology", str(target), "--mode", "both"]) == 0
        assert "MATCH" in capsys.readouterr().out

    def test_unknown_name(self):
        assert cli.run(["corpus", "nope"]) == 2


class TestRoundTrip:
    def test_action_files(self, tmp_path, corpus_actions):
        for name, action in corpus_actions.items():
            data = to_input_dict(entry(name))
            kind, parsed = parse_input(data)
            assert kind == "action"
            assert action_to_dict(parsed) == json.loads(dump_json(data))

    def test_triple_files(self, tmp_path, corpus_actions):
        for action in corpus_actions.values():
            tri = build_triple(action)
            body = triple_to_dict(tri)
            kind, parsed = parse_input(json.loads(dump_json(body)))
            assert kind == "triple"
            parsed.validate()
            assert triple_to_dict(parsed) == body

    def test_load_input_roundtrip_on_disk(self, tmp_path):
        for name in ("path_flip", "cycle9_rot3", "trivial_k2_triangle"):
            path = _write(tmp_path, f"{name}.json", to_input_dict(entry(name)))
            kind, action = load_input(path)
            path2 = _write(tmp_path, f"{name}2.json", action_to_dict(action))
            kind2, action2 = load_input(path2)
            assert action_to_dict(action2) == action_to_dict(action)
