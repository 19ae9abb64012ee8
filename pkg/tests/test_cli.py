import json

import jsonschema
import pytest

from sttt.census import classes_from_jsonl, parse_census_text
from sttt.checks import run_suite
from sttt.cli import main

from importlib import resources

SCHEMA = json.loads(
    resources.files("sttt").joinpath("data/cli_output.schema.json").read_text("utf-8")
)


def validate(payload) -> None:
    jsonschema.validate(payload, SCHEMA)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_square_grid(capsys):
    code, out, _ = run(capsys, "square", "--n", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == " 1 16 15 14 13"
    assert lines[4] == " 5  6  7  8  9"


def test_square_json_schema(capsys):
    code, out, _ = run(capsys, "square", "--n", "5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["labels"][:5] == [1, 16, 15, 14, 13]
    assert payload["layers"][0] == [25]
    assert payload["layers"][2] == list(range(1, 17))


def test_square_invalid_size_is_domain_error(capsys):
    code, _, err = run(capsys, "square", "--n", "0")
    assert code == 1
    assert "error" in err


def test_usage_errors_exit_64(capsys):
    assert main(["square"]) == 64  # missing --n
    capsys.readouterr()
    assert main(["no-such-command"]) == 64
    capsys.readouterr()
    assert main(["group", "--n", "2", "--bogus"]) == 64
    capsys.readouterr()


def test_group_text_with_verification(capsys):
    code, out, _ = run(capsys, "group", "--n", "2", "--verify")
    assert code == 0
    assert "m = 4" in out
    assert "sigma = (1 2 3 4)" in out
    assert "rho = (2 4)" in out
    assert "FAIL" not in out


def test_group_json_schema(capsys):
    code, out, _ = run(capsys, "group", "--n", "3", "--verify", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["m"] == 8
    assert payload["verification"]["ok"] is True


def test_group_trivial_size_reports(capsys):
    code, out, _ = run(capsys, "group", "--n", "1", "--verify")
    assert code == 0
    assert "trivial" in out


def test_board_act_golden(capsys):
    code, out, _ = run(
        capsys,
        "board", "act", "--n", "2",
        "--bits", "1001000000001001", "--element", "1,0",
    )
    assert code == 0
    assert out.strip() == "0000011001100000"


def test_board_act_json_schema(capsys):
    code, out, _ = run(
        capsys,
        "board", "act", "--n", "2",
        "--bits", "1001000000001001", "--element", "1,0",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["result"] == "0000011001100000"


def test_board_act_bad_bits(capsys):
    code, _, err = run(
        capsys, "board", "act", "--n", "2", "--bits", "01", "--element", "0,0"
    )
    assert code == 1
    assert "16 characters" in err


def test_board_orbit_json(capsys):
    code, out, _ = run(capsys, "board", "orbit", "--bits", "1001000000001001")
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["size"] == 2
    assert payload["canonical"] == "0000011001100000"
    assert payload["orbit"] == ["0000011001100000", "1001000000001001"]


def test_game_replay_example(capsys):
    code, out, _ = run(
        capsys, "game", "replay", "--n", "2", "--moves", "3:1,1:1,1:3,3:3"
    )
    assert code == 0
    assert "terminal: player 2 completed a board line and loses" in out
    assert out.strip().endswith("final: 1001000000001001")


def test_game_replay_json_schema(capsys):
    code, out, _ = run(
        capsys,
        "game", "replay", "--n", "2", "--moves", "3:1,1:1,1:3,3:3", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["terminal"] is True
    assert payload["loser"] == 2
    assert payload["final_bits"] == "1001000000001001"
    assert [s["mark_placed"] for s in payload["steps"]] == [False, False, True, True]


def test_game_replay_invalid_is_domain_error(capsys):
    code, out, _ = run(capsys, "game", "replay", "--n", "2", "--moves", "3:1,2:2")
    assert code == 1
    assert "invalid at move 2" in out
    code, out, _ = run(
        capsys,
        "game", "replay", "--n", "2", "--moves", "3:1,2:2", "--format", "json",
    )
    assert code == 1
    payload = json.loads(out)
    validate(payload)
    assert payload["valid"] is False
    assert payload["violation"]["rule"] == "wrong field"


def test_game_act_golden(capsys):
    code, out, _ = run(
        capsys,
        "game", "act", "--n", "2", "--moves", "3:1,1:1,1:3,3:3", "--element", "1,0",
    )
    assert code == 0
    assert out.strip() == "4:2,2:2,2:4,4:4"


def test_game_act_json_schema(capsys):
    code, out, _ = run(
        capsys,
        "game", "act", "--n", "2", "--moves", "3:1,1:1,1:3,3:3",
        "--element", "1,0", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["result"][0] == {"field": 4, "pos": 2}


def test_game_act_malformed_moves(capsys):
    code, _, err = run(
        capsys, "game", "act", "--n", "2", "--moves", "3-1", "--element", "0,0"
    )
    assert code == 1
    assert "field:pos" in err


def test_census_stdout_jsonl(capsys):
    code, out, err = run(capsys, "census", "--n", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 248
    for line in lines[:3]:
        validate(json.loads(line))
    assert "248 classes over 1902 boards" in err


def test_census_file_and_diff_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "classes.jsonl"
    code, out, _ = run(capsys, "census", "--n", "2", "--out", str(out_file))
    assert code == 0
    assert "248 classes" in out
    first = out_file.read_bytes()

    code, _, _ = run(capsys, "census", "--n", "2", "--out", str(out_file))
    assert code == 0
    assert out_file.read_bytes() == first  # byte-identical rerun

    code, out, _ = run(capsys, "census", "diff", "--computed", str(out_file))
    assert code == 0
    assert "censuses match" in out
    assert "note:" in out  # the listing header understates one section


def test_census_diff_json_schema(tmp_path, capsys):
    out_file = tmp_path / "classes.jsonl"
    run(capsys, "census", "--n", "2", "--out", str(out_file))
    code, out, _ = run(
        capsys, "census", "diff", "--computed", str(out_file), "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["match"] is True


def test_census_diff_detects_tampering(tmp_path, capsys):
    out_file = tmp_path / "classes.jsonl"
    run(capsys, "census", "--n", "2", "--out", str(out_file))
    lines = out_file.read_text().splitlines()
    out_file.write_text("\n".join(lines[:-1]) + "\n")
    code, out, _ = run(capsys, "census", "diff", "--computed", str(out_file))
    assert code == 2
    assert "censuses differ" in out


def test_census_diff_needs_computed(capsys):
    code, _, err = run(capsys, "census", "diff")
    assert code == 1
    assert "--computed" in err


def test_census_parallel_output_identical(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "census", "--n", "2", "--out", str(a), "--jobs", "1")
    run(capsys, "census", "--n", "2", "--out", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()


def test_census_listing_style_parses_back(tmp_path, capsys):
    out_file = tmp_path / "classes.txt"
    jsonl_file = tmp_path / "classes.jsonl"
    run(capsys, "census", "--n", "2", "--out", str(out_file), "--listing-style")
    run(capsys, "census", "--n", "2", "--out", str(jsonl_file))
    listing = parse_census_text(out_file.read_text())
    jsonl = classes_from_jsonl(jsonl_file.read_text())
    assert listing == jsonl


def test_census_allow_large_guard(capsys):
    code, _, err = run(capsys, "census", "--n", "3")
    assert code == 1
    assert "allow_large" in err


def test_output_dir_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("STTT_OUTPUT_DIR", str(tmp_path))
    code, _, _ = run(capsys, "census", "--n", "2", "--out", "nested/classes.jsonl")
    assert code == 0
    assert (tmp_path / "nested" / "classes.jsonl").exists()


def test_fuzz_passing_suites(capsys):
    code, out, _ = run(
        capsys,
        "fuzz", "--cases", "60", "--seed", "3",
        "--suite", "board-action-law", "--suite", "bitstring-round-trip",
    )
    assert code == 0
    assert out.count("pass") == 2


def test_fuzz_exit_code_tracks_suite_outcome(capsys):
    expected = run_suite("game-action-validity", cases=40, seed=0)
    code, out, _ = run(
        capsys,
        "fuzz", "--cases", "40", "--seed", "0", "--suite", "game-action-validity",
    )
    assert code == (0 if expected.ok else 2)


def test_fuzz_json_schema(capsys):
    code, out, _ = run(
        capsys,
        "fuzz", "--cases", "30", "--seed", "1",
        "--suite", "x-count-invariance", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    validate(payload)
    assert payload["suites"][0]["name"] == "x-count-invariance"
