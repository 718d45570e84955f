"""Command-line interface: exit codes, output channels, determinism."""

import io

import pytest

from ai_audit.catalog import catalog_to_dict, default_catalog, serialize_catalog
from ai_audit.cli import main

from helpers import CATALOG


def test_validate_default_catalog_warns_about_harm_nine(capsys):
    code = main(["validate"])
    captured = capsys.readouterr()
    assert code == 0
    assert "orphan_harm" in captured.out
    assert "harm 9" in captured.out
    assert "warning(s)" in captured.err


def test_validate_broken_catalog_exits_one(tmp_path, capsys):
    doc = catalog_to_dict(default_catalog())
    doc["features"][0]["counters"] = []
    bad = tmp_path / "bad.yaml"
    import yaml

    bad.write_text(yaml.safe_dump(doc))
    code = main(["validate", "--catalog", str(bad)])
    captured = capsys.readouterr()
    assert code == 1
    assert "empty_counter_set" in captured.out


def test_validate_honors_catalog_env_var(tmp_path, capsys, monkeypatch):
    path = tmp_path / "cat.yaml"
    path.write_text(serialize_catalog(CATALOG))
    monkeypatch.setenv("AI_AUDIT_CATALOG", str(path))
    assert main(["validate"]) == 0
    capsys.readouterr()


def test_export_writes_sheets(tmp_path, capsys):
    out = tmp_path / "sheets"
    code = main(["export", "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert (out / "harms.svg").exists()
    assert "index.html" in captured.out


def test_simulate_is_byte_deterministic(tmp_path, capsys):
    args = ["simulate", "--games", "5", "--seed", "7",
            "--bots", "random,random"]
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()


def test_simulate_csv_to_stdout(capsys):
    code = main(["simulate", "--games", "3", "--seed", "1",
                 "--bots", "random,mimic", "--format", "csv"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.startswith("row,strategy")
    assert "summary," in captured.out


def test_compare_runs_with_config_files(tmp_path, capsys):
    import yaml

    a = tmp_path / "a.yaml"
    b = tmp_path / "b.yaml"
    a.write_text(yaml.safe_dump({"initial_feature_hand": 3}))
    b.write_text(yaml.safe_dump({"initial_feature_hand": 2}))
    code = main(["compare", "--config-a", str(a), "--config-b", str(b),
                 "--games", "6", "--seed", "3",
                 "--bots", "random,random,random"])
    captured = capsys.readouterr()
    assert code == 0
    assert '"deltas"' in captured.out
    assert "deltas (b - a)" in captured.err


def test_replay_verifies_and_rejects(tmp_path, capsys):
    from ai_audit.engine import GameConfig
    from ai_audit.rng import GameRng
    from ai_audit.serialize import GameRecorder, dump_action_log

    from helpers import random_step

    recorder = GameRecorder(GameConfig(player_count=3, seed=55), CATALOG)
    rng = GameRng(99)
    while (step := random_step(recorder.state, rng)) is not None:
        recorder.apply(*step)
    log = tmp_path / "game.yaml"
    dump_action_log(recorder.log_document(), log)

    code = main(["replay", "--log", str(log)])
    captured = capsys.readouterr()
    assert code == 0
    from ai_audit.serialize import state_digest

    assert captured.out.strip() == state_digest(recorder.state)

    doc = recorder.log_document()
    doc["final_digest"] = "f" * 16
    bad = tmp_path / "bad.yaml"
    dump_action_log(doc, bad)
    assert main(["replay", "--log", str(bad)]) == 1
    capsys.readouterr()


def test_play_scripted_game(tmp_path, capsys, monkeypatch):
    import yaml

    config = tmp_path / "quick.yaml"
    config.write_text(yaml.safe_dump({"turn_cap": 30}))
    # "zz" exercises the re-prompt; afterwards option 1 is always legal.
    lines = "zz\n" + "1\n" * 400
    monkeypatch.setattr("sys.stdin", io.StringIO(lines))
    code = main(["play", "--bots", "random", "--seed", "1",
                 "--config", str(config)])
    captured = capsys.readouterr()
    assert code == 0
    assert "1." in captured.err            # numbered action menu
    assert "try again" in captured.err     # invalid input re-prompted
    assert "game over" in captured.err
    assert len(captured.out.strip()) == 16  # final digest on stdout


def test_play_aborts_cleanly_on_eof(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    code = main(["play", "--bots", "random", "--seed", "1"])
    captured = capsys.readouterr()
    assert code == 1
    assert "input closed" in captured.err


def test_serve_rejects_bad_addr(capsys):
    assert main(["serve", "--addr", "nonsense"]) == 1
    assert "HOST:PORT" in capsys.readouterr().err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--games", "1", "--bots", "random,random",
              "--frobnicate"])
    assert info.value.code == 2
    capsys.readouterr()
