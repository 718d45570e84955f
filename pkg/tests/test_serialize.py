"""State serialization, digests, action logs and replay verification."""

import pytest

from ai_audit.engine import Action, GameConfig, new_game
from ai_audit.errors import ReplayDivergenceError
from ai_audit.rng import GameRng
from ai_audit.serialize import (
    GameRecorder,
    copy_state,
    dump_action_log,
    load_action_log,
    replay,
    state_digest,
    state_from_dict,
    state_to_dict,
    verify_log_document,
)

from helpers import CATALOG, random_step


def _record_random_game(seed, max_steps=10_000):
    recorder = GameRecorder(GameConfig(player_count=4, seed=seed), CATALOG)
    rng = GameRng(seed * 31 + 7)
    for _ in range(max_steps):
        step = random_step(recorder.state, rng)
        if step is None:
            break
        recorder.apply(*step)
    return recorder


def test_state_dict_round_trip():
    state = new_game(GameConfig(player_count=4, seed=5), CATALOG)
    clone = state_from_dict(state_to_dict(state), CATALOG)
    assert state_digest(clone) == state_digest(state)


def test_copy_state_is_independent():
    state = new_game(GameConfig(player_count=3, seed=5), CATALOG)
    before = state_digest(state)
    clone = copy_state(state)
    clone.zones.harm_deck.pop()
    clone.event_log.append({"type": "tamper"})
    assert state_digest(state) == before


def test_digest_sensitive_to_hidden_state():
    state = new_game(GameConfig(player_count=3, seed=5), CATALOG)
    clone = copy_state(state)
    deck = clone.zones.harm_deck
    deck[0], deck[1] = deck[1], deck[0]
    assert state_digest(clone) != state_digest(state)


def test_catalog_digest_checked_on_load():
    from ai_audit.catalog import Catalog
    from ai_audit.errors import CatalogParseError

    state = new_game(GameConfig(player_count=3, seed=5), CATALOG)
    other = Catalog(CATALOG.businesses[:-1], CATALOG.harms, CATALOG.features)
    with pytest.raises(CatalogParseError):
        state_from_dict(state_to_dict(state), other)


def test_empty_replay_equals_new_game():
    config = GameConfig(player_count=4, seed=12)
    assert state_digest(replay(config, CATALOG, [])) == state_digest(
        new_game(config, CATALOG)
    )


def test_replay_reproduces_recorded_game():
    recorder = _record_random_game(seed=99)
    replayed = replay(recorder.state.config, CATALOG, recorder.records)
    assert state_digest(replayed) == state_digest(recorder.state)


def test_replay_with_altered_seed_diverges():
    recorder = _record_random_game(seed=7)
    altered = GameConfig(player_count=4, seed=8)
    with pytest.raises(ReplayDivergenceError) as info:
        replay(altered, CATALOG, recorder.records)
    assert info.value.step >= 0


def test_replay_names_first_bad_step():
    recorder = _record_random_game(seed=13)
    records = list(recorder.records)
    # Corrupt the third record's action.
    bad = records[2]
    records[2] = type(bad)(bad.turn, bad.player, Action.cast_vote(True))
    with pytest.raises(ReplayDivergenceError) as info:
        replay(recorder.state.config, CATALOG, records)
    assert info.value.step == 2


def test_log_document_round_trip(tmp_path):
    recorder = _record_random_game(seed=21)
    doc = recorder.log_document()
    path = tmp_path / "game.yaml"
    dump_action_log(doc, path)
    loaded = load_action_log(path)
    final = verify_log_document(loaded, CATALOG)
    assert state_digest(final) == doc["final_digest"]


def test_log_document_detects_tampered_digest(tmp_path):
    recorder = _record_random_game(seed=22)
    doc = recorder.log_document()
    doc["final_digest"] = "0" * 16
    with pytest.raises(ReplayDivergenceError):
        verify_log_document(doc, CATALOG)


def test_narratives_survive_the_log(tmp_path):
    # A recorded wild play must replay with its narrative intact, because
    # narratives are part of the state (challenge context, events).
    for seed in range(40):
        recorder = _record_random_game(seed=seed)
        if any(r.action.type == "play_wild_harm" for r in recorder.records):
            doc = recorder.log_document()
            verify_log_document(load_action_log(dump_action_log(doc)), CATALOG)
            return
    pytest.skip("no wild harm played in 40 seeds")
