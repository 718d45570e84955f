"""Turn-phase legality: setups, harm plays, exchange, end turn, pass."""

import pytest

from ai_audit.engine import Action, GameConfig, Phase, apply, legal_actions
from ai_audit.errors import (
    IllegalActionError,
    NotYourTurnError,
    WrongPhaseError,
)

from helpers import make_state


def _types(actions):
    return {a.type for a in actions}


def test_play_harm_requires_matching_vulnerability():
    # Business 3 (personalized ads) is vulnerable to harms 5 and 6.
    state = make_state(
        players=[
            {"hh": ["h5.1", "h1.1"], "ip": ["b6.1"]},
            {"ip": ["b3.1"]},
        ],
    )
    plays = [a for a in legal_actions(state, 0) if a.type == "play_harm"]
    assert plays == [Action.play_harm("h5.1", 1, "b3.1")]


def test_recommender_accepts_six_harm_kinds():
    state = make_state(
        players=[
            {"hh": [f"h{k}.1" for k in range(1, 7)], "ip": ["b9.1"]},
            {"ip": ["b10.1"]},
        ],
    )
    plays = [a for a in legal_actions(state, 0) if a.type == "play_harm"]
    assert len(plays) == 6


def test_own_business_is_never_a_target():
    state = make_state(
        players=[{"hh": ["h5.1"], "ip": ["b3.1"]}, {"ip": ["b6.1"]}],
    )
    # harm 5 matches own b3 but no opposing business.
    assert _types(legal_actions(state, 0)) == {"exchange_harm"}


def test_orphan_harm_hand_offers_exchange():
    # Harm 9 appears on no business; exchange is the only way out.
    state = make_state(
        players=[{"hh": ["h9.1"], "ip": ["b1.1"]}, {"ip": ["b10.1"]}],
    )
    actions = legal_actions(state, 0)
    assert _types(actions) == {"exchange_harm"}
    assert actions == [Action.exchange_harm("h9.1")]


def test_exchange_blocked_when_a_play_exists():
    state = make_state(
        players=[{"hh": ["h9.1", "h1.1"], "ip": ["b1.1"]}, {"ip": ["b10.1"]}],
    )
    kinds = _types(legal_actions(state, 0))
    assert "play_harm" in kinds
    assert "exchange_harm" not in kinds


def test_exchange_disabled_by_config():
    state = make_state(
        players=[{"hh": ["h9.1"], "ip": ["b1.1"]}, {"ip": ["b10.1"]}],
        config=GameConfig(player_count=2, harm_exchange_enabled=False),
    )
    assert _types(legal_actions(state, 0)) == {"pass"}


def test_exchange_consumes_the_turn():
    state = make_state(
        players=[{"hh": ["h9.1"], "ip": ["b1.1"]}, {"ip": ["b10.1"]}],
        harm_deck=["h2.1", "h3.1"],
    )
    apply(state, 0, Action.exchange_harm("h9.1"))
    assert state.zones.players[0].harm_hand == ["h2.1"]
    assert state.zones.harm_deck == ["h3.1", "h9.1"]
    assert state.phase.kind == "turn" and state.phase.active == 1
    assert state.turn_counter == 1


def test_no_running_business_forces_setup():
    state = make_state(
        players=[{"bh": ["b5.1", "b7.1"], "hh": ["h1.1"]}, {"ip": ["b10.1"]}],
    )
    actions = legal_actions(state, 0)
    assert _types(actions) == {"setup_business"}
    assert len(actions) == 2


def test_setup_then_more_setups_or_end_turn():
    state = make_state(
        players=[{"bh": ["b5.1", "b7.1", "b8.1", "b9.1"]}, {"ip": ["b10.1"]}],
    )
    apply(state, 0, Action.setup_business("b5.1"))
    kinds = _types(legal_actions(state, 0))
    assert kinds == {"setup_business", "end_turn"}
    apply(state, 0, Action.setup_business("b7.1"))
    apply(state, 0, Action.setup_business("b8.1"))
    # max_setups_per_turn (3) reached.
    assert _types(legal_actions(state, 0)) == {"end_turn"}
    apply(state, 0, Action.end_turn())
    assert state.phase.active == 1
    assert state.turn_counter == 1


def test_setup_blocks_harm_play_same_turn():
    state = make_state(
        players=[
            {"bh": ["b5.1"], "hh": ["h1.1"], "ip": ["b6.1"]},
            {"ip": ["b10.1"]},
        ],
    )
    apply(state, 0, Action.setup_business("b5.1"))
    kinds = _types(legal_actions(state, 0))
    assert "play_harm" not in kinds
    assert "exchange_harm" not in kinds


def test_harm_play_excludes_eliminated_opponents():
    state = make_state(
        players=[
            {"hh": ["h1.1"], "ip": ["b6.1"]},
            {"ip": ["b10.1"]},
            {"ip": ["b12.1"]},
        ],
        eliminated=[2],
    )
    plays = [a for a in legal_actions(state, 0) if a.type == "play_harm"]
    assert {a.defender for a in plays} == {1}


def test_pass_only_when_nothing_else_is_legal():
    state = make_state(
        players=[{"ip": ["b1.1"]}, {"ip": ["b10.1"]}],
    )
    assert legal_actions(state, 0) == [Action.pass_turn()]
    apply(state, 0, Action.pass_turn())
    assert state.phase.active == 1


def test_end_turn_requires_a_setup_first():
    state = make_state(
        players=[{"hh": ["h1.1"], "ip": ["b6.1"]}, {"ip": ["b10.1"]}],
    )
    with pytest.raises(IllegalActionError):
        apply(state, 0, Action.end_turn())


def test_wrong_player_rejected():
    state = make_state(
        players=[{"ip": ["b1.1"]}, {"ip": ["b10.1"]}],
    )
    with pytest.raises(NotYourTurnError):
        apply(state, 1, Action.pass_turn())


def test_wrong_phase_rejected():
    state = make_state(
        players=[{"ip": ["b1.1"]}, {"ip": ["b10.1"]}],
    )
    with pytest.raises(WrongPhaseError):
        apply(state, 0, Action.cast_vote(True))


def test_rejected_action_leaves_state_untouched():
    from ai_audit.serialize import state_digest

    state = make_state(
        players=[{"hh": ["h5.1"], "ip": ["b6.1"]}, {"ip": ["b3.1"]}],
    )
    before = state_digest(state)
    with pytest.raises(IllegalActionError):
        apply(state, 0, Action.play_harm("h5.1", 1, "b6.1"))  # own business
    with pytest.raises(NotYourTurnError):
        apply(state, 1, Action.pass_turn())
    assert state_digest(state) == before


def test_eliminated_player_has_no_actions():
    state = make_state(
        players=[{"ip": ["b1.1"]}, {"ip": ["b10.1"]}, {}],
        eliminated=[2],
    )
    assert legal_actions(state, 2) == []


def test_wild_harm_playable_against_any_opponent_business():
    state = make_state(
        players=[{"hh": ["h0.1"], "ip": ["b6.1"]}, {"ip": ["b9.1"]}],
    )
    wilds = [a for a in legal_actions(state, 0) if a.type == "play_wild_harm"]
    assert wilds == [Action.play_wild_harm("h0.1", 1, "b9.1", None)]


def test_wild_harm_requires_narrative():
    state = make_state(
        players=[{"hh": ["h0.1"], "ip": ["b6.1"]}, {"ip": ["b9.1"]}],
    )
    with pytest.raises(IllegalActionError, match="narrative"):
        apply(state, 0, Action.play_wild_harm("h0.1", 1, "b9.1", None))
    with pytest.raises(IllegalActionError, match="narrative"):
        apply(state, 0, Action.play_wild_harm("h0.1", 1, "b9.1", "   "))
    long_story = "x" * 501
    with pytest.raises(IllegalActionError, match="500"):
        apply(state, 0, Action.play_wild_harm("h0.1", 1, "b9.1", long_story))
