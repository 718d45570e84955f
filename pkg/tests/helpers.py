"""Shared test scaffolding: surgical state construction and random playouts."""

from __future__ import annotations

from ai_audit.catalog import default_catalog
from ai_audit.engine import (
    Action,
    GameConfig,
    GameState,
    Phase,
    PlayerZones,
    Zones,
    actors_due,
    apply,
    legal_actions,
    new_game,
)
from ai_audit.rng import GameRng

CATALOG = default_catalog()


def make_state(
    *,
    players: list[dict],
    harm_deck: list[str] | None = None,
    feature_deck: list[str] | None = None,
    box: list[str] | None = None,
    discard: list[str] | None = None,
    table: list[str] | None = None,
    phase: Phase | None = None,
    turn_player: int = 0,
    turn_counter: int = 0,
    eliminated: list[int] | None = None,
    config: GameConfig | None = None,
    catalog=None,
) -> GameState:
    """Build an arbitrary mid-game state without dealing.

    ``players`` entries may carry ``bh``/``hh``/``fh``/``ip`` lists (business
    hand, harm hand, feature hand, in play). Phase defaults to the turn of
    ``turn_player``.
    """
    catalog = catalog or CATALOG
    config = config or GameConfig(player_count=len(players))
    zones = Zones(
        harm_deck=list(harm_deck or []),
        feature_deck=list(feature_deck or []),
        box=list(box or []),
        business_discard=list(discard or []),
        table=list(table or []),
        players=[
            PlayerZones(
                business_hand=list(p.get("bh", [])),
                harm_hand=list(p.get("hh", [])),
                feature_hand=list(p.get("fh", [])),
                in_play=list(p.get("ip", [])),
            )
            for p in players
        ],
    )
    return GameState(
        config=config,
        catalog=catalog,
        zones=zones,
        turn_order=list(range(len(players))),
        eliminated=list(eliminated or []),
        phase=phase or Phase("turn", active=turn_player),
        turn_player=turn_player,
        turn_counter=turn_counter,
        rng_state=0,
        event_log=[],
    )


def run_setup_round(state: GameState) -> GameState:
    """Have every player set up their first business card in hand."""
    while state.phase.kind == "setup":
        player = state.phase.active
        first = state.zones.players[player].business_hand[0]
        apply(state, player, Action.setup_business(first))
    return state


def fill_narrative(action: Action, text: str = "It plainly applies here.") -> Action:
    if action.type in ("play_wild_harm", "defend_narrative", "defend_wild"):
        return Action(
            action.type,
            card=action.card,
            defender=action.defender,
            target=action.target,
            approve=action.approve,
            narrative=text,
        )
    return action


def random_step(state: GameState, rng: GameRng) -> tuple[int, Action] | None:
    """Pick a uniformly random legal action for the first actor due."""
    due = actors_due(state)
    if not due:
        return None
    player = due[0]
    options = legal_actions(state, player)
    if not options:
        return None
    return player, fill_narrative(rng.choice(options))


def play_random_game(
    seed: int,
    config: GameConfig | None = None,
    max_steps: int = 100_000,
    on_step=None,
) -> GameState:
    """Drive a full game with uniformly random legal actions."""
    config = config or GameConfig(player_count=4, seed=seed)
    state = new_game(config, CATALOG)
    rng = GameRng(seed ^ 0xFEED)
    for _ in range(max_steps):
        step = random_step(state, rng)
        if step is None:
            break
        player, action = step
        apply(state, player, action)
        if on_step is not None:
            on_step(state)
    return state
