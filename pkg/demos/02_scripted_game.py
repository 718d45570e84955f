"""
Driving the engine by hand
==========================

A complete two-player game played through the raw engine API: the hidden
setup round, a challenge, a successful defense, a decline, and the win. The
engine is a pure state machine; every step is (state, player, action) in,
(state, events) out.
"""

from ai_audit import (
    Action,
    GameConfig,
    default_catalog,
    is_terminal,
    legal_actions,
    new_game,
    state_digest,
)
from ai_audit.engine import actors_due

catalog = default_catalog()
state = new_game(GameConfig(player_count=2, seed=7), catalog)
print("phase:", state.phase.kind, "| digest:", state_digest(state))

# Setup round: each player places one business face down.
from ai_audit import apply  # noqa: E402

while state.phase.kind == "setup":
    player = state.phase.active
    options = legal_actions(state, player)
    _, events = apply(state, player, options[0])
    print(f"P{player} sets up a hidden business")

print("\nafter the reveal:")
for player, zone in enumerate(state.zones.players):
    print(f"  P{player} table: {zone.in_play}, hand: {len(zone.business_hand)} businesses, "
          f"{len(zone.harm_hand)} harms, {len(zone.feature_hand)} features")

# Play on: each actor takes the first legal action until someone is
# challenged, then we narrate what the engine reports.
steps = 0
while is_terminal(state) is None and steps < 300:
    player = actors_due(state)[0]
    action = legal_actions(state, player)[0]
    if action.type in ("play_wild_harm", "defend_wild", "defend_narrative"):
        action = Action(action.type, card=action.card, defender=action.defender,
                        target=action.target,
                        narrative="It would clearly go wrong this way.")
    _, events = apply(state, player, action)
    for event in events:
        if event["type"] in ("harm_played", "defense_played", "defense_declined",
                             "challenge_resolved", "player_eliminated",
                             "game_over"):
            print(f"  P{player}: {event}")
    steps += 1

outcome = is_terminal(state)
print(f"\nresult: {outcome.kind}, winner: {outcome.winner}, "
      f"after {state.turn_counter} turns")
print("final digest:", state_digest(state))
