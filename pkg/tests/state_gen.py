"""Random small-state generator for oracle agreement checks.

Builds arbitrary (but structurally consistent) 2-player states: small hands,
random tables, every phase kind, wilds sprinkled in. Conservation is honored
by construction; semantic soundness (whose turn, challenge wiring) matches
the engine's invariants so both the oracle and legal_actions accept the
state at face value.
"""

from __future__ import annotations

from ai_audit.engine import (
    Challenge,
    GameConfig,
    GameState,
    Phase,
    PlayerZones,
    VoteContext,
    Zones,
)
from ai_audit.rng import GameRng

from helpers import CATALOG


def _sample(rng: GameRng, pool: list, most: int) -> list:
    count = rng.randbelow(most + 1)
    out = []
    for _ in range(min(count, len(pool))):
        out.append(pool.pop(rng.randbelow(len(pool))))
    return out


def random_small_state(rng: GameRng) -> GameState:
    config = GameConfig(
        player_count=2,
        max_setups_per_turn=1 + rng.randbelow(3),
        harm_exchange_enabled=rng.randbelow(2) == 0,
        decline_defense_allowed=rng.randbelow(2) == 0,
        seed=rng.next_u64(),
    )
    businesses = [f"b{k}.1" for k in range(1, 15)]
    harms = [f"h{k}.{c}" for k in range(1, 14) for c in (1, 2)] + ["h0.1"]
    features = [f"f{k}.{c}" for k in range(1, 8) for c in (1, 2)] + ["f0.1", "f0.2"]

    players = []
    for _ in range(2):
        players.append(PlayerZones(
            business_hand=_sample(rng, businesses, 4),
            harm_hand=_sample(rng, harms, 4),
            feature_hand=_sample(rng, features, 4),
            in_play=_sample(rng, businesses, 3),
        ))

    zones = Zones(
        harm_deck=harms,
        feature_deck=features,
        box=businesses,
        players=players,
    )

    turn_player = rng.randbelow(2)
    other = 1 - turn_player
    phase_pick = rng.randbelow(4)

    if phase_pick == 0:
        phase = Phase("setup", active=turn_player)
    elif phase_pick == 1:
        phase = Phase("turn", active=turn_player,
                      setups_done=rng.randbelow(config.max_setups_per_turn + 1))
    elif phase_pick == 2 and players[other].in_play and zones.harm_deck:
        # A pending challenge: turn player attacked the other seat.
        harm = zones.harm_deck.pop(rng.randbelow(len(zones.harm_deck)))
        zones.table.append(harm)
        target = players[other].in_play[
            rng.randbelow(len(players[other].in_play))
        ]
        challenge = Challenge(
            challenger=turn_player, defender=other, target=target, harm=harm,
            narrative="An invented harm story." if harm.startswith("h0.") else None,
        )
        phase = Phase("defense", active=other, challenge=challenge)
    elif phase_pick == 3 and players[other].in_play and zones.harm_deck:
        harm = zones.harm_deck.pop(rng.randbelow(len(zones.harm_deck)))
        zones.table.append(harm)
        target = players[other].in_play[
            rng.randbelow(len(players[other].in_play))
        ]
        challenge = Challenge(
            challenger=turn_player, defender=other, target=target, harm=harm,
            narrative="Story.",
        )
        voters = (other,)
        ballots = {} if rng.randbelow(2) == 0 else {other: bool(rng.randbelow(2))}
        phase = Phase("vote", vote=VoteContext(
            subject="wild_harm_validity", proposer=turn_player,
            voters=voters, ballots=ballots, challenge=challenge,
        ))
    else:
        phase = Phase("turn", active=turn_player)

    return GameState(
        config=config,
        catalog=CATALOG,
        zones=zones,
        turn_order=[0, 1],
        eliminated=[],
        phase=phase,
        turn_player=turn_player,
        turn_counter=rng.randbelow(50),
        rng_state=0,
        event_log=[],
    )
