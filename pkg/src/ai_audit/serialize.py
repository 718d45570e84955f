"""Canonical game-state serialization, 64-bit digests, action logs, replay.

The canonical form is a plain dict with a fixed field order rendered as
compact JSON; its SHA-256 truncated to 64 bits is the state digest used to
verify replays. The catalog itself is not embedded - states carry the digest
of the catalog they were built against, and deserialization checks it.

Action logs are YAML documents: the config, one record per accepted action
(turn counter, player, action) and the final digest. ``replay`` re-runs a log
and raises ReplayDivergenceError naming the first step that no longer fits.
"""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

import yaml

from .catalog import Catalog, catalog_to_dict
from .engine import (
    Action,
    Challenge,
    GameConfig,
    GameState,
    Outcome,
    Phase,
    PlayerZones,
    VoteContext,
    Zones,
    apply,
    new_game,
)
from .errors import CatalogParseError, GameRuleError, ReplayDivergenceError


def _digest_bytes(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()[:16]


_CATALOG_DIGESTS: dict[int, str] = {}


def catalog_digest(catalog: Catalog) -> str:
    """64-bit fingerprint of a catalog's content."""
    cached = _CATALOG_DIGESTS.get(id(catalog))
    if cached is None:
        payload = json.dumps(
            catalog_to_dict(catalog), sort_keys=True, separators=(",", ":")
        ).encode()
        cached = _digest_bytes(payload)
        _CATALOG_DIGESTS[id(catalog)] = cached
    return cached


def _challenge_to_dict(challenge: Optional[Challenge]) -> Optional[dict]:
    if challenge is None:
        return None
    return {
        "challenger": challenge.challenger,
        "defender": challenge.defender,
        "target": challenge.target,
        "harm": challenge.harm,
        "narrative": challenge.narrative,
    }


def _challenge_from_dict(data: Optional[dict]) -> Optional[Challenge]:
    return Challenge(**data) if data is not None else None


def state_to_dict(state: GameState) -> dict:
    """Canonical plain-data form of a full (unredacted) game state."""
    phase = state.phase
    vote = phase.vote
    return {
        "config": state.config.to_dict(),
        "catalog_digest": catalog_digest(state.catalog),
        "turn_order": list(state.turn_order),
        "eliminated": list(state.eliminated),
        "turn_player": state.turn_player,
        "turn_counter": state.turn_counter,
        "rng_state": state.rng_state,
        "zones": {
            "harm_deck": list(state.zones.harm_deck),
            "feature_deck": list(state.zones.feature_deck),
            "box": list(state.zones.box),
            "business_discard": list(state.zones.business_discard),
            "table": list(state.zones.table),
            "players": [
                {
                    "business_hand": list(p.business_hand),
                    "harm_hand": list(p.harm_hand),
                    "feature_hand": list(p.feature_hand),
                    "in_play": list(p.in_play),
                }
                for p in state.zones.players
            ],
        },
        "phase": {
            "kind": phase.kind,
            "active": phase.active,
            "setups_done": phase.setups_done,
            "challenge": _challenge_to_dict(phase.challenge),
            "vote": None if vote is None else {
                "subject": vote.subject,
                "proposer": vote.proposer,
                "voters": list(vote.voters),
                # JSON objects key on strings; keep ballots as ordered pairs.
                "ballots": [[p, b] for p, b in vote.ballots.items()],
                "challenge": _challenge_to_dict(vote.challenge),
                "defense_feature": vote.defense_feature,
                "defense_narrative": vote.defense_narrative,
            },
            "outcome": None if phase.outcome is None else {
                "kind": phase.outcome.kind,
                "winner": phase.outcome.winner,
                "ranking": [list(g) for g in phase.outcome.ranking],
            },
        },
        "event_log": list(state.event_log),
    }


def state_from_dict(data: Mapping, catalog: Catalog) -> GameState:
    """Rebuild a GameState; the catalog must match the recorded digest."""
    recorded = data["catalog_digest"]
    actual = catalog_digest(catalog)
    if recorded != actual:
        raise CatalogParseError(
            f"state was recorded against catalog {recorded}, got {actual}"
        )
    z = data["zones"]
    phase_data = data["phase"]
    vote_data = phase_data.get("vote")
    vote = None
    if vote_data is not None:
        vote = VoteContext(
            subject=vote_data["subject"],
            proposer=vote_data["proposer"],
            voters=tuple(vote_data["voters"]),
            ballots={p: b for p, b in vote_data["ballots"]},
            challenge=_challenge_from_dict(vote_data["challenge"]),
            defense_feature=vote_data["defense_feature"],
            defense_narrative=vote_data["defense_narrative"],
        )
    outcome_data = phase_data.get("outcome")
    outcome = None
    if outcome_data is not None:
        outcome = Outcome(
            kind=outcome_data["kind"],
            winner=outcome_data["winner"],
            ranking=[list(g) for g in outcome_data["ranking"]],
        )
    return GameState(
        config=GameConfig.from_dict(data["config"]),
        catalog=catalog,
        zones=Zones(
            harm_deck=list(z["harm_deck"]),
            feature_deck=list(z["feature_deck"]),
            box=list(z["box"]),
            business_discard=list(z["business_discard"]),
            table=list(z["table"]),
            players=[
                PlayerZones(
                    business_hand=list(p["business_hand"]),
                    harm_hand=list(p["harm_hand"]),
                    feature_hand=list(p["feature_hand"]),
                    in_play=list(p["in_play"]),
                )
                for p in z["players"]
            ],
        ),
        turn_order=list(data["turn_order"]),
        eliminated=list(data["eliminated"]),
        phase=Phase(
            kind=phase_data["kind"],
            active=phase_data["active"],
            setups_done=phase_data["setups_done"],
            challenge=_challenge_from_dict(phase_data["challenge"]),
            vote=vote,
            outcome=outcome,
        ),
        turn_player=data["turn_player"],
        turn_counter=data["turn_counter"],
        rng_state=data["rng_state"],
        event_log=[dict(e) for e in data["event_log"]],
    )


def state_digest(state: GameState) -> str:
    """64-bit digest of the canonical serialization."""
    payload = json.dumps(
        state_to_dict(state), sort_keys=True, separators=(",", ":"),
        ensure_ascii=True,
    ).encode()
    return _digest_bytes(payload)


def copy_state(state: GameState) -> GameState:
    """Independent deep copy via the canonical form."""
    return state_from_dict(state_to_dict(state), state.catalog)


# ---------------------------------------------------------------------------
# Action logs and replay
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ActionRecord:
    turn: int
    player: int
    action: Action

    def to_dict(self) -> dict:
        return {"turn": self.turn, "player": self.player,
                "action": self.action.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ActionRecord":
        return cls(
            turn=data["turn"], player=data["player"],
            action=Action.from_dict(data["action"]),
        )


class GameRecorder:
    """Runs a game while accumulating a replay-verifiable action log."""

    def __init__(self, config: GameConfig, catalog: Catalog):
        self.state = new_game(config, catalog)
        self.records: list[ActionRecord] = []

    def apply(self, player: int, action: Action) -> list[dict]:
        record = ActionRecord(self.state.turn_counter, player, action)
        _, events = apply(self.state, player, action)
        self.records.append(record)
        return events

    def log_document(self) -> dict:
        return {
            "config": self.state.config.to_dict(),
            "catalog_digest": catalog_digest(self.state.catalog),
            "actions": [r.to_dict() for r in self.records],
            "final_digest": state_digest(self.state),
        }


def dump_action_log(document: dict, target: Union[str, Path, io.IOBase, None] = None) -> str:
    text = yaml.safe_dump(document, sort_keys=False, allow_unicode=True)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    elif target is not None:
        target.write(text)
    return text


def load_action_log(source: Union[str, Path, io.IOBase]) -> dict:
    if isinstance(source, Path) or (
        isinstance(source, str) and "\n" not in source and source.endswith((".yaml", ".yml", ".json", ".log"))
    ):
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, io.IOBase):
        text = source.read()
    else:
        text = source
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise CatalogParseError(f"action log does not parse: {exc}") from exc
    if not isinstance(doc, Mapping) or "actions" not in doc or "config" not in doc:
        raise CatalogParseError("action log must carry 'config' and 'actions'")
    return dict(doc)


def replay(
    config: GameConfig,
    catalog: Catalog,
    records: Iterable[Union[ActionRecord, Mapping]],
) -> GameState:
    """Re-run a recorded game; bit-identical logs produce identical digests.

    Raises ReplayDivergenceError at the first record whose turn counter or
    action no longer fits the reconstructed state (e.g. the log was recorded
    under a different seed).
    """
    state = new_game(config, catalog)
    for step, record in enumerate(records):
        if not isinstance(record, ActionRecord):
            record = ActionRecord.from_dict(record)
        if record.turn != state.turn_counter:
            raise ReplayDivergenceError(
                step,
                f"log expects turn {record.turn}, state is at turn "
                f"{state.turn_counter}",
            )
        try:
            apply(state, record.player, record.action)
        except GameRuleError as exc:
            raise ReplayDivergenceError(
                step, f"{record.action.type} no longer applies: {exc}"
            ) from exc
    return state


def verify_log_document(document: Mapping, catalog: Catalog) -> GameState:
    """Replay a full log document and check its recorded final digest."""
    recorded_catalog = document.get("catalog_digest")
    if recorded_catalog and recorded_catalog != catalog_digest(catalog):
        raise ReplayDivergenceError(0, "log was recorded against a different catalog")
    config = GameConfig.from_dict(document["config"])
    state = replay(config, catalog, document["actions"])
    final = document.get("final_digest")
    if final and final != state_digest(state):
        raise ReplayDivergenceError(
            len(document["actions"]),
            f"final digest mismatch: log says {final}, replay produced "
            f"{state_digest(state)}",
        )
    return state
