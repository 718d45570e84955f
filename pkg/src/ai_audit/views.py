"""Per-player redacted views of a game state.

A view carries exactly what its viewer is entitled to see: their own hand,
everyone's public table, counts for everything hidden. Card uids belonging to
another player's hand (or any deck ordering) never appear in a serialized
view; the test suite greps for that. During the hidden setup round even
in-play businesses are reported as counts.

Viewers are seat numbers, or the strings ``"spectator"`` and ``"educator"``.
The educator is a privileged spectator who additionally gets the guide
excerpt for the pending challenge pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .catalog import guide_excerpt
from .engine import Action, GameState, WILD_KIND, legal_actions, uid_kind
from .errors import UnknownViewerError

SPECTATOR = "spectator"
EDUCATOR = "educator"

Viewer = Union[int, str]


def _cards(uids) -> list[dict]:
    return [{"uid": uid, "kind": uid_kind(uid)} for uid in uids]


@dataclass
class RedactedView:
    viewer: Viewer
    player_count: int
    turn_counter: int
    turn_player: Optional[int]
    phase: str
    active_player: Optional[int]
    setups_done: int
    players: list[dict]
    your_hand: Optional[dict]
    harm_deck_count: int
    feature_deck_count: int
    box_count: int
    discard: list[dict]
    challenge: Optional[dict]
    vote: Optional[dict]
    outcome: Optional[dict]
    legal_actions: list[Action]
    events: list[dict]
    guide: Optional[str]

    def to_dict(self) -> dict:
        """JSON-ready form; this is exactly what goes over the wire."""
        return {
            "viewer": self.viewer,
            "player_count": self.player_count,
            "turn_counter": self.turn_counter,
            "turn_player": self.turn_player,
            "phase": self.phase,
            "active_player": self.active_player,
            "setups_done": self.setups_done,
            "players": self.players,
            "your_hand": self.your_hand,
            "harm_deck_count": self.harm_deck_count,
            "feature_deck_count": self.feature_deck_count,
            "box_count": self.box_count,
            "discard": self.discard,
            "challenge": self.challenge,
            "vote": self.vote,
            "outcome": self.outcome,
            "legal_actions": [a.to_dict() for a in self.legal_actions],
            "events": list(self.events),
            "guide": self.guide,
        }


def view_for(state: GameState, viewer: Viewer) -> RedactedView:
    """Build the redacted view of ``state`` for a seat or spectator role."""
    is_seat = isinstance(viewer, int) and not isinstance(viewer, bool)
    if is_seat:
        if viewer not in state.turn_order:
            raise UnknownViewerError(f"no seat {viewer} in this game")
    elif viewer not in (SPECTATOR, EDUCATOR):
        raise UnknownViewerError(f"unknown viewer {viewer!r}")

    zones = state.zones
    phase = state.phase
    setup_round = phase.kind == "setup"

    players = []
    for p in state.turn_order:
        pz = zones.players[p]
        show_in_play = (not setup_round) or (is_seat and p == viewer)
        players.append(
            {
                "player": p,
                "eliminated": state.is_eliminated(p),
                "business_hand_count": len(pz.business_hand),
                "harm_hand_count": len(pz.harm_hand),
                "feature_hand_count": len(pz.feature_hand),
                "in_play_count": len(pz.in_play),
                "in_play": _cards(pz.in_play) if show_in_play else None,
            }
        )

    your_hand = None
    if is_seat:
        pz = zones.players[viewer]
        your_hand = {
            "businesses": _cards(pz.business_hand),
            "harms": _cards(pz.harm_hand),
            "features": _cards(pz.feature_hand),
        }

    challenge = phase.challenge or (phase.vote.challenge if phase.vote else None)
    challenge_view = None
    if challenge is not None:
        challenge_view = {
            "challenger": challenge.challenger,
            "defender": challenge.defender,
            "target_uid": challenge.target,
            "target_kind": uid_kind(challenge.target),
            "harm_kind": uid_kind(challenge.harm),
            "wild": uid_kind(challenge.harm) == WILD_KIND,
            "narrative": challenge.narrative,
        }

    vote_view = None
    if phase.vote is not None:
        vote = phase.vote
        approvals = sum(1 for b in vote.ballots.values() if b)
        vote_view = {
            "subject": vote.subject,
            "proposer": vote.proposer,
            "voters_total": len(vote.voters),
            "ballots_cast": len(vote.ballots),
            "approvals": approvals,
            "rejections": len(vote.ballots) - approvals,
            "defense_feature_kind": (
                uid_kind(vote.defense_feature) if vote.defense_feature else None
            ),
            "defense_narrative": vote.defense_narrative,
            "you_voted": (viewer in vote.ballots) if is_seat else None,
        }

    outcome_view = None
    if phase.outcome is not None:
        outcome_view = {
            "kind": phase.outcome.kind,
            "winner": phase.outcome.winner,
            "ranking": [list(g) for g in phase.outcome.ranking],
        }

    guide = None
    if viewer == EDUCATOR and challenge is not None:
        harm_kind = uid_kind(challenge.harm)
        if harm_kind != WILD_KIND:
            guide = guide_excerpt(
                state.catalog, uid_kind(challenge.target), harm_kind
            )

    active = phase.active
    if phase.kind == "vote":
        active = None  # several voters may act; see vote tallies

    return RedactedView(
        viewer=viewer,
        player_count=state.config.player_count,
        turn_counter=state.turn_counter,
        turn_player=state.turn_player,
        phase=phase.kind,
        active_player=active,
        setups_done=phase.setups_done,
        players=players,
        your_hand=your_hand,
        harm_deck_count=len(zones.harm_deck),
        feature_deck_count=len(zones.feature_deck),
        box_count=len(zones.box),
        discard=_cards(zones.business_discard),
        challenge=challenge_view,
        vote=vote_view,
        outcome=outcome_view,
        legal_actions=legal_actions(state, viewer) if is_seat else [],
        events=state.event_log,
        guide=guide,
    )
