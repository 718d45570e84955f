"""Deterministic rules engine for the AI Audit card game.

The engine is a state machine over explicit card zones. Players run AI
businesses; on a turn a player either sets up businesses or plays one harm
card against an opponent's business; the defender may answer with a feature
card that counters that harm. Wild cards carry a player-invented narrative
and take effect only if a strict majority of the other players approves them
in a vote.

Conventions that keep everything reproducible:

* Every physical card is a uid string ``<family><kind>.<copy>`` (families
  ``b``/``h``/``f``; kind 0 is wild). A uid lives in exactly one zone at all
  times; cards played into a pending challenge sit in the ``table`` zone.
* All randomness happens in ``new_game`` (three seeded shuffles). Draws take
  the deck top; resolved cards return to deck bottoms, so decks recycle
  without reshuffling. Drawing from an empty deck is a silent skip.
* ``apply`` validates fully before mutating, so a rejected action leaves the
  state untouched. On success it mutates the passed state and returns it;
  treat the argument as consumed.
* ``turn_counter`` counts completed turns; a game that reaches
  ``config.turn_cap`` ends in a stalemate ranked by surviving businesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .catalog import Catalog, validate as validate_catalog
from .errors import (
    IllegalActionError,
    InvalidCatalogError,
    InvalidConfigError,
    NotYourTurnError,
    WrongPhaseError,
)
from .rng import GameRng

WILD_KIND = 0

MAX_NARRATIVE_LEN = 500


# ---------------------------------------------------------------------------
# Card uids
# ---------------------------------------------------------------------------

_UID_PARTS: dict[str, tuple[str, int, int]] = {}

_FAMILY_NAMES = {"b": "business", "h": "harm", "f": "feature"}


def make_uid(family: str, kind: int, copy: int) -> str:
    return f"{family}{kind}.{copy}"


def uid_parts(uid: str) -> tuple[str, int, int]:
    """(family letter, kind id, copy index) for a card uid."""
    parts = _UID_PARTS.get(uid)
    if parts is None:
        kind, _, copy = uid[1:].partition(".")
        parts = (uid[0], int(kind), int(copy))
        _UID_PARTS[uid] = parts
    return parts


def uid_kind(uid: str) -> int:
    return uid_parts(uid)[1]


def is_wild(uid: str) -> bool:
    return uid_parts(uid)[1] == WILD_KIND


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass
class GameConfig:
    """Deck composition, hand sizes and rule variants.

    Defaults give the standard deck (3 copies of each harm plus one wild
    harm, 2 copies of each feature plus two wilds) and the standard opening
    hands (2 harms, 3 features). ``initial_feature_hand=2`` is the faster
    variant; ``literal_replacement_draw`` switches the post-defense draw to
    the reading where both players replace both card types.
    """

    player_count: int = 4
    initial_harm_hand: int = 2
    initial_feature_hand: int = 3
    wild_harm_copies: int = 1
    wild_feature_copies: int = 2
    harm_copies_per_kind: int = 3
    feature_copies_per_kind: int = 2
    max_setups_per_turn: int = 3
    harm_exchange_enabled: bool = True
    decline_defense_allowed: bool = True
    literal_replacement_draw: bool = False
    turn_cap: int = 500
    seed: int = 0

    def validate(self) -> None:
        if not 2 <= self.player_count <= 7:
            raise InvalidConfigError(
                f"player_count must be 2..7, got {self.player_count}"
            )
        for name in (
            "initial_harm_hand", "initial_feature_hand", "wild_harm_copies",
            "wild_feature_copies", "harm_copies_per_kind",
            "feature_copies_per_kind", "max_setups_per_turn",
        ):
            if getattr(self, name) < 0:
                raise InvalidConfigError(f"{name} must be >= 0")
        if self.turn_cap < 1:
            raise InvalidConfigError("turn_cap must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidConfigError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        return {
            "player_count": self.player_count,
            "initial_harm_hand": self.initial_harm_hand,
            "initial_feature_hand": self.initial_feature_hand,
            "wild_harm_copies": self.wild_harm_copies,
            "wild_feature_copies": self.wild_feature_copies,
            "harm_copies_per_kind": self.harm_copies_per_kind,
            "feature_copies_per_kind": self.feature_copies_per_kind,
            "max_setups_per_turn": self.max_setups_per_turn,
            "harm_exchange_enabled": self.harm_exchange_enabled,
            "decline_defense_allowed": self.decline_defense_allowed,
            "literal_replacement_draw": self.literal_replacement_draw,
            "turn_cap": self.turn_cap,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GameConfig":
        unknown = set(data) - set(cls().to_dict())
        if unknown:
            raise InvalidConfigError(f"unknown config field(s) {sorted(unknown)}")
        return cls(**data)


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Action:
    """One player move. Equality ignores the free-text narrative, so action
    templates from legal_actions() match the filled-in actions players send.
    """

    type: str
    card: Optional[str] = None
    defender: Optional[int] = None
    target: Optional[str] = None
    approve: Optional[bool] = None
    narrative: Optional[str] = field(default=None, compare=False)

    # Constructors named after the moves they build.
    @classmethod
    def setup_business(cls, card: str) -> "Action":
        return cls("setup_business", card=card)

    @classmethod
    def end_turn(cls) -> "Action":
        return cls("end_turn")

    @classmethod
    def play_harm(cls, card: str, defender: int, target: str) -> "Action":
        return cls("play_harm", card=card, defender=defender, target=target)

    @classmethod
    def play_wild_harm(
        cls, card: str, defender: int, target: str, narrative: Optional[str]
    ) -> "Action":
        return cls("play_wild_harm", card=card, defender=defender,
                   target=target, narrative=narrative)

    @classmethod
    def defend(cls, card: str) -> "Action":
        return cls("defend", card=card)

    @classmethod
    def defend_narrative(cls, card: str, narrative: Optional[str]) -> "Action":
        return cls("defend_narrative", card=card, narrative=narrative)

    @classmethod
    def defend_wild(cls, card: str, narrative: Optional[str]) -> "Action":
        return cls("defend_wild", card=card, narrative=narrative)

    @classmethod
    def decline(cls) -> "Action":
        return cls("decline")

    @classmethod
    def cast_vote(cls, approve: bool) -> "Action":
        return cls("cast_vote", approve=approve)

    @classmethod
    def exchange_harm(cls, card: str) -> "Action":
        return cls("exchange_harm", card=card)

    @classmethod
    def pass_turn(cls) -> "Action":
        return cls("pass")

    def to_dict(self) -> dict:
        out: dict = {"type": self.type}
        for key in ("card", "defender", "target", "approve", "narrative"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Action":
        if not isinstance(data, dict) or "type" not in data:
            raise ValueError("action must be a mapping with a 'type'")
        kind = data["type"]
        if kind not in _ACTION_TYPES:
            raise ValueError(f"unknown action type {kind!r}")
        unknown = set(data) - {"type", "card", "defender", "target",
                               "approve", "narrative"}
        if unknown:
            raise ValueError(f"unknown action field(s) {sorted(unknown)}")
        return cls(
            kind,
            card=data.get("card"),
            defender=data.get("defender"),
            target=data.get("target"),
            approve=data.get("approve"),
            narrative=data.get("narrative"),
        )


_ACTION_TYPES = {
    "setup_business", "end_turn", "play_harm", "play_wild_harm", "defend",
    "defend_narrative", "defend_wild", "decline", "cast_vote",
    "exchange_harm", "pass",
}

_PHASE_ACTIONS = {
    "setup": {"setup_business"},
    "turn": {"setup_business", "end_turn", "play_harm", "play_wild_harm",
             "exchange_harm", "pass"},
    "defense": {"defend", "defend_narrative", "defend_wild", "decline"},
    "vote": {"cast_vote"},
    "terminal": set(),
}

_NARRATIVE_REQUIRED = {"play_wild_harm", "defend_narrative", "defend_wild"}


# ---------------------------------------------------------------------------
# State components
# ---------------------------------------------------------------------------

@dataclass
class PlayerZones:
    business_hand: list[str] = field(default_factory=list)
    harm_hand: list[str] = field(default_factory=list)
    feature_hand: list[str] = field(default_factory=list)
    in_play: list[str] = field(default_factory=list)


@dataclass
class Zones:
    """Every card uid lives in exactly one of these lists at all times."""

    harm_deck: list[str] = field(default_factory=list)   # index 0 = top
    feature_deck: list[str] = field(default_factory=list)
    box: list[str] = field(default_factory=list)
    business_discard: list[str] = field(default_factory=list)
    table: list[str] = field(default_factory=list)        # mid-challenge cards
    players: list[PlayerZones] = field(default_factory=list)

    def all_uids(self) -> list[str]:
        cards = (
            list(self.harm_deck) + list(self.feature_deck) + list(self.box)
            + list(self.business_discard) + list(self.table)
        )
        for p in self.players:
            cards += p.business_hand + p.harm_hand + p.feature_hand + p.in_play
        return cards


@dataclass
class Challenge:
    challenger: int
    defender: int
    target: str
    harm: str
    narrative: Optional[str] = None


@dataclass
class VoteContext:
    subject: str                # wild_harm_validity | wild_feature_adequacy |
                                # narrated_feature_vs_wild_harm
    proposer: int
    voters: tuple[int, ...]
    ballots: dict[int, bool]
    challenge: Challenge
    defense_feature: Optional[str] = None
    defense_narrative: Optional[str] = None


@dataclass
class Outcome:
    kind: str                   # "win" | "stalemate"
    winner: Optional[int]
    ranking: list[list[int]]    # best-first tie groups


@dataclass
class Phase:
    kind: str                   # setup | turn | defense | vote | terminal
    active: Optional[int] = None
    setups_done: int = 0
    challenge: Optional[Challenge] = None
    vote: Optional[VoteContext] = None
    outcome: Optional[Outcome] = None


@dataclass
class GameState:
    config: GameConfig
    catalog: Catalog
    zones: Zones
    turn_order: list[int]
    eliminated: list[int]
    phase: Phase
    turn_player: int
    turn_counter: int
    rng_state: int
    event_log: list[dict]

    def is_eliminated(self, player: int) -> bool:
        return player in self.eliminated

    def alive_players(self) -> list[int]:
        return [p for p in self.turn_order if p not in self.eliminated]


# ---------------------------------------------------------------------------
# Game creation
# ---------------------------------------------------------------------------

def new_game(config: GameConfig, catalog: Catalog) -> GameState:
    """Deal a fresh game and run up to the hidden setup round.

    Businesses are dealt round-robin one at a time from a shuffled stack
    (leftovers to the box), then opening harm and feature hands the same way.
    The first phase asks each player, in turn order, to set up exactly one
    business; placements stay hidden until the round completes.
    """
    config.validate()
    report = validate_catalog(catalog)
    if not report.ok:
        raise InvalidCatalogError(
            "catalog has errors: " + "; ".join(m for _, m in report.errors)
        )
    n = config.player_count
    if len(catalog.businesses) < n:
        raise InvalidConfigError(
            f"{n} players need at least {n} businesses; catalog has "
            f"{len(catalog.businesses)}"
        )

    businesses = [make_uid("b", b.id, 1) for b in catalog.businesses]
    harm_deck = [
        make_uid("h", h.id, c)
        for h in catalog.harms
        for c in range(1, config.harm_copies_per_kind + 1)
    ] + [make_uid("h", WILD_KIND, c) for c in range(1, config.wild_harm_copies + 1)]
    feature_deck = [
        make_uid("f", f.id, c)
        for f in catalog.features
        for c in range(1, config.feature_copies_per_kind + 1)
    ] + [make_uid("f", WILD_KIND, c) for c in range(1, config.wild_feature_copies + 1)]

    rng = GameRng(config.seed)
    rng.shuffle(businesses)
    rng.shuffle(harm_deck)
    rng.shuffle(feature_deck)

    zones = Zones(
        harm_deck=harm_deck,
        feature_deck=feature_deck,
        players=[PlayerZones() for _ in range(n)],
    )
    per_player = len(businesses) // n
    for i in range(per_player * n):
        zones.players[i % n].business_hand.append(businesses[i])
    zones.box = businesses[per_player * n:]
    # Opening hands, round-robin. Like any draw, dealing skips once a deck
    # runs dry (a full 7-seat table wants 21 features from a 16-card deck).
    for i in range(n * config.initial_harm_hand):
        if not zones.harm_deck:
            break
        zones.players[i % n].harm_hand.append(zones.harm_deck.pop(0))
    for i in range(n * config.initial_feature_hand):
        if not zones.feature_deck:
            break
        zones.players[i % n].feature_hand.append(zones.feature_deck.pop(0))

    order = list(range(n))
    state = GameState(
        config=config,
        catalog=catalog,
        zones=zones,
        turn_order=order,
        eliminated=[],
        phase=Phase("setup", active=order[0]),
        turn_player=order[0],
        turn_counter=0,
        rng_state=rng.state,
        event_log=[],
    )
    state.event_log.append(
        {"type": "game_started", "players": n, "turn_order": list(order)}
    )
    return state


# ---------------------------------------------------------------------------
# Legal action enumeration
# ---------------------------------------------------------------------------

def legal_actions(state: GameState, player: int) -> list[Action]:
    """Every action ``player`` may take right now (empty when not their move).

    Pure query; deterministic order (hand order, then opponents in turn
    order, then their table order).
    """
    if player not in state.turn_order or state.is_eliminated(player):
        return []
    phase = state.phase
    if phase.kind == "terminal":
        return []
    if phase.kind == "setup":
        if phase.active != player:
            return []
        hand = state.zones.players[player].business_hand
        return [Action.setup_business(uid) for uid in hand]
    if phase.kind == "turn":
        if phase.active != player:
            return []
        return _legal_turn_actions(state, player)
    if phase.kind == "defense":
        if phase.challenge.defender != player:
            return []
        return _legal_defense_actions(state, player)
    # vote
    vote = phase.vote
    if player in vote.voters and player not in vote.ballots:
        return [Action.cast_vote(True), Action.cast_vote(False)]
    return []


def _legal_turn_actions(state: GameState, player: int) -> list[Action]:
    config = state.config
    catalog = state.catalog
    pz = state.zones.players[player]
    setups_done = state.phase.setups_done

    # No running business: the player must set one up before anything else.
    if not pz.in_play and pz.business_hand:
        return [Action.setup_business(uid) for uid in pz.business_hand]

    actions: list[Action] = []
    if pz.business_hand and setups_done < config.max_setups_per_turn:
        actions += [Action.setup_business(uid) for uid in pz.business_hand]

    if setups_done == 0:
        # A turn is either setups or a single harm play, never both.
        regular_play_exists = False
        targets: list[tuple[int, str, int]] = []  # (owner, uid, kind)
        for opponent in state.turn_order:
            if opponent == player or state.is_eliminated(opponent):
                continue
            for uid in state.zones.players[opponent].in_play:
                targets.append((opponent, uid, uid_kind(uid)))
        for harm_uid in pz.harm_hand:
            kind = uid_kind(harm_uid)
            if kind == WILD_KIND:
                continue
            for owner, target_uid, target_kind in targets:
                if kind in catalog.business_by_id[target_kind].vulnerable_harms:
                    regular_play_exists = True
                    actions.append(Action.play_harm(harm_uid, owner, target_uid))
        for harm_uid in pz.harm_hand:
            if uid_kind(harm_uid) == WILD_KIND:
                for owner, target_uid, _ in targets:
                    actions.append(
                        Action.play_wild_harm(harm_uid, owner, target_uid, None)
                    )
        if (
            config.harm_exchange_enabled
            and not regular_play_exists
            and pz.harm_hand
        ):
            actions += [Action.exchange_harm(uid) for uid in pz.harm_hand]

    if setups_done >= 1:
        actions.append(Action.end_turn())
    if not actions:
        actions.append(Action.pass_turn())
    return actions


def _legal_defense_actions(state: GameState, player: int) -> list[Action]:
    catalog = state.catalog
    challenge = state.phase.challenge
    pz = state.zones.players[player]
    harm_kind = uid_kind(challenge.harm)

    defenses: list[Action] = []
    if harm_kind == WILD_KIND:
        # Any feature may answer an approved wild harm, but only with a
        # narrative the table will vote on.
        for uid in pz.feature_hand:
            kind = uid_kind(uid)
            if kind == WILD_KIND:
                defenses.append(Action.defend_wild(uid, None))
            else:
                defenses.append(Action.defend_narrative(uid, None))
    else:
        for uid in pz.feature_hand:
            kind = uid_kind(uid)
            if kind == WILD_KIND:
                defenses.append(Action.defend_wild(uid, None))
            elif harm_kind in catalog.feature_by_id[kind].counters:
                defenses.append(Action.defend(uid))

    if state.config.decline_defense_allowed or not defenses:
        defenses.append(Action.decline())
    return defenses


# ---------------------------------------------------------------------------
# Applying actions
# ---------------------------------------------------------------------------

def apply(state: GameState, player: int, action: Action) -> tuple[GameState, list[dict]]:
    """Validate and perform one action; returns (state, events it produced).

    The passed state is mutated and returned. Raises WrongPhaseError,
    NotYourTurnError or IllegalActionError without touching the state.
    """
    phase = state.phase
    if phase.kind == "terminal":
        raise WrongPhaseError("game is over")
    if action.type not in _PHASE_ACTIONS[phase.kind]:
        raise WrongPhaseError(
            f"{action.type} not accepted during {phase.kind} phase"
        )
    if phase.kind in ("setup", "turn"):
        if phase.active != player:
            raise NotYourTurnError(
                f"player {phase.active} is due to act, not {player}"
            )
    elif phase.kind == "defense":
        if phase.challenge.defender != player:
            raise NotYourTurnError(
                f"player {phase.challenge.defender} must respond, not {player}"
            )
    else:  # vote
        if player not in phase.vote.voters:
            raise NotYourTurnError(f"player {player} has no ballot in this vote")

    if action.type in _NARRATIVE_REQUIRED:
        if not action.narrative or not action.narrative.strip():
            raise IllegalActionError(f"{action.type} requires a narrative")
        if len(action.narrative) > MAX_NARRATIVE_LEN:
            raise IllegalActionError(
                f"narrative exceeds {MAX_NARRATIVE_LEN} characters"
            )

    if action not in legal_actions(state, player):
        raise IllegalActionError(f"{action.type} is not legal now")

    start = len(state.event_log)
    handler = _HANDLERS[action.type]
    handler(state, player, action)
    return state, state.event_log[start:]


def is_terminal(state: GameState) -> Optional[Outcome]:
    return state.phase.outcome if state.phase.kind == "terminal" else None


def actors_due(state: GameState) -> list[int]:
    """Players whose input the game is waiting on (empty when terminal)."""
    phase = state.phase
    if phase.kind in ("setup", "turn"):
        return [phase.active]
    if phase.kind == "defense":
        return [phase.challenge.defender]
    if phase.kind == "vote":
        return [p for p in phase.vote.voters if p not in phase.vote.ballots]
    return []


# -- helpers ----------------------------------------------------------------

def _emit(state: GameState, event_type: str, **fields) -> None:
    event = {"type": event_type}
    event.update(fields)
    state.event_log.append(event)


def _draw(state: GameState, player: int, family: str) -> None:
    deck = state.zones.harm_deck if family == "harm" else state.zones.feature_deck
    if not deck:
        return  # empty deck: the draw is skipped
    card = deck.pop(0)
    pz = state.zones.players[player]
    (pz.harm_hand if family == "harm" else pz.feature_hand).append(card)
    _emit(state, "cards_drawn", player=player, family=family, count=1)


def _ranking(state: GameState) -> list[list[int]]:
    def key(p: int) -> tuple[int, int]:
        pz = state.zones.players[p]
        return (len(pz.in_play), len(pz.in_play) + len(pz.business_hand))

    groups: list[list[int]] = []
    for p in sorted(state.turn_order, key=lambda q: (key(q)[0], key(q)[1], -q),
                    reverse=True):
        if groups and key(groups[-1][0]) == key(p):
            groups[-1].append(p)
        else:
            groups.append([p])
    return groups


def _finish(state: GameState, outcome: Outcome) -> None:
    state.phase = Phase("terminal", outcome=outcome)
    _emit(
        state, "game_over", kind=outcome.kind, winner=outcome.winner,
        ranking=[list(g) for g in outcome.ranking],
    )


def _advance_turn(state: GameState) -> None:
    state.turn_counter += 1
    if state.turn_counter >= state.config.turn_cap:
        _finish(state, Outcome("stalemate", None, _ranking(state)))
        return
    order = state.turn_order
    i = order.index(state.turn_player)
    for step in range(1, len(order) + 1):
        candidate = order[(i + step) % len(order)]
        if not state.is_eliminated(candidate):
            break
    state.turn_player = candidate
    state.phase = Phase("turn", active=candidate)
    _emit(state, "turn_started", player=candidate, turn=state.turn_counter)


def _check_elimination(state: GameState, player: int) -> None:
    pz = state.zones.players[player]
    if pz.in_play or pz.business_hand or state.is_eliminated(player):
        return
    state.eliminated.append(player)
    # Their hidden hands feed the deck bottoms in hand order.
    state.zones.harm_deck.extend(pz.harm_hand)
    pz.harm_hand.clear()
    state.zones.feature_deck.extend(pz.feature_hand)
    pz.feature_hand.clear()
    _emit(state, "player_eliminated", player=player)


def _after_loss(state: GameState, defender: int) -> None:
    _check_elimination(state, defender)
    alive = state.alive_players()
    if len(alive) <= 1:
        winner = alive[0] if alive else None
        _finish(state, Outcome("win", winner, _ranking(state)))
    else:
        _advance_turn(state)


def _resolve_success(state: GameState, challenge: Challenge, feature_uid: str) -> None:
    """Defense succeeded: spent cards under their decks, replacements drawn."""
    zones = state.zones
    zones.table.remove(challenge.harm)
    zones.harm_deck.append(challenge.harm)
    zones.table.remove(feature_uid)
    zones.feature_deck.append(feature_uid)
    _emit(
        state, "challenge_resolved", challenger=challenge.challenger,
        defender=challenge.defender, success=True, business_discarded=None,
    )
    if state.config.literal_replacement_draw:
        _draw(state, challenge.challenger, "harm")
        _draw(state, challenge.challenger, "feature")
        _draw(state, challenge.defender, "harm")
        _draw(state, challenge.defender, "feature")
    else:
        _draw(state, challenge.challenger, "harm")
        _draw(state, challenge.defender, "feature")
    _advance_turn(state)


def _resolve_failure(state: GameState, challenge: Challenge) -> None:
    """Challenge succeeded: the business is lost, the harm recycles."""
    zones = state.zones
    defender_zone = zones.players[challenge.defender]
    defender_zone.in_play.remove(challenge.target)
    zones.business_discard.append(challenge.target)
    zones.table.remove(challenge.harm)
    zones.harm_deck.append(challenge.harm)
    _emit(
        state, "challenge_resolved", challenger=challenge.challenger,
        defender=challenge.defender, success=False,
        business_discarded=uid_kind(challenge.target),
    )
    _draw(state, challenge.challenger, "harm")
    _after_loss(state, challenge.defender)


# -- action handlers ---------------------------------------------------------

def _do_setup(state: GameState, player: int, action: Action) -> None:
    pz = state.zones.players[player]
    pz.business_hand.remove(action.card)
    pz.in_play.append(action.card)
    if state.phase.kind == "setup":
        # Hidden placement; kind revealed when the round completes.
        _emit(state, "business_setup", player=player, business=None)
        order = state.turn_order
        i = order.index(player)
        if i + 1 < len(order):
            state.phase = Phase("setup", active=order[i + 1])
        else:
            _emit(
                state, "setup_revealed",
                placements=[
                    {
                        "player": p,
                        "businesses": [
                            {"uid": uid, "kind": uid_kind(uid)}
                            for uid in state.zones.players[p].in_play
                        ],
                    }
                    for p in order
                ],
            )
            state.turn_player = order[0]
            state.phase = Phase("turn", active=order[0])
            _emit(state, "turn_started", player=order[0],
                  turn=state.turn_counter)
    else:
        _emit(
            state, "business_setup", player=player,
            business=uid_kind(action.card), uid=action.card,
        )
        state.phase.setups_done += 1


def _do_end_turn(state: GameState, player: int, action: Action) -> None:
    _emit(state, "turn_ended", player=player, passed=False)
    _advance_turn(state)


def _do_pass(state: GameState, player: int, action: Action) -> None:
    _emit(state, "turn_ended", player=player, passed=True)
    _advance_turn(state)


def _do_play_harm(state: GameState, player: int, action: Action) -> None:
    pz = state.zones.players[player]
    pz.harm_hand.remove(action.card)
    state.zones.table.append(action.card)
    challenge = Challenge(
        challenger=player, defender=action.defender, target=action.target,
        harm=action.card,
    )
    _emit(
        state, "harm_played", challenger=player, defender=action.defender,
        target_uid=action.target, target_kind=uid_kind(action.target),
        harm_kind=uid_kind(action.card), narrative=None,
    )
    state.phase = Phase("defense", active=action.defender, challenge=challenge)


def _do_play_wild_harm(state: GameState, player: int, action: Action) -> None:
    pz = state.zones.players[player]
    pz.harm_hand.remove(action.card)
    state.zones.table.append(action.card)
    narrative = action.narrative.strip()
    challenge = Challenge(
        challenger=player, defender=action.defender, target=action.target,
        harm=action.card, narrative=narrative,
    )
    _emit(
        state, "harm_played", challenger=player, defender=action.defender,
        target_uid=action.target, target_kind=uid_kind(action.target),
        harm_kind=WILD_KIND, narrative=narrative,
    )
    _open_vote(state, "wild_harm_validity", proposer=player, challenge=challenge)


def _do_defend(state: GameState, player: int, action: Action) -> None:
    challenge = state.phase.challenge
    pz = state.zones.players[player]
    pz.feature_hand.remove(action.card)
    state.zones.table.append(action.card)
    _emit(
        state, "defense_played", defender=player,
        feature_kind=uid_kind(action.card), narrative=None,
    )
    _resolve_success(state, challenge, action.card)


def _do_defend_narrative(state: GameState, player: int, action: Action) -> None:
    challenge = state.phase.challenge
    pz = state.zones.players[player]
    pz.feature_hand.remove(action.card)
    state.zones.table.append(action.card)
    narrative = action.narrative.strip()
    _emit(
        state, "defense_played", defender=player,
        feature_kind=uid_kind(action.card), narrative=narrative,
    )
    _open_vote(
        state, "narrated_feature_vs_wild_harm", proposer=player,
        challenge=challenge, defense_feature=action.card,
        defense_narrative=narrative,
    )


def _do_defend_wild(state: GameState, player: int, action: Action) -> None:
    challenge = state.phase.challenge
    pz = state.zones.players[player]
    pz.feature_hand.remove(action.card)
    state.zones.table.append(action.card)
    narrative = action.narrative.strip()
    _emit(
        state, "defense_played", defender=player, feature_kind=WILD_KIND,
        narrative=narrative,
    )
    _open_vote(
        state, "wild_feature_adequacy", proposer=player, challenge=challenge,
        defense_feature=action.card, defense_narrative=narrative,
    )


def _do_decline(state: GameState, player: int, action: Action) -> None:
    challenge = state.phase.challenge
    _emit(state, "defense_declined", defender=player)
    _resolve_failure(state, challenge)


def _do_exchange(state: GameState, player: int, action: Action) -> None:
    pz = state.zones.players[player]
    pz.harm_hand.remove(action.card)
    state.zones.harm_deck.append(action.card)
    _emit(state, "harm_exchanged", player=player)
    _draw(state, player, "harm")
    _advance_turn(state)


def _open_vote(
    state: GameState,
    subject: str,
    proposer: int,
    challenge: Challenge,
    defense_feature: Optional[str] = None,
    defense_narrative: Optional[str] = None,
) -> None:
    voters = tuple(p for p in state.alive_players() if p != proposer)
    vote = VoteContext(
        subject=subject, proposer=proposer, voters=voters, ballots={},
        challenge=challenge, defense_feature=defense_feature,
        defense_narrative=defense_narrative,
    )
    _emit(
        state, "vote_opened", subject=subject, proposer=proposer,
        voters=list(voters),
    )
    state.phase = Phase("vote", vote=vote)


def _do_cast_vote(state: GameState, player: int, action: Action) -> None:
    vote = state.phase.vote
    vote.ballots[player] = action.approve
    _emit(state, "vote_cast", player=player)
    if len(vote.ballots) < len(vote.voters):
        return
    approvals = sum(1 for v in vote.ballots.values() if v)
    rejections = len(vote.voters) - approvals
    approved = approvals > len(vote.voters) // 2  # strict majority; ties fail
    _emit(
        state, "vote_resolved", subject=vote.subject, approvals=approvals,
        rejections=rejections, approved=approved,
    )
    challenge = vote.challenge
    if vote.subject == "wild_harm_validity":
        if approved:
            state.phase = Phase(
                "defense", active=challenge.defender, challenge=challenge
            )
        else:
            # The wild harm is spent with no effect.
            state.zones.table.remove(challenge.harm)
            state.zones.harm_deck.append(challenge.harm)
            _emit(
                state, "challenge_fizzled", challenger=challenge.challenger,
                defender=challenge.defender,
                target_kind=uid_kind(challenge.target),
            )
            _draw(state, challenge.challenger, "harm")
            _advance_turn(state)
        return

    # Defense adequacy votes.
    feature_uid = vote.defense_feature
    if approved:
        _resolve_success(state, challenge, feature_uid)
        return
    defender_zone = state.zones.players[challenge.defender]
    state.zones.table.remove(feature_uid)
    if vote.subject == "wild_feature_adequacy":
        # Rejected wilds are spent and replaced.
        state.zones.feature_deck.append(feature_uid)
        _draw(state, challenge.defender, "feature")
    else:
        # A rejected narrated regular feature returns to the hand.
        defender_zone.feature_hand.append(feature_uid)
    _resolve_failure(state, challenge)


_HANDLERS = {
    "setup_business": _do_setup,
    "end_turn": _do_end_turn,
    "pass": _do_pass,
    "play_harm": _do_play_harm,
    "play_wild_harm": _do_play_wild_harm,
    "defend": _do_defend,
    "defend_narrative": _do_defend_narrative,
    "defend_wild": _do_defend_wild,
    "decline": _do_decline,
    "exchange_harm": _do_exchange,
    "cast_vote": _do_cast_vote,
}
