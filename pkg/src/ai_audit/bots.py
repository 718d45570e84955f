"""Heuristic bot players.

Five strategies, all deterministic given their seed and the sequence of views
they are shown (bots see only their RedactedView, never the full state):

* ``random`` - uniform over the legal actions; votes approve half the time.
* ``least_harm_first`` - sets up the business with the fewest vulnerable
  harms first.
* ``backup_overlap`` - sets up businesses whose harm sets overlap its own
  table, so a spent defense narrative has a back-up twin.
* ``mimic`` - sets up businesses sharing harms with opponents' tables, so
  harm challenges aimed at it also threaten others.
* ``greedy_defender`` - always defends when a matching feature is held and
  challenges the opponent business it holds the most harms against.

Everything the prose above leaves open is shared policy: challenge when a
regular harm play exists, otherwise set up one business per turn, otherwise
exchange the most useless regular harm, and play a wild card only when no
regular action exists. Non-random bots vote approve exactly when the
narrative's claim checks out against the catalog; bot narratives embed full
card titles so those claims are machine-checkable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .catalog import Catalog
from .engine import Action, WILD_KIND, uid_kind, uid_parts
from .errors import AiAuditError
from .rng import GameRng
from .views import RedactedView

STRATEGY_NAMES = (
    "random",
    "least_harm_first",
    "backup_overlap",
    "mimic",
    "greedy_defender",
)


class NoLegalActionError(AiAuditError):
    """A bot was asked to act with an empty legal set (engine bug)."""


@dataclass(frozen=True)
class Strategy:
    name: str
    parameters: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.name not in STRATEGY_NAMES:
            raise ValueError(
                f"unknown strategy {self.name!r}; expected one of "
                f"{', '.join(STRATEGY_NAMES)}"
            )


def parse_strategy(text: str) -> Strategy:
    """Parse ``name`` or ``name:key=value,key=value`` into a Strategy."""
    name, _, params_text = text.strip().partition(":")
    parameters = {}
    if params_text:
        for pair in params_text.split(","):
            key, _, value = pair.partition("=")
            try:
                parameters[key.strip()] = float(value)
            except ValueError:
                raise ValueError(f"bad strategy parameter {pair!r}") from None
    return Strategy(name, parameters)


class BotContext:
    """One bot seat: strategy, private RNG stream and per-game scratch."""

    def __init__(self, strategy: Strategy, seed: int, catalog: Catalog):
        self.strategy = strategy
        self.rng = GameRng(seed)
        self.catalog = catalog
        self.memory: dict = {"event_cursor": 0, "harms_seen": {}}

    def _update_memory(self, view: RedactedView) -> None:
        events = view.events
        for event in events[self.memory["event_cursor"]:]:
            if event["type"] == "harm_played":
                kind = event["harm_kind"]
                seen = self.memory["harms_seen"]
                seen[kind] = seen.get(kind, 0) + 1
        self.memory["event_cursor"] = len(events)


# ---------------------------------------------------------------------------
# Narrative templates
# ---------------------------------------------------------------------------

def narrative_template(
    strategy: Strategy,
    *,
    role: str,
    business_title: str,
    harm_title: Optional[str] = None,
    feature_title: Optional[str] = None,
) -> str:
    """Deterministic wild-card narrative naming the cards involved.

    ``role`` is ``wild_harm``, ``wild_feature`` or ``narrated_feature``. The
    full card titles are embedded verbatim so voting bots can check the
    claimed pairing against the catalog.
    """
    harm = harm_title or "the claimed harm"
    if role == "wild_harm":
        return (
            f"An audit of {business_title} shows it can cause {harm}; "
            "this wild harm stands in for exactly that failure."
        )
    if role == "wild_feature":
        return (
            f"{business_title} ships a purpose-built safeguard against "
            f"{harm}, which turns this challenge aside."
        )
    if role == "narrated_feature":
        return (
            f"{feature_title} directly mitigates {harm} "
            f"for {business_title}, so the challenge fails."
        )
    raise ValueError(f"unknown narrative role {role!r}")


def _claimed_harms(catalog: Catalog, text: Optional[str]) -> list[int]:
    """Harm kinds whose full title appears verbatim in the narrative."""
    if not text:
        return []
    lowered = text.lower()
    return [h.id for h in catalog.harms if h.title.lower() in lowered]


# ---------------------------------------------------------------------------
# Decision logic
# ---------------------------------------------------------------------------

def choose_action(context: BotContext, view: RedactedView) -> Action:
    """Pick one legal action for the bot holding this view."""
    options = view.legal_actions
    if not options:
        raise NoLegalActionError(
            f"bot at seat {view.viewer} has no legal action in phase "
            f"{view.phase}"
        )
    context._update_memory(view)
    if context.strategy.name == "random":
        return _fill_narrative(context, view, context.rng.choice(options))
    if view.phase == "vote":
        return Action.cast_vote(_judge_vote(context.catalog, view))
    if view.phase == "defense":
        return _choose_defense(context, view, options)
    return _choose_turn(context, view, options)


def _fill_narrative(context: BotContext, view: RedactedView, action: Action) -> Action:
    if action.type not in ("play_wild_harm", "defend_wild", "defend_narrative"):
        return action
    catalog = context.catalog
    if action.type == "play_wild_harm":
        target_kind = uid_kind(action.target)
        business = catalog.business_by_id[target_kind]
        claimed = min(business.vulnerable_harms)
        text = narrative_template(
            context.strategy, role="wild_harm", business_title=business.title,
            harm_title=catalog.harm_by_id[claimed].title,
        )
        return Action.play_wild_harm(action.card, action.defender,
                                     action.target, text)
    business = catalog.business_by_id[view.challenge["target_kind"]]
    harm_title = _challenge_harm_title(catalog, view)
    if action.type == "defend_wild":
        text = narrative_template(
            context.strategy, role="wild_feature",
            business_title=business.title, harm_title=harm_title,
        )
        return Action.defend_wild(action.card, text)
    feature = catalog.feature_by_id[uid_kind(action.card)]
    text = narrative_template(
        context.strategy, role="narrated_feature",
        business_title=business.title, harm_title=harm_title,
        feature_title=feature.title,
    )
    return Action.defend_narrative(action.card, text)


def _challenge_harm_title(catalog: Catalog, view: RedactedView) -> Optional[str]:
    challenge = view.challenge
    if challenge is None:
        return None
    if not challenge["wild"]:
        return catalog.harm_by_id[challenge["harm_kind"]].title
    claimed = _claimed_harms(catalog, challenge["narrative"])
    if claimed:
        return catalog.harm_by_id[min(claimed)].title
    return None


def _judge_vote(catalog: Catalog, view: RedactedView) -> bool:
    """Approve iff the narrative's claimed pairing exists in the catalog."""
    vote = view.vote
    challenge = view.challenge
    claimed = _claimed_harms(catalog, challenge["narrative"])
    if vote["subject"] == "wild_harm_validity":
        vulnerable = catalog.business_by_id[challenge["target_kind"]].vulnerable_harms
        return any(h in vulnerable for h in claimed)
    if vote["subject"] == "narrated_feature_vs_wild_harm":
        counters = catalog.feature_by_id[vote["defense_feature_kind"]].counters
        return any(h in counters for h in claimed)
    # wild_feature_adequacy: the defense narrative must own up to the harm
    # actually on the table (or, against a wild harm, to one of its claims).
    defense_claims = set(_claimed_harms(catalog, vote["defense_narrative"]))
    if challenge["wild"]:
        return bool(defense_claims & set(claimed))
    return challenge["harm_kind"] in defense_claims


def _choose_defense(context: BotContext, view: RedactedView,
                    options: list[Action]) -> Action:
    catalog = context.catalog
    challenge = view.challenge

    def flexibility(action: Action) -> tuple[int, int, int]:
        kind, copy = uid_parts(action.card)[1:]
        return (len(catalog.feature_by_id[kind].counters), kind, copy)

    matching = sorted(
        (a for a in options if a.type == "defend"), key=flexibility
    )
    if matching:
        return matching[0]

    narrated = [a for a in options if a.type == "defend_narrative"]
    if narrated:
        claimed = set(_claimed_harms(catalog, challenge["narrative"]))
        countering = sorted(
            (
                a for a in narrated
                if claimed & catalog.feature_by_id[uid_kind(a.card)].counters
            ),
            key=flexibility,
        )
        if countering:
            return _fill_narrative(context, view, countering[0])

    wilds = [a for a in options if a.type == "defend_wild"]
    if wilds:
        return _fill_narrative(context, view, wilds[0])

    decline = next((a for a in options if a.type == "decline"), None)
    if decline is not None:
        return decline
    # Declining is barred and nothing counters: burn the stiffest feature.
    fallback = sorted(narrated, key=flexibility)[0]
    return _fill_narrative(context, view, fallback)


def _choose_turn(context: BotContext, view: RedactedView,
                 options: list[Action]) -> Action:
    catalog = context.catalog

    plays = [a for a in options if a.type == "play_harm"]
    if plays:
        per_target: dict[str, list[Action]] = {}
        for a in plays:
            per_target.setdefault(a.target, []).append(a)

        def target_rank(target: str) -> tuple[int, int, int]:
            sample = per_target[target][0]
            return (-len(per_target[target]), uid_kind(target), sample.defender)

        best_target = min(per_target, key=target_rank)

        def harm_rank(action: Action) -> tuple[int, int]:
            kind, copy = uid_parts(action.card)[1:]
            return (kind, copy)

        return min(per_target[best_target], key=harm_rank)

    setups = [a for a in options if a.type == "setup_business"]
    if setups and view.setups_done == 0:
        return _pick_setup(context, view, setups)
    if view.setups_done >= 1:
        end = next((a for a in options if a.type == "end_turn"), None)
        if end is not None:
            return end

    exchanges = [
        a for a in options
        if a.type == "exchange_harm" and uid_kind(a.card) != WILD_KIND
    ]
    if exchanges:
        opposing_kinds = [
            card["kind"]
            for row in view.players
            if row["player"] != view.viewer and not row["eliminated"]
            for card in (row["in_play"] or [])
        ]

        def uselessness(action: Action) -> tuple[int, int, int]:
            kind, copy = uid_parts(action.card)[1:]
            hits = sum(
                1 for b in opposing_kinds
                if kind in catalog.business_by_id[b].vulnerable_harms
            )
            return (hits, kind, copy)

        return min(exchanges, key=uselessness)

    wild_plays = [a for a in options if a.type == "play_wild_harm"]
    if wild_plays:
        def wild_rank(action: Action) -> tuple[int, int, int]:
            kind = uid_kind(action.target)
            size = len(catalog.business_by_id[kind].vulnerable_harms)
            return (-size, kind, action.defender)

        return _fill_narrative(context, view, min(wild_plays, key=wild_rank))

    for last_resort in ("end_turn", "pass", "setup_business"):
        action = next((a for a in options if a.type == last_resort), None)
        if action is not None:
            return action
    return options[0]


def _pick_setup(context: BotContext, view: RedactedView,
                setups: list[Action]) -> Action:
    catalog = context.catalog
    name = context.strategy.name

    def vulnerable(action: Action) -> frozenset[int]:
        return catalog.business_by_id[uid_kind(action.card)].vulnerable_harms

    def kind_of(action: Action) -> int:
        return uid_kind(action.card)

    if name == "least_harm_first":
        return min(setups, key=lambda a: (len(vulnerable(a)), kind_of(a)))

    if name in ("backup_overlap", "mimic"):
        mine = view.viewer
        pool: set[int] = set()
        for row in view.players:
            relevant = (row["player"] == mine) == (name == "backup_overlap")
            if relevant and not row["eliminated"]:
                for card in row["in_play"] or []:
                    pool |= catalog.business_by_id[card["kind"]].vulnerable_harms
        return min(
            setups,
            key=lambda a: (-len(vulnerable(a) & pool), kind_of(a)),
        )

    # greedy_defender and anything unspecified: stable lowest-id choice.
    return min(setups, key=kind_of)
