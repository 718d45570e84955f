"""Monte-Carlo balance harness: many seeded bot games, aggregated metrics.

A SimPlan names a game count, a base seed, a config template and a lineup of
strategies. Game ``i`` runs with seed ``split_seed(base_seed, i)`` and (with
``rotate_seats``) the lineup rotated by ``i`` seats, so no strategy owns the
first-player advantage. Reports are bit-reproducible: the same plan always
yields the same bytes from ``emit_report``.

"Defense attempt" counts a challenge the defender actually had to answer
(a rejected wild harm never reaches them); "defense success" counts those
resolved in the defender's favor. Business survival is measured over games
where the kind was set up at least once.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .bots import BotContext, Strategy, choose_action, parse_strategy
from .catalog import Catalog, default_catalog
from .engine import (
    GameConfig,
    GameState,
    WILD_KIND,
    actors_due,
    apply,
    is_terminal,
    new_game,
    uid_kind,
)
from .errors import AiAuditError, InvalidConfigError
from .rng import split_seed
from .views import view_for


class MismatchedPlanError(AiAuditError):
    """compare() was given plans that differ beyond their configs."""


@dataclass
class SimPlan:
    games: int
    base_seed: int
    config: GameConfig
    lineup: list[Strategy]
    rotate_seats: bool = True

    def validate(self) -> None:
        if self.games < 1:
            raise InvalidConfigError("plan needs at least one game")
        if len(self.lineup) != self.config.player_count:
            raise InvalidConfigError(
                f"lineup has {len(self.lineup)} strategies for "
                f"{self.config.player_count} seats"
            )
        self.config.validate()

    def to_dict(self) -> dict:
        return {
            "games": self.games,
            "base_seed": self.base_seed,
            "rotate_seats": self.rotate_seats,
            "config": self.config.to_dict(),
            "lineup": [s.name for s in self.lineup],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SimPlan":
        config_data = dict(data.get("config", {}))
        lineup = [parse_strategy(s) for s in data["lineup"]]
        config_data.setdefault("player_count", len(lineup))
        return cls(
            games=data["games"],
            base_seed=data.get("base_seed", 0),
            config=GameConfig.from_dict(config_data),
            lineup=lineup,
            rotate_seats=data.get("rotate_seats", True),
        )


@dataclass
class MatchReport:
    games: int
    base_seed: int
    player_count: int
    lineup: list[str]
    rotate_seats: bool
    wins_by_strategy: dict[str, int]
    win_rates: dict[str, float]
    seat_wins: list[int]
    stalemates: int
    turns_min: int
    turns_mean: float
    turns_median: float
    turns_max: int
    defense_attempts: int
    defense_successes: int
    defense_success_rate: float
    harm_usage: dict[int, int]
    business_setups: dict[int, int]
    business_survivals: dict[int, int]
    business_survival_rates: dict[int, float]
    exchanges: int
    wild_harms_played: int
    wild_harms_approved: int
    wild_features_played: int
    wild_features_approved: int

    def to_dict(self) -> dict:
        out = {}
        for key, value in self.__dict__.items():
            if isinstance(value, dict):
                out[key] = {str(k): value[k] for k in sorted(value)}
            else:
                out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "MatchReport":
        kwargs = dict(data)
        for key in ("harm_usage", "business_setups", "business_survivals",
                    "business_survival_rates"):
            kwargs[key] = {int(k): v for k, v in data[key].items()}
        for key in ("wins_by_strategy", "win_rates"):
            kwargs[key] = dict(data[key])
        kwargs["lineup"] = list(data["lineup"])
        kwargs["seat_wins"] = list(data["seat_wins"])
        return cls(**kwargs)


# ---------------------------------------------------------------------------
# Single-game driver
# ---------------------------------------------------------------------------

def play_bot_game(
    config: GameConfig,
    catalog: Catalog,
    seat_bots: list[BotContext],
) -> GameState:
    """Run one game to its terminal phase with a bot in every seat."""
    state = new_game(config, catalog)
    # Generous bound: if the engine ever stalled, this aborts loudly instead
    # of spinning (turn_cap bounds turns, each turn a bounded apply count).
    budget = config.turn_cap * (config.player_count + 8) + 50 * config.player_count
    for _ in range(budget):
        due = actors_due(state)
        if not due:
            return state
        actor = due[0]
        action = choose_action(seat_bots[actor], view_for(state, actor))
        apply(state, actor, action)
    raise AiAuditError(
        f"game exceeded its apply budget (seed {config.seed}); engine stuck"
    )


def _game_stats(state: GameState, seat_strategies: list[str]) -> dict:
    outcome = is_terminal(state)
    stats = {
        "turns": state.turn_counter,
        "stalemate": outcome.kind == "stalemate",
        "winner_seat": outcome.winner,
        "winner_strategy": (
            seat_strategies[outcome.winner] if outcome.winner is not None else None
        ),
        "defense_attempts": 0,
        "defense_successes": 0,
        "harm_usage": {},
        "exchanges": 0,
        "wild_harms_played": 0,
        "wild_harms_approved": 0,
        "wild_features_played": 0,
        "wild_features_approved": 0,
    }
    setup_kinds: set[int] = set()
    for event in state.event_log:
        kind = event["type"]
        if kind == "harm_played":
            usage = stats["harm_usage"]
            usage[event["harm_kind"]] = usage.get(event["harm_kind"], 0) + 1
            if event["harm_kind"] == WILD_KIND:
                stats["wild_harms_played"] += 1
        elif kind == "challenge_resolved":
            stats["defense_attempts"] += 1
            if event["success"]:
                stats["defense_successes"] += 1
        elif kind == "defense_played" and event["feature_kind"] == WILD_KIND:
            stats["wild_features_played"] += 1
        elif kind == "vote_resolved" and event["approved"]:
            if event["subject"] == "wild_harm_validity":
                stats["wild_harms_approved"] += 1
            elif event["subject"] == "wild_feature_adequacy":
                stats["wild_features_approved"] += 1
        elif kind == "harm_exchanged":
            stats["exchanges"] += 1
        elif kind == "business_setup" and event["business"] is not None:
            setup_kinds.add(event["business"])
        elif kind == "setup_revealed":
            for placement in event["placements"]:
                for card in placement["businesses"]:
                    setup_kinds.add(card["kind"])
    survivors = {
        uid_kind(uid)
        for pz in state.zones.players
        for uid in pz.in_play
    }
    stats["business_setups"] = setup_kinds
    stats["business_survivals"] = setup_kinds & survivors
    return stats


def run(plan: SimPlan, catalog: Optional[Catalog] = None) -> MatchReport:
    """Play every game in the plan and aggregate a MatchReport."""
    plan.validate()
    catalog = catalog or default_catalog()
    n = plan.config.player_count

    wins_by_strategy = {s.name: 0 for s in plan.lineup}
    seat_wins = [0] * n
    stalemates = 0
    turn_counts: list[int] = []
    defense_attempts = defense_successes = 0
    harm_usage: dict[int, int] = {}
    business_setups: dict[int, int] = {}
    business_survivals: dict[int, int] = {}
    exchanges = 0
    wild_counts = [0, 0, 0, 0]  # harms played/approved, features played/approved

    for index in range(plan.games):
        seed = split_seed(plan.base_seed, index)
        rotation = index % n if plan.rotate_seats else 0
        seat_strategies = [plan.lineup[(seat - rotation) % n] for seat in range(n)]
        bots = [
            BotContext(strategy, seed=split_seed(seed, seat + 1), catalog=catalog)
            for seat, strategy in enumerate(seat_strategies)
        ]
        config = replace(plan.config, seed=seed)
        try:
            state = play_bot_game(config, catalog, bots)
        except AiAuditError:
            raise
        except Exception as exc:  # engine bug: abort with the failing seed
            raise AiAuditError(
                f"game {index} (seed {seed}) aborted: {exc}"
            ) from exc

        stats = _game_stats(state, [s.name for s in seat_strategies])
        if stats["stalemate"]:
            stalemates += 1
        else:
            wins_by_strategy[stats["winner_strategy"]] += 1
            seat_wins[stats["winner_seat"]] += 1
        turn_counts.append(stats["turns"])
        defense_attempts += stats["defense_attempts"]
        defense_successes += stats["defense_successes"]
        for kind, count in stats["harm_usage"].items():
            harm_usage[kind] = harm_usage.get(kind, 0) + count
        for kind in stats["business_setups"]:
            business_setups[kind] = business_setups.get(kind, 0) + 1
        for kind in stats["business_survivals"]:
            business_survivals[kind] = business_survivals.get(kind, 0) + 1
        exchanges += stats["exchanges"]
        wild_counts[0] += stats["wild_harms_played"]
        wild_counts[1] += stats["wild_harms_approved"]
        wild_counts[2] += stats["wild_features_played"]
        wild_counts[3] += stats["wild_features_approved"]

    return MatchReport(
        games=plan.games,
        base_seed=plan.base_seed,
        player_count=n,
        lineup=[s.name for s in plan.lineup],
        rotate_seats=plan.rotate_seats,
        wins_by_strategy=wins_by_strategy,
        win_rates={
            name: count / plan.games for name, count in wins_by_strategy.items()
        },
        seat_wins=seat_wins,
        stalemates=stalemates,
        turns_min=min(turn_counts),
        turns_mean=statistics.fmean(turn_counts),
        turns_median=float(statistics.median(turn_counts)),
        turns_max=max(turn_counts),
        defense_attempts=defense_attempts,
        defense_successes=defense_successes,
        defense_success_rate=(
            defense_successes / defense_attempts if defense_attempts else 0.0
        ),
        harm_usage=harm_usage,
        business_setups=business_setups,
        business_survivals=business_survivals,
        business_survival_rates={
            kind: business_survivals.get(kind, 0) / count
            for kind, count in business_setups.items()
        },
        exchanges=exchanges,
        wild_harms_played=wild_counts[0],
        wild_harms_approved=wild_counts[1],
        wild_features_played=wild_counts[2],
        wild_features_approved=wild_counts[3],
    )


# ---------------------------------------------------------------------------
# Paired comparison
# ---------------------------------------------------------------------------

@dataclass
class ComparisonReport:
    report_a: MatchReport
    report_b: MatchReport
    deltas: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "a": self.report_a.to_dict(),
            "b": self.report_b.to_dict(),
            "deltas": {k: self.deltas[k] for k in sorted(self.deltas)},
        }


def compare(plan_a: SimPlan, plan_b: SimPlan,
            catalog: Optional[Catalog] = None) -> ComparisonReport:
    """Run two plans that differ only in config, on identical per-game seeds."""
    if plan_a.games != plan_b.games:
        raise MismatchedPlanError("plans must play the same number of games")
    if plan_a.base_seed != plan_b.base_seed:
        raise MismatchedPlanError("plans must share a base seed")
    if [s.name for s in plan_a.lineup] != [s.name for s in plan_b.lineup]:
        raise MismatchedPlanError("plans must field the same lineup")
    if plan_a.rotate_seats != plan_b.rotate_seats:
        raise MismatchedPlanError("plans must agree on seat rotation")
    if plan_a.config.player_count != plan_b.config.player_count:
        raise MismatchedPlanError("plans must seat the same number of players")

    report_a = run(plan_a, catalog)
    report_b = run(plan_b, catalog)
    deltas = {
        "turns_mean": report_b.turns_mean - report_a.turns_mean,
        "turns_median": report_b.turns_median - report_a.turns_median,
        "defense_success_rate": (
            report_b.defense_success_rate - report_a.defense_success_rate
        ),
        "stalemates": report_b.stalemates - report_a.stalemates,
        "defense_attempts": (
            report_b.defense_attempts - report_a.defense_attempts
        ),
        "exchanges": report_b.exchanges - report_a.exchanges,
    }
    return ComparisonReport(report_a, report_b, deltas)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def emit_report(report: MatchReport | ComparisonReport, fmt: str = "json") -> str:
    """Render a report as JSON (lossless) or a small CSV table."""
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        if isinstance(report, ComparisonReport):
            lines = ["metric,a,b,delta"]
            a, b = report.report_a, report.report_b
            rows = [
                ("turns_mean", a.turns_mean, b.turns_mean),
                ("turns_median", a.turns_median, b.turns_median),
                ("defense_success_rate", a.defense_success_rate,
                 b.defense_success_rate),
                ("stalemates", a.stalemates, b.stalemates),
                ("exchanges", a.exchanges, b.exchanges),
            ]
            for name, va, vb in rows:
                lines.append(f"{name},{va:.4f},{vb:.4f},{vb - va:.4f}")
            return "\n".join(lines) + "\n"
        lines = ["row,strategy,wins,win_rate,games,stalemates,turns_mean,defense_success_rate"]
        for name in sorted(report.wins_by_strategy):
            lines.append(
                f"strategy,{name},{report.wins_by_strategy[name]},"
                f"{report.win_rates[name]:.4f},,,,"
            )
        lines.append(
            f"summary,,,,{report.games},{report.stalemates},"
            f"{report.turns_mean:.4f},{report.defense_success_rate:.4f}"
        )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(text: str) -> MatchReport:
    """Inverse of emit_report(... , 'json') for plain match reports."""
    return MatchReport.from_dict(json.loads(text))
