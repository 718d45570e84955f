"""Simulator: reproducibility, accounting, paired comparison, emission."""

import pytest

from ai_audit.bots import Strategy
from ai_audit.engine import GameConfig
from ai_audit.sim import (
    MismatchedPlanError,
    SimPlan,
    compare,
    emit_report,
    parse_report,
    run,
)


def _plan(games=30, seed=11, **config_kwargs):
    config_kwargs.setdefault("player_count", 4)
    lineup = [Strategy("random")] * config_kwargs["player_count"]
    return SimPlan(
        games=games, base_seed=seed,
        config=GameConfig(**config_kwargs), lineup=lineup,
    )


@pytest.fixture(scope="module")
def baseline_report():
    return run(_plan())


def test_identical_plans_identical_bytes(baseline_report):
    again = run(_plan())
    assert emit_report(again) == emit_report(baseline_report)


def test_accounting_invariants(baseline_report):
    r = baseline_report
    assert sum(r.wins_by_strategy.values()) + r.stalemates == r.games
    assert sum(r.seat_wins) + r.stalemates == r.games
    assert r.defense_successes <= r.defense_attempts
    assert 0.0 <= r.defense_success_rate <= 1.0
    for rate in r.win_rates.values():
        assert 0.0 <= rate <= 1.0
    # Every harm played either reached the defender or was a rejected wild.
    fizzled = r.wild_harms_played - r.wild_harms_approved
    assert sum(r.harm_usage.values()) == r.defense_attempts + fizzled
    assert r.wild_harms_approved <= r.wild_harms_played
    assert r.wild_features_approved <= r.wild_features_played
    for kind, survived in r.business_survivals.items():
        assert survived <= r.business_setups[kind]
    for rate in r.business_survival_rates.values():
        assert 0.0 <= rate <= 1.0


def test_turn_stats_ordered(baseline_report):
    r = baseline_report
    assert r.turns_min <= r.turns_median <= r.turns_max
    assert r.turns_min <= r.turns_mean <= r.turns_max


def test_mixed_lineup_wins_keyed_by_strategy():
    lineup = [
        Strategy("least_harm_first"),
        Strategy("backup_overlap"),
        Strategy("mimic"),
        Strategy("greedy_defender"),
    ]
    plan = SimPlan(games=12, base_seed=3, config=GameConfig(player_count=4),
                   lineup=lineup)
    report = run(plan)
    assert set(report.wins_by_strategy) == {s.name for s in lineup}
    assert sum(report.wins_by_strategy.values()) + report.stalemates == 12


def test_lineup_must_fill_the_table():
    plan = SimPlan(games=1, base_seed=1, config=GameConfig(player_count=4),
                   lineup=[Strategy("random")] * 3)
    with pytest.raises(Exception):
        run(plan)


def test_json_round_trip(baseline_report):
    text = emit_report(baseline_report, "json")
    assert parse_report(text) == baseline_report


def test_csv_has_strategy_rows_and_summary(baseline_report):
    lines = emit_report(baseline_report, "csv").strip().splitlines()
    strategies = [l for l in lines if l.startswith("strategy,")]
    assert len(strategies) == len(baseline_report.wins_by_strategy)
    assert lines[-1].startswith("summary,")
    # Rates carry exactly four decimals.
    rate = strategies[0].split(",")[3]
    assert len(rate.split(".")[1]) == 4


def test_unknown_format_rejected(baseline_report):
    with pytest.raises(ValueError):
        emit_report(baseline_report, "parquet")


def test_plan_document_round_trip():
    plan = _plan(games=5)
    clone = SimPlan.from_dict(plan.to_dict())
    assert emit_report(run(clone)) == emit_report(run(plan))


class TestCompare:
    def test_identical_plans_zero_deltas(self):
        cmp = compare(_plan(games=8), _plan(games=8))
        assert all(delta == 0 for delta in cmp.deltas.values())

    def test_mismatched_games_rejected(self):
        with pytest.raises(MismatchedPlanError):
            compare(_plan(games=8), _plan(games=9))

    def test_mismatched_seed_rejected(self):
        with pytest.raises(MismatchedPlanError):
            compare(_plan(seed=1), _plan(seed=2))

    def test_mismatched_lineup_rejected(self):
        a = _plan(games=4)
        b = _plan(games=4)
        b.lineup = [Strategy("mimic")] * 4
        with pytest.raises(MismatchedPlanError):
            compare(a, b)

    def test_feature_hand_variant_direction(self):
        # The faster 2-feature variant ends sooner and defends less often.
        base = _plan(games=400, seed=42, initial_feature_hand=3)
        fast = _plan(games=400, seed=42, initial_feature_hand=2)
        cmp = compare(base, fast)
        assert cmp.report_b.turns_mean < cmp.report_a.turns_mean
        assert cmp.report_b.defense_success_rate < cmp.report_a.defense_success_rate

    def test_comparison_emission(self):
        cmp = compare(_plan(games=4), _plan(games=4))
        text = emit_report(cmp, "json")
        assert '"deltas"' in text
        csv = emit_report(cmp, "csv")
        assert csv.startswith("metric,a,b,delta")
