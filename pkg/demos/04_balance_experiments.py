"""
Rule-variant balance experiments
================================

Paired comparisons on identical per-game seeds, the way the design changes
were evaluated: the 2-feature opening hand should make games faster and
defenses scarcer, and the harm-exchange rule should keep games from jamming.
"""

from ai_audit import GameConfig, SimPlan, Strategy, compare

GAMES = 600
SEED = 99


def plan(**config_kwargs):
    config_kwargs.setdefault("player_count", 4)
    return SimPlan(
        games=GAMES, base_seed=SEED,
        config=GameConfig(**config_kwargs),
        lineup=[Strategy("random")] * 4,
    )


print(f"paired runs, {GAMES} games each, shared seeds\n")

# Experiment 1: opening feature hand 3 (stock) vs 2 (fast variant).
result = compare(plan(initial_feature_hand=3), plan(initial_feature_hand=2))
a, b = result.report_a, result.report_b
print("feature hand 3 -> 2:")
print(f"  mean turns            {a.turns_mean:7.2f} -> {b.turns_mean:7.2f}")
print(f"  defense success rate  {a.defense_success_rate:7.4f} -> "
      f"{b.defense_success_rate:7.4f}")
print(f"  stalemates            {a.stalemates:7d} -> {b.stalemates:7d}")

# Experiment 2: the harm-exchange fix on vs off.
result = compare(plan(harm_exchange_enabled=True),
                 plan(harm_exchange_enabled=False))
a, b = result.report_a, result.report_b
print("\nharm exchange on -> off:")
print(f"  mean turns            {a.turns_mean:7.2f} -> {b.turns_mean:7.2f}")
print(f"  stalemates (cap hits) {a.stalemates:7d} -> {b.stalemates:7d}")
print(f"  exchanges performed   {a.exchanges:7d} -> {b.exchanges:7d}")

# Experiment 3: the literal replacement-draw reading (both players draw both
# card types after a successful defense) inflates hands over time.
result = compare(plan(literal_replacement_draw=False),
                 plan(literal_replacement_draw=True))
a, b = result.report_a, result.report_b
print("\nreplacement draw spent-only -> literal both-draw-both:")
print(f"  mean turns            {a.turns_mean:7.2f} -> {b.turns_mean:7.2f}")
print(f"  defense success rate  {a.defense_success_rate:7.4f} -> "
      f"{b.defense_success_rate:7.4f}")
