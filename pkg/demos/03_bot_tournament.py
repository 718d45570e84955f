"""
A strategy round robin
======================

The four heuristic strategies observed in play, plus the random baseline,
fight over 400 seeded games. Seats rotate so nobody keeps the first-player
advantage; the report is bit-reproducible for a fixed plan.
"""

from ai_audit import GameConfig, SimPlan, Strategy, emit_report, run

plan = SimPlan(
    games=400,
    base_seed=20240601,
    config=GameConfig(player_count=4),
    lineup=[
        Strategy("least_harm_first"),
        Strategy("backup_overlap"),
        Strategy("mimic"),
        Strategy("greedy_defender"),
    ],
)

report = run(plan)

print("wins by strategy:")
for name, wins in sorted(report.wins_by_strategy.items(),
                         key=lambda kv: -kv[1]):
    print(f"  {name:>18}: {wins:4d}  ({report.win_rates[name]:.1%})")

print(f"\nstalemates: {report.stalemates}")
print(f"turns: min {report.turns_min}, mean {report.turns_mean:.1f}, "
      f"median {report.turns_median:.0f}, max {report.turns_max}")
print(f"defense success rate: {report.defense_success_rate:.3f}")
print(f"wild harms played/approved: {report.wild_harms_played}/"
      f"{report.wild_harms_approved}")
print(f"exchanges: {report.exchanges}")

print("\nmost fragile businesses (survival rate when set up):")
fragile = sorted(report.business_survival_rates.items(), key=lambda kv: kv[1])
for kind, rate in fragile[:5]:
    print(f"  business {kind:>2}: {rate:.2f}")

# The same emit_report powers the CLI's --out files (json or csv).
print("\ncsv form:\n" + emit_report(report, "csv"))
