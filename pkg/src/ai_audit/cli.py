"""Command-line entry point.

Subcommands: validate, export, simulate, compare, serve, play, replay.
Machine-readable output (reports, validation findings, digests) goes to
stdout or ``--out`` files; prose for humans goes to stderr. Exit codes:
0 success, 1 validation/game error, 2 usage error.

``AI_AUDIT_CATALOG`` names a default catalog file used when ``--catalog``
is not given.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

import yaml

from .bots import BotContext, choose_action, parse_strategy
from .catalog import Catalog, default_catalog, load_catalog, validate
from .engine import (
    Action,
    GameConfig,
    WILD_KIND,
    actors_due,
    apply,
    is_terminal,
    uid_kind,
)
from .errors import AiAuditError
from .printsheets import StyleOptions, export_print_sheets
from .rng import split_seed
from .serialize import (
    GameRecorder,
    load_action_log,
    state_digest,
    verify_log_document,
)
from .sim import SimPlan, compare, emit_report, run
from .views import view_for


def _say(text: str) -> None:
    print(text, file=sys.stderr)


def _load_catalog_arg(path: str | None) -> Catalog:
    path = path or os.environ.get("AI_AUDIT_CATALOG")
    if not path:
        return default_catalog()
    return load_catalog(Path(path).read_text(encoding="utf-8"))


def _load_config_file(path: str | None, **overrides) -> GameConfig:
    data = {}
    if path:
        loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        if not isinstance(loaded, dict):
            raise AiAuditError(f"config file {path} must hold a mapping")
        data.update(loaded)
    data.update({k: v for k, v in overrides.items() if v is not None})
    return GameConfig.from_dict(data)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    report = validate(catalog)
    for line in report.lines():
        print(line)
    _say(
        f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)"
    )
    return 0 if report.ok else 1


def _cmd_export(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    style = StyleOptions()
    paths = export_print_sheets(catalog, args.out, style)
    for name, path in paths.items():
        print(path)
    _say(f"wrote {len(paths)} print-and-play files to {args.out}")
    return 0


def _lineup(text: str):
    return [parse_strategy(part) for part in text.split(",") if part.strip()]


def _cmd_simulate(args) -> int:
    lineup = _lineup(args.bots)
    config = _load_config_file(
        args.config, player_count=len(lineup), seed=None
    )
    plan = SimPlan(
        games=args.games, base_seed=args.seed, config=config, lineup=lineup,
        rotate_seats=not args.no_rotate,
    )
    report = run(plan, _load_catalog_arg(args.catalog))
    _write_out(emit_report(report, args.format), args.out)
    _say(
        f"{args.games} games: mean turns {report.turns_mean:.1f}, "
        f"stalemates {report.stalemates}, defense rate "
        f"{report.defense_success_rate:.4f}"
    )
    return 0


def _cmd_compare(args) -> int:
    lineup = _lineup(args.bots)
    config_a = _load_config_file(args.config_a, player_count=len(lineup))
    config_b = _load_config_file(args.config_b, player_count=len(lineup))
    base = SimPlan(games=args.games, base_seed=args.seed, config=config_a,
                   lineup=lineup, rotate_seats=not args.no_rotate)
    variant = replace(base, config=config_b, lineup=list(lineup))
    comparison = compare(base, variant, _load_catalog_arg(args.catalog))
    _write_out(emit_report(comparison, args.format), args.out)
    deltas = ", ".join(f"{k}: {v:+.4f}" for k, v in comparison.deltas.items())
    _say(f"deltas (b - a): {deltas}")
    return 0


def _cmd_serve(args) -> int:
    from .server import ServerOptions, run_server

    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise AiAuditError(f"--addr must be HOST:PORT, got {args.addr!r}")
    options = ServerOptions.with_vote_timeout(
        args.vote_timeout, static_dir=args.static
    )
    _say(f"serving on http://{host}:{port_text} (ws endpoint /ws)")
    run_server(host, int(port_text), _load_catalog_arg(args.catalog), options)
    return 0


def _cmd_replay(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    document = load_action_log(Path(args.log).read_text(encoding="utf-8"))
    final = verify_log_document(document, catalog)
    print(state_digest(final))
    _say(
        f"replayed {len(document['actions'])} actions; digest matches"
    )
    return 0


# -- interactive play ---------------------------------------------------------

def _title(catalog: Catalog, family: str, kind: int) -> str:
    if kind == WILD_KIND:
        return "Wild"
    if family == "b":
        return catalog.business_by_id[kind].title
    if family == "h":
        return catalog.harm_by_id[kind].title
    return catalog.feature_by_id[kind].title


def _short(text: str, limit: int = 48) -> str:
    return text if len(text) <= limit else text[: limit - 1] + "~"


def _describe_action(catalog: Catalog, action: Action) -> str:
    if action.type == "setup_business":
        kind = uid_kind(action.card)
        return f"Set up business {kind}: {_short(_title(catalog, 'b', kind))}"
    if action.type == "play_harm":
        kind = uid_kind(action.card)
        target = uid_kind(action.target)
        return (
            f"Play harm {kind} ({_short(_title(catalog, 'h', kind))}) vs "
            f"P{action.defender}'s business {target}"
        )
    if action.type == "play_wild_harm":
        target = uid_kind(action.target)
        return f"Play WILD harm vs P{action.defender}'s business {target}"
    if action.type == "defend":
        kind = uid_kind(action.card)
        return f"Defend with feature {kind}: {_short(_title(catalog, 'f', kind))}"
    if action.type == "defend_narrative":
        kind = uid_kind(action.card)
        return (
            f"Defend (narrate) with feature {kind}: "
            f"{_short(_title(catalog, 'f', kind))}"
        )
    if action.type == "defend_wild":
        return "Defend with the WILD feature (narrate)"
    if action.type == "exchange_harm":
        kind = uid_kind(action.card)
        return f"Exchange harm {kind} ({_short(_title(catalog, 'h', kind))})"
    if action.type == "cast_vote":
        return "Vote approve" if action.approve else "Vote reject"
    return {"end_turn": "End turn", "decline": "Decline the defense",
            "pass": "Pass"}.get(action.type, action.type)


def _render_view(catalog: Catalog, view) -> None:
    _say("")
    _say(f"— turn {view.turn_counter}, phase: {view.phase} "
         f"(decks: {view.harm_deck_count} harms / "
         f"{view.feature_deck_count} features)")
    for row in view.players:
        marker = "you" if row["player"] == view.viewer else f"P{row['player']}"
        if row["eliminated"]:
            _say(f"  {marker}: eliminated")
            continue
        if row["in_play"] is None:
            table = f"{row['in_play_count']} hidden business(es)"
        else:
            table = ", ".join(
                f"{c['kind']}:{_short(_title(catalog, 'b', c['kind']), 28)}"
                for c in row["in_play"]
            ) or "(no businesses)"
        _say(f"  {marker}: {table} | hand {row['business_hand_count']}b/"
             f"{row['harm_hand_count']}h/{row['feature_hand_count']}f")
    if view.challenge:
        ch = view.challenge
        harm = ("WILD" if ch["wild"]
                else f"{ch['harm_kind']} {_short(_title(catalog, 'h', ch['harm_kind']))}")
        _say(f"  challenge: P{ch['challenger']} plays {harm} vs "
             f"P{ch['defender']}'s business {ch['target_kind']}")
        if ch["narrative"]:
            _say(f"  narrative: {ch['narrative']}")
    if view.vote:
        _say(f"  vote [{view.vote['subject']}]: "
             f"{view.vote['ballots_cast']}/{view.vote['voters_total']} cast")
    if view.your_hand:
        harms = ", ".join(
            f"{c['kind']}:{_short(_title(catalog, 'h', c['kind']), 24)}"
            for c in view.your_hand["harms"]
        )
        features = ", ".join(
            f"{c['kind']}:{_short(_title(catalog, 'f', c['kind']), 24)}"
            for c in view.your_hand["features"]
        )
        _say(f"  your harms: {harms or '(none)'}")
        _say(f"  your features: {features or '(none)'}")


def _prompt_human(catalog: Catalog, view) -> Action:
    options = view.legal_actions
    _say("")
    for i, option in enumerate(options, 1):
        _say(f"  {i}. {_describe_action(catalog, option)}")
    while True:
        _say("choose an action number:")
        line = sys.stdin.readline()
        if not line:
            raise EOFError
        line = line.strip()
        if line.isdigit() and 1 <= int(line) <= len(options):
            action = options[int(line) - 1]
            if action.type in ("play_wild_harm", "defend_wild",
                               "defend_narrative"):
                _say("enter the narrative for this wild/narrated card:")
                narrative = sys.stdin.readline().strip()
                if not narrative:
                    _say("a narrative is required; pick again")
                    continue
                return Action(action.type, card=action.card,
                              defender=action.defender, target=action.target,
                              narrative=narrative)
            return action
        _say(f"'{line}' is not a number from 1 to {len(options)}; try again")


def _cmd_play(args) -> int:
    catalog = _load_catalog_arg(args.catalog)
    strategies = _lineup(args.bots)
    player_count = len(strategies) + 1
    config = _load_config_file(
        args.config, player_count=player_count, seed=args.seed
    )
    recorder = GameRecorder(config, catalog)
    state = recorder.state
    bots = {
        seat + 1: BotContext(strategy, seed=split_seed(config.seed, seat + 2),
                             catalog=catalog)
        for seat, strategy in enumerate(strategies)
    }
    _say(f"you are seat 0 of {player_count}; seed {config.seed}")
    try:
        while is_terminal(state) is None:
            due = actors_due(state)
            actor = due[0] if 0 not in due else 0
            if actor == 0:
                view = view_for(state, 0)
                _render_view(catalog, view)
                action = _prompt_human(catalog, view)
            else:
                action = choose_action(bots[actor], view_for(state, actor))
            events = recorder.apply(actor, action)
            if actor != 0:
                for event in events:
                    if event["type"] in ("harm_played", "defense_played",
                                         "defense_declined",
                                         "challenge_resolved",
                                         "player_eliminated", "vote_resolved"):
                        _say(f"  [P{actor}] {event}")
    except EOFError:
        _say("input closed; aborting the game")
        return 1
    outcome = is_terminal(state)
    if outcome.kind == "win":
        _say(f"game over: seat {outcome.winner} wins "
             f"after {state.turn_counter} turns")
    else:
        _say(f"game over: stalemate at the {state.turn_counter}-turn cap")
    print(state_digest(state))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ai-audit",
        description="AI Audit card game: validation, print sheets, "
                    "simulation, multiplayer server and terminal play.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a catalog document")
    p.add_argument("--catalog", help="catalog file (default: built-in deck)")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("export", help="write print-and-play sheets")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("simulate", help="run a Monte-Carlo bot tournament")
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bots", required=True,
                   help="comma-separated strategies, one per seat")
    p.add_argument("--config", help="GameConfig YAML file")
    p.add_argument("--catalog")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--no-rotate", action="store_true",
                   help="pin strategies to seats instead of rotating")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="paired A/B config comparison")
    p.add_argument("--config-a", required=True)
    p.add_argument("--config-b", required=True)
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bots", required=True)
    p.add_argument("--catalog")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--no-rotate", action="store_true")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("serve", help="run the multiplayer websocket server")
    p.add_argument("--addr", default="127.0.0.1:8732", help="HOST:PORT")
    p.add_argument("--catalog")
    p.add_argument("--static", help="directory with the browser client")
    p.add_argument("--vote-timeout", type=float, default=120.0)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("play", help="interactive terminal game (you: seat 0)")
    p.add_argument("--bots", required=True,
                   help="strategies for the other seats")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config")
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("replay", help="verify a recorded action log")
    p.add_argument("--log", required=True)
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_replay)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AiAuditError as exc:
        _say(f"error: {exc}")
        return 1
    except OSError as exc:
        _say(f"i/o error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
