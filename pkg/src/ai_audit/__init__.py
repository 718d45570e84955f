"""AI Audit: a competitive card game about everyday AI systems and their harms.

Players run AI-powered businesses, challenge each other's businesses with the
harms those systems can cause, and defend with design practices that mitigate
them. This package provides the card catalog and print-and-play export, a
deterministic rules engine, heuristic bots, a Monte-Carlo balance simulator,
and a websocket multiplayer server.
"""

from .bots import (
    BotContext,
    Strategy,
    choose_action,
    narrative_template,
    parse_strategy,
)
from .catalog import (
    Business,
    Catalog,
    Feature,
    GuideEntry,
    Harm,
    ValidationReport,
    can_counter,
    default_catalog,
    guide_excerpt,
    legal_harms,
    load_catalog,
    serialize_catalog,
    validate,
)
from .engine import (
    Action,
    GameConfig,
    GameState,
    Outcome,
    actors_due,
    apply,
    is_terminal,
    legal_actions,
    new_game,
)
from .printsheets import StyleOptions, export_print_sheets
from .serialize import (
    GameRecorder,
    dump_action_log,
    load_action_log,
    replay,
    state_digest,
    verify_log_document,
)
from .sim import MatchReport, SimPlan, compare, emit_report, parse_report, run
from .views import EDUCATOR, SPECTATOR, RedactedView, view_for

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BotContext",
    "Business",
    "Catalog",
    "EDUCATOR",
    "Feature",
    "GameConfig",
    "GameRecorder",
    "GameState",
    "GuideEntry",
    "Harm",
    "MatchReport",
    "Outcome",
    "RedactedView",
    "SPECTATOR",
    "SimPlan",
    "Strategy",
    "StyleOptions",
    "ValidationReport",
    "actors_due",
    "apply",
    "can_counter",
    "choose_action",
    "compare",
    "default_catalog",
    "dump_action_log",
    "emit_report",
    "export_print_sheets",
    "guide_excerpt",
    "is_terminal",
    "legal_actions",
    "legal_harms",
    "load_action_log",
    "load_catalog",
    "narrative_template",
    "new_game",
    "parse_report",
    "parse_strategy",
    "replay",
    "run",
    "serialize_catalog",
    "state_digest",
    "validate",
    "verify_log_document",
    "view_for",
    "__version__",
]
