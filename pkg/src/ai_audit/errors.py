"""Exception types shared across the package."""

from __future__ import annotations


class AiAuditError(Exception):
    """Base class for all package errors."""


class CatalogParseError(AiAuditError):
    """A catalog/plan/log document failed to parse; message carries location."""


class DuplicateIdError(CatalogParseError):
    """Two entries in the same card family share an id."""


class UnknownIdError(AiAuditError):
    """A business/harm/feature id does not exist in the catalog."""


class InvalidCatalogError(AiAuditError):
    """An operation requiring a clean catalog was given one with errors."""


class InvalidConfigError(AiAuditError):
    """A GameConfig violates its bounds or cannot be satisfied by the catalog."""


class GameRuleError(AiAuditError):
    """Base class for rejected game actions."""


class WrongPhaseError(GameRuleError):
    """Action type does not belong to the current phase (or game is over)."""


class NotYourTurnError(GameRuleError):
    """A different player must act in the current phase."""


class IllegalActionError(GameRuleError):
    """Action is well-formed for the phase but not in the legal set."""


class UnknownViewerError(AiAuditError):
    """view_for() was asked for a viewer that is not a seat or spectator role."""


class ReplayDivergenceError(AiAuditError):
    """Replay hit a recorded step that does not apply; names the step index."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
