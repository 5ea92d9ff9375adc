"""
Custom exceptions for grove-moves.
"""

from typing import Any, Optional, Sequence


class GroveError(Exception):
    """Base exception class for all grove-moves errors."""

    #: Short machine-readable code printed by the CLI.
    code = "grove-error"

    def __init__(self, message: str, original_error: Optional[Exception] = None):
        super().__init__(message)
        self.original_error = original_error


class BoardError(GroveError):
    """Raised for sizes, vertices or edges that do not belong to a board."""

    code = "board"


class InvalidGroveError(GroveError):
    """Raised when an edge set fails the grove axioms where a grove is required."""

    code = "invalid-grove"

    def __init__(self, violations: Sequence[Any]):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else "no details"
        more = len(self.violations) - 1
        suffix = f" (+{more} more)" if more > 0 else ""
        super().__init__(f"Not a grove: {first}{suffix}")


class SpinError(GroveError):
    """Raised when a spin cannot be applied to a grove."""

    code = "illegal-spin"

    def __init__(self, spin: Any, cause: str, detail: str = ""):
        self.spin = spin
        self.cause = cause
        self.detail = detail
        message = f"Illegal spin {spin}: {cause}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class MoveRangeError(GroveError):
    """Raised when a move anchor lies outside the triangle."""

    code = "move-range"

    def __init__(self, n: int, row: int, col: int):
        self.n = n
        self.row = row
        self.col = col
        super().__init__(
            f"Move anchor ({row},{col}) out of range for size {n}: "
            f"need 1 <= row <= {n - 1} and 1 <= col <= n - row"
        )


class NotAnAstError(GroveError):
    """Raised when a triangular array has no grove preimage."""

    code = "not-an-ast"


class SlideError(GroveError):
    """Raised when a black edge cannot be moved one step along its target path."""

    code = "slide"

    def __init__(self, black_edge: Any, toward: Any, reason: str):
        self.black_edge = black_edge
        self.toward = toward
        self.reason = reason
        super().__init__(
            f"Cannot slide black edge {black_edge} toward {toward}: {reason}"
        )


class ReplayError(GroveError):
    """Raised when a spin sequence stops being legal during replay."""

    code = "replay"

    def __init__(self, index: int, error: SpinError):
        self.index = index
        self.cause = error.cause
        super().__init__(f"Spin {index} failed: {error}", original_error=error)


class ReductionError(GroveError):
    """Raised when neither the strategy nor the fallback search reaches the target."""

    code = "reduction"


class BudgetExceededError(GroveError):
    """Raised when a requested size is above a configured budget."""

    code = "budget"

    def __init__(self, budget: str, requested: int, limit: int):
        self.budget = budget
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"Size {requested} exceeds {budget} (limit {limit}); "
            f"raise it in the settings file to continue"
        )


class InexactDivisionError(GroveError):
    """Raised when a Laurent polynomial division leaves a remainder."""

    code = "inexact-division"

    def __init__(self, witness: str):
        self.witness = witness
        super().__init__(f"Division is not exact; remainder term {witness}")


class DivisionByZeroError(InexactDivisionError):
    """Raised when dividing by the zero polynomial."""

    code = "division-by-zero"

    def __init__(self) -> None:
        self.witness = "0"
        GroveError.__init__(self, "Division by the zero polynomial")


class RecurrenceError(GroveError):
    """Raised for cube-recurrence cells below the initial slices."""

    code = "recurrence"


class DocumentError(GroveError):
    """Raised when an interchange document is malformed."""

    code = "malformed-document"

    def __init__(
        self,
        message: str,
        file_path: Optional[str] = None,
        original_error: Optional[Exception] = None,
    ):
        self.file_path = file_path
        if file_path:
            full_message = f"{message} (in {file_path})"
        else:
            full_message = message
        super().__init__(full_message, original_error=original_error)


class ConfigurationError(GroveError):
    """Raised when a settings file is invalid."""

    code = "configuration"

