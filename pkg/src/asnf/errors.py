"""Exception types shared across the toolkit.

Every operational failure carries a stable ``code`` string so CLI users and
tests can match on it without parsing prose.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""

    code = "TOOLKIT_ERROR"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class GrammarSyntaxError(ToolkitError):
    """Raised on malformed grammar files; carries 1-based line/column."""

    code = "SYNTAX_ERROR"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotContextFree(ToolkitError):
    code = "NOT_CONTEXT_FREE"


class ShapeViolation(ToolkitError):
    code = "SHAPE_VIOLATION"


class FormViolation(ToolkitError):
    code = "FORM_VIOLATION"


class InputNotStrongSavitch(ToolkitError):
    code = "INPUT_NOT_STRONG_SAVITCH"


class EpsilonUndecided(ToolkitError):
    """Empty-word membership could not be decided within the search budget."""

    code = "NON_CFG_EPSILON_UNDECIDED"


class SegmentRewritten(ToolkitError):
    code = "SEGMENT_REWRITTEN"


class CapExceeded(ToolkitError):
    """The reordering swap cap fired; per the termination argument this
    indicates an implementation bug, not a bad input."""

    code = "CAP_EXCEEDED"


class TraceMismatch(ToolkitError):
    code = "TRACE_MISMATCH"


class WordHasNonterminal(ToolkitError):
    code = "WORD_HAS_NONTERMINAL"


class UnknownNode(ToolkitError):
    code = "UNKNOWN_NODE"


class AlphabetMismatch(ToolkitError):
    code = "ALPHABET_MISMATCH"
