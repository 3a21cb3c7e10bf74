"""
Error Handling for the game solvers
Maps solver and parser failures to meaningful exceptions and exit codes
"""

from typing import Dict, Optional


# ============================================================================
# EXCEPTION CLASSES
# ============================================================================

class GameError(Exception):
    """Base exception for game parsing, validation and solving errors."""
    def __init__(self, message: str, code: Optional[str] = None, details: Optional[Dict] = None):
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}


class GameSyntaxError(GameError):
    """Raised when game text does not follow the EFG-lite grammar."""
    def __init__(self, message: str, line: int, column: int, offset: int):
        super().__init__(
            f"{message} at line {line}, column {column}",
            "SYNTAX_ERROR",
            {"line": line, "column": column, "offset": offset},
        )
        self.line = line
        self.column = column
        self.offset = offset


class GameValidationError(GameError):
    """Raised when a tree breaks a structural assumption of the model."""
    pass


class DuplicateIdError(GameValidationError):
    """Raised when two nodes or outcomes share an id."""
    pass


class PayoffArityError(GameValidationError):
    """Raised when outcomes disagree on the number of players."""
    pass


class StrictPreferenceError(GameValidationError):
    """Raised when a player is indifferent between two outcomes."""
    pass


class EmptyNodeError(GameValidationError):
    """Raised when a decision node has no children."""
    pass


class UnknownPlayerError(GameValidationError):
    """Raised when a node is owned by a player the payoffs do not declare."""
    pass


class UnknownNodeError(GameError):
    """Raised when an id is not a node or outcome of the tree."""
    pass


class InvalidStateError(GameError):
    """Raised when a Newcombian state repeats a move consecutively."""
    pass


class ForeignNodeError(InvalidStateError):
    """Raised when a Newcombian state uses a node that is not a child of the current node."""
    pass


class DegenerateClassError(GameError):
    """Raised when the worst payoff of an empty targeted set is requested."""
    pass


class NotInvertibleError(GameError):
    """Raised when the invertible fast path is used on a non-spine tree."""
    pass


class LogicError(GameError):
    """Base exception for the equation-system formalisation."""
    pass


class EmptyTreeError(LogicError):
    """Raised when every outcome of a tree has been removed."""
    pass


class NoUniqueSolutionError(LogicError):
    """Raised when an equation system has zero or several solutions."""
    def __init__(self, message: str, solutions: int):
        super().__init__(message, "NO_UNIQUE_SOLUTION", {"solutions": solutions})
        self.solutions = solutions


class ResourceBoundError(GameError):
    """Base exception for configured bounds that a computation exceeded."""
    pass


class PowersetBoundError(ResourceBoundError):
    """Raised when the powerset component grows beyond its vertex bound."""
    pass


class VariableBoundError(ResourceBoundError):
    """Raised when an equation system has too many variables to enumerate."""
    pass


class UsageError(GameError):
    """Raised when the command line itself cannot be parsed."""
    pass


class UnknownMethodError(GameError):
    """Raised when a solve method name is not registered."""
    pass


# ============================================================================
# ERROR CODE MAPPINGS
# ============================================================================

ERROR_CODES = {
    # Input Errors
    "SYNTAX_ERROR": "Game text does not follow the EFG-lite grammar",
    "DUPLICATE_ID": "Id used by more than one node or outcome",
    "PAYOFF_ARITY": "Outcomes disagree on the number of players",
    "STRICT_PREFERENCE": "A player has equal payoffs at two outcomes",
    "EMPTY_NODE": "Decision node without children",
    "UNKNOWN_PLAYER": "Node owner is not a declared player",
    "DISCONNECTED": "Tree is not connected from its root",
    "TOO_FEW_PLAYERS": "A game needs at least two players",
    "UNKNOWN_NODE": "Id is not part of the tree",
    "INVALID_PATH": "Sequence of ids is not a root-to-outcome path",
    "INVALID_STATE": "Newcombian state repeats a move",
    "FOREIGN_NODE": "Newcombian state uses a node outside the current move",
    "DEGENERATE_CLASS": "Degenerate class has no worst payoff",
    "NOT_INVERTIBLE": "Tree is not a Take-or-Leave spine",
    "UNKNOWN_METHOD": "Solve method is not registered",
    "USAGE": "Command line does not match the command syntax",
    "UNKNOWN_FIXTURE": "No reference game with that name",
    "INVALID_PARAMETERS": "Generator parameter out of range",

    # Logic Errors
    "EMPTY_TREE": "All outcomes were removed from the tree",
    "NO_UNIQUE_SOLUTION": "Equation system does not have exactly one solution",

    # Resource Bound Errors
    "POWERSET_BOUND": "Outcome powerset component exceeds the vertex bound",
    "VARIABLE_BOUND": "Equation system exceeds the enumeration bound",
}

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_RESOURCE_BOUND = 2


# ============================================================================
# ERROR FORMATTING AND CLASSIFICATION
# ============================================================================

def format_error_message(error: Exception) -> str:
    """
    Format an exception as a one-line diagnostic.

    Args:
        error: Exception that occurred

    Returns:
        str: "[CODE] description: message" for known codes, the message otherwise
    """
    if isinstance(error, GameError):
        code = error.code or "UNKNOWN"
        if code in ERROR_CODES:
            return f"[{code}] {ERROR_CODES[code]}: {error.message}"
        return f"[{code}] {error.message}"
    return f"{type(error).__name__}: {error}"


def is_input_error(error: Exception) -> bool:
    """
    Determine if an error was caused by the input game rather than a bound.

    Args:
        error: Exception that occurred

    Returns:
        bool: True for syntax, validation and query errors
    """
    if isinstance(error, ResourceBoundError):
        return False
    return isinstance(error, (GameError, OSError, UnicodeDecodeError))


def exit_code_for(error: Exception) -> int:
    """
    Get the process exit code for an error.

    Args:
        error: Exception that occurred

    Returns:
        int: 2 for resource bounds, 1 for everything else
    """
    if isinstance(error, ResourceBoundError):
        return EXIT_RESOURCE_BOUND
    return EXIT_INPUT_ERROR
