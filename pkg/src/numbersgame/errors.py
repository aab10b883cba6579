"""Exception types shared across the package."""


class NumbersGameError(Exception):
    """Base class for all package errors."""


# ---- graph validation ----

class GraphError(NumbersGameError):
    pass


class BadDiagonal(GraphError):
    pass


class PositiveOffDiagonal(GraphError):
    pass


class AsymmetricZeroPattern(GraphError):
    pass


class InvalidAmplitudeProduct(GraphError):
    pass


class SameNode(GraphError):
    pass


class NotOddNeighborly(GraphError):
    pass


class NotConnected(GraphError):
    pass


class WrongGraphShape(GraphError):
    pass


class NotUnitProductLoop(GraphError):
    pass


class ParseError(GraphError):
    pass


# ---- game play ----

class GameError(NumbersGameError):
    pass


class NodeNotFireable(GameError):
    pass


class IllegalScriptedFiring(GameError):
    """Scripted firing was illegal; `index` is the 0-based script position."""

    def __init__(self, index: int, node: int, message: str = ""):
        self.index = index
        self.node = node
        super().__init__(message or f"illegal firing of node {node} at script index {index}")


class IllegalFiringAt(GameError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"firing sequence illegal at index {index}")


# ---- search and enumeration budgets ----

class SearchBudgetExceeded(NumbersGameError):
    """A word-problem search hit its budget; the answer is undecided."""


class BudgetExceeded(NumbersGameError):
    pass


class CapExceeded(NumbersGameError):
    pass


class ParabolicNotFinite(NumbersGameError):
    pass


class GroupNotFiniteWithinCaps(NumbersGameError):
    pass


# ---- roots ----

class IncompleteRootSystem(NumbersGameError):
    pass


class NotUnitalONCyclic(NumbersGameError):
    pass


class DimensionMismatch(NumbersGameError):
    pass


class SignConsistencyError(NumbersGameError):
    """A generated root had both positive and negative coordinates.

    This should be impossible; treat as a bug in the caller or in the
    reflection arithmetic, not as a property of the input.
    """
