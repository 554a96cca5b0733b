"""Exception types shared across the package."""


class AgroLatticeError(Exception):
    """Base class for all errors raised by this package."""


class EmptyAxis(AgroLatticeError):
    """An axis label list is empty."""

    def __init__(self, axis: str):
        self.axis = axis
        super().__init__(f"axis {axis!r} must contain at least one label")


class UnknownLabel(AgroLatticeError):
    """A name does not resolve to any label on its axis."""

    def __init__(self, name: str, axis: str):
        self.name = name
        self.axis = axis
        super().__init__(f"unknown {axis} label {name!r}")


class IndexOutOfBounds(AgroLatticeError):
    """An index is outside the bounds of its axis."""

    def __init__(self, index: int, axis: str, size: int):
        self.index = index
        self.axis = axis
        self.size = size
        super().__init__(f"index {index} out of bounds for {axis} axis of size {size}")


class AxisMismatch(AgroLatticeError):
    """Two objects refer to incompatible axis systems."""


class NodeNotInLattice(AgroLatticeError):
    """A bound query names a node that is not part of the lattice."""


class BudgetExceeded(AgroLatticeError):
    """The exhaustive search space exceeds the configured budget."""

    def __init__(self, space: int, budget: int):
        self.space = space
        self.budget = budget
        super().__init__(
            f"exhaustive search space of {space} candidate boxes exceeds budget {budget}"
        )


class UndefinedConfidence(AgroLatticeError):
    """No location satisfies the rule antecedent at the rule's timestamps."""


class ParseError(AgroLatticeError):
    """An input file could not be parsed."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateHeader(ParseError):
    """A header declares the same column name twice."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(1, f"duplicate header column {name!r}")
