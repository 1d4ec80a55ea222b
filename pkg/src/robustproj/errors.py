"""Exception types shared across the package."""


class RobustProjError(Exception):
    """Base class for all package errors."""


class BudgetTooLarge(RobustProjError, ValueError):
    """Raised when the corruption budget violates 2q < m."""


class BudgetExceeded(RobustProjError):
    """No subsystem with at most q dropped rows is consistent with y."""


class DimensionMismatch(RobustProjError, ValueError):
    pass


class NonSymmetricInput(RobustProjError, ValueError):
    pass


class NotAMember(RobustProjError, ValueError):
    """The vector is not in the ambiguity set for the given budget."""


class ParseError(RobustProjError, ValueError):
    """Malformed matrix file. Carries the 1-based line and column when known."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class DimensionError(ParseError):
    """Ragged rows or a row count that disagrees with the header."""


class NonFiniteEntry(ParseError):
    pass
