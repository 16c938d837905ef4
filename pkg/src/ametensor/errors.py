"""Exceptions shared by the factorization and linear-algebra modules."""


class NotSuperregular(ValueError):
    """A matrix has a vanishing minor.

    ``rows`` and ``cols`` are the 0-based positions of the first zero minor
    found (smallest size first).
    """

    def __init__(self, rows, cols):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        size = len(self.rows)
        r1 = ",".join(str(r + 1) for r in self.rows)
        c1 = ",".join(str(c + 1) for c in self.cols)
        super().__init__(f"matrix is not superregular: {size}x{size} minor rows ({r1}) cols ({c1}) vanishes")


class ConditionZero(ValueError):
    """The solubility condition of a 6-leg factorization evaluates to zero."""

    def __init__(self, direction: str):
        self.direction = direction
        super().__init__(f"{direction} condition = 0")


class ConditionFailed(ValueError):
    """One of the division conditions of the 8-leg factorization fails."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        msg = f"condition {condition} violated"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UnverifiedDecomposition(ValueError):
    """A decomposition does not recompose to its source matrix."""
