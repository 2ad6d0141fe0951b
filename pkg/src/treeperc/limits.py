"""Resource budgets and package-wide exception types.

Generating-function recursions grow doubly exponentially in coefficient size,
so every potentially large computation takes an explicit :class:`Budget` and
fails with :class:`BudgetExceededError` naming the limiting parameter instead
of exhausting memory.
"""

from __future__ import annotations

from dataclasses import dataclass


class TreepercError(Exception):
    """Base class for all package-specific errors."""


class BudgetExceededError(TreepercError):
    """A size or resource cap was hit before the computation finished."""

    def __init__(self, what: str, limit: int, needed: int) -> None:
        self.what = what
        self.limit = limit
        self.needed = needed
        super().__init__(f"{what} budget exceeded: needed {needed}, limit {limit}")


class InexactDivisionError(TreepercError):
    """A division that the calling recursion guarantees to be exact was not."""


class PoleError(TreepercError, ZeroDivisionError):
    """A closed-form expression was evaluated at a pole of its denominator."""


class NoRealRootError(TreepercError, ArithmeticError):
    """A fixed-point equation has no real root in the requested range."""


@dataclass(frozen=True)
class Budget:
    """Caps on polynomial growth: term count and coefficient bit length.

    Defaults are generous enough for every documented computation (the
    depth-8 binary cut generating function needs ~1.4e5 terms and ~350-bit
    coefficients) while still failing fast on runaway parameters.
    """

    max_terms: int = 2_000_000
    max_coeff_bits: int = 4_000_000

    def check_terms(self, needed: int, what: str = "term count") -> None:
        if needed > self.max_terms:
            raise BudgetExceededError(what, self.max_terms, needed)

    def check_bits(self, needed: int, what: str = "coefficient bits") -> None:
        if needed > self.max_coeff_bits:
            raise BudgetExceededError(what, self.max_coeff_bits, needed)


DEFAULT_BUDGET = Budget()
