"""Exception types shared across the package."""

from __future__ import annotations


class RinglabError(Exception):
    """Base class for all ringlab errors."""


class InvalidSpec(RinglabError):
    """A ring/group spec is malformed or describes a rejected structure."""


def _format_order(n: int) -> str:
    """Nested specs can describe orders with thousands of digits; printing
    those verbatim trips CPython's int-to-str limit, so round down to a
    power of ten instead."""
    if n.bit_length() <= 64:
        return str(n)
    return f"more than 10^{(n.bit_length() - 1) * 30103 // 100000}"


class OrderCapExceeded(RinglabError):
    """Realizing the spec would exceed the element-count cap."""

    def __init__(self, order: int, cap: int) -> None:
        super().__init__(f"realized order {_format_order(order)} "
                         f"exceeds cap {cap}")
        self.order = order
        self.cap = cap


class CapExceeded(RinglabError):
    """A structural computation (e.g. unit-group closure) exceeded its cap."""


class BudgetExhausted(RinglabError):
    """A bounded search ran out of its candidate budget."""


class ZeroNotEligible(RinglabError):
    """Fine/t-fine decompositions are defined for non-zero elements only."""


class ZeroMatrix(RinglabError):
    """The t-fine matrix decomposition rejects the zero matrix."""


class NotTFineBase(RinglabError):
    """A base-case decomposition failed: the entry ring is not t-fine."""


class NotCommutative(RinglabError):
    """Operation requires a commutative ring."""


class NoSolution(RinglabError):
    """A search completed with no solution (e.g. 1 = u + v over F_2)."""


class ExprError(RinglabError):
    """An element expression failed to parse or resolve."""
