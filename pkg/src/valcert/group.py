"""Exact arithmetic and total order in the value group.

Three concrete variants are supported: the integers, the rationals and
lexicographically ordered integer tuples of a fixed width.  A single
formal Infinity element (the value of 0) tops the order and absorbs
addition, so value tables sort uniformly without option types.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

from .errors import InputError, VariantMismatchError

_KINDS = ("Z", "Q", "lex", "inf")


@total_ordering
class GroupElement:
    """An element of the value group, or the formal Infinity."""

    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value):
        if kind not in _KINDS:
            raise InputError(f"unknown group variant {kind!r}")
        self.kind = kind
        self.value = value

    # -- constructors -------------------------------------------------
    @staticmethod
    def of_int(n: int) -> "GroupElement":
        return GroupElement("Z", int(n))

    @staticmethod
    def of_fraction(q) -> "GroupElement":
        return GroupElement("Q", Fraction(q))

    @staticmethod
    def of_lex(*coords: int) -> "GroupElement":
        if not coords:
            raise InputError("lex tuple needs at least one coordinate")
        return GroupElement("lex", tuple(int(c) for c in coords))

    @property
    def is_infinity(self) -> bool:
        return self.kind == "inf"

    def is_zero(self) -> bool:
        if self.kind == "inf":
            return False
        if self.kind == "lex":
            return all(c == 0 for c in self.value)
        return self.value == 0

    def zero(self) -> "GroupElement":
        """The neutral element in this element's variant."""
        if self.kind == "Z":
            return GroupElement("Z", 0)
        if self.kind == "Q":
            return GroupElement("Q", Fraction(0))
        if self.kind == "lex":
            return GroupElement("lex", (0,) * len(self.value))
        raise InputError("Infinity has no ambient variant")

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "GroupElement") -> None:
        if self.kind == "inf" or other.kind == "inf":
            return
        if self.kind != other.kind:
            raise VariantMismatchError(f"group variants {self.kind} vs {other.kind}")
        if self.kind == "lex" and len(self.value) != len(other.value):
            raise VariantMismatchError("lex tuples of different width")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        if self.kind == "inf" or other.kind == "inf":
            return INF
        if self.kind == "lex":
            return GroupElement("lex", tuple(a + b for a, b in zip(self.value, other.value)))
        return GroupElement(self.kind, self.value + other.value)

    def __neg__(self) -> "GroupElement":
        if self.kind == "inf":
            raise InputError("Infinity cannot be negated")
        if self.kind == "lex":
            return GroupElement("lex", tuple(-c for c in self.value))
        return GroupElement(self.kind, -self.value)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        if other.kind == "inf":
            raise InputError("cannot subtract Infinity")
        return self + (-other)

    def scale(self, t: int) -> "GroupElement":
        """Integer multiple t*self (t may be negative)."""
        if self.kind == "inf":
            if t == 0:
                raise InputError("0 * Infinity is undefined")
            return INF
        if self.kind == "lex":
            return GroupElement("lex", tuple(t * c for c in self.value))
        return GroupElement(self.kind, t * self.value)

    # -- order --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.kind == "inf" or other.kind == "inf":
            return self.kind == other.kind
        self._check(other)
        return self.value == other.value

    def __lt__(self, other: "GroupElement") -> bool:
        if self.kind == "inf":
            return False
        if other.kind == "inf":
            return True
        self._check(other)
        return self.value < other.value

    def __hash__(self) -> int:
        if self.kind == "inf":
            return hash("inf")
        return hash((self.kind, self.value))

    def __repr__(self) -> str:
        if self.kind == "inf":
            return "GroupElement(inf)"
        return f"GroupElement({self.kind}, {self.value!r})"

    # -- JSON ---------------------------------------------------------
    def to_json(self):
        if self.kind == "inf":
            return "inf"
        if self.kind == "Z":
            return self.value
        if self.kind == "Q":
            return f"{self.value.numerator}/{self.value.denominator}"
        return list(self.value)

    @staticmethod
    def from_json(obj) -> "GroupElement":
        if obj == "inf":
            return INF
        if isinstance(obj, bool):
            raise InputError("booleans are not group elements")
        if isinstance(obj, int):
            return GroupElement.of_int(obj)
        if isinstance(obj, str):
            return GroupElement.of_fraction(Fraction(obj))
        if isinstance(obj, list):
            return GroupElement.of_lex(*obj)
        raise InputError(f"cannot decode group element from {obj!r}")


INF = GroupElement("inf", None)


def gv_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def gv_cmp(a: GroupElement, b: GroupElement) -> int:
    """Total-order comparison: -1, 0 or 1."""
    if a == b:
        return 0
    return -1 if a < b else 1


def gv_solve_scalar(t: int, delta: GroupElement) -> Optional[GroupElement]:
    """Solve t*x = delta exactly; None when no solution exists in the group."""
    if t == 0:
        raise InputError("scalar t must be nonzero")
    if delta.kind == "inf":
        raise InputError("delta must be finite")
    if delta.kind == "Q":
        return GroupElement("Q", delta.value / t)
    if delta.kind == "Z":
        if delta.value % t != 0:
            return None
        return GroupElement("Z", delta.value // t)
    coords = []
    for c in delta.value:
        if c % t != 0:
            return None
        coords.append(c // t)
    return GroupElement("lex", tuple(coords))
