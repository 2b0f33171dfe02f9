"""Finite-support valued series with honest truncation tracking.

A series is a sorted list of (exponent, coefficient) terms over a base
field, together with a truncation order delta: exponents at or above
delta are unknown unless the series is flagged exact.  Arithmetic never
fabricates terms past the reliable window; the window shrinks under
multiplication and division exactly as the error analysis dictates.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .errors import IndeterminateValError, InputError, VariantMismatchError
from .fields import Field, field_from_json, field_to_json
from .group import INF, GroupElement


class ValuedSeries:
    __slots__ = ("field", "terms", "trunc")

    def __init__(self, field: Field, terms: Iterable, trunc: GroupElement = INF):
        """Build a normalized series; trunc = INF means exact."""
        self.field = field
        merged: dict[GroupElement, object] = {}
        for exp, coeff in terms:
            if exp.is_infinity:
                raise InputError("term exponent cannot be Infinity")
            if exp in merged:
                merged[exp] = field.add(merged[exp], coeff)
            else:
                merged[exp] = coeff
        kept = [(e, c) for e, c in merged.items()
                if not field.is_zero(c) and (trunc.is_infinity or e < trunc)]
        kept.sort(key=lambda t: t[0])
        self.terms = tuple(kept)
        self.trunc = trunc

    # -- basic predicates --------------------------------------------
    @property
    def exact(self) -> bool:
        return self.trunc.is_infinity

    def is_zero_exact(self) -> bool:
        return self.exact and not self.terms

    def val(self) -> GroupElement:
        """Least support exponent; Infinity for exact zero."""
        if self.terms:
            return self.terms[0][0]
        if self.exact:
            return INF
        raise IndeterminateValError(
            f"series vanishes below truncation {self.trunc.to_json()}")

    def val_lower(self) -> GroupElement:
        """A certified lower bound for the valuation."""
        if self.terms:
            return self.terms[0][0]
        return INF if self.exact else self.trunc

    def is_unit(self) -> bool:
        v = self.val()
        if v.is_infinity:
            return False
        return v.is_zero()

    def leading(self):
        if not self.terms:
            raise InputError("zero series has no leading term")
        return self.terms[0]

    def coeff_at(self, exp: GroupElement):
        for e, c in self.terms:
            if e == exp:
                return c
        return self.field.zero()

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "ValuedSeries") -> None:
        self.field.check_same(other.field)

    def __add__(self, other: "ValuedSeries") -> "ValuedSeries":
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        return ValuedSeries(self.field, list(self.terms) + list(other.terms), trunc)

    def __neg__(self) -> "ValuedSeries":
        return ValuedSeries(self.field, [(e, self.field.neg(c)) for e, c in self.terms], self.trunc)

    def __sub__(self, other: "ValuedSeries") -> "ValuedSeries":
        return self + (-other)

    def __mul__(self, other: "ValuedSeries") -> "ValuedSeries":
        self._check(other)
        if self.exact and other.exact:
            trunc = INF
        else:
            bounds = []
            if not self.exact:
                bounds.append(self.trunc + other.val_lower())
            if not other.exact:
                bounds.append(other.trunc + self.val_lower())
            trunc = min(bounds)
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((e1 + e2, self.field.mul(c1, c2)))
        return ValuedSeries(self.field, out, trunc)

    def scalar_mul(self, c) -> "ValuedSeries":
        if self.field.is_zero(c):
            return ValuedSeries(self.field, [], self.trunc)
        return ValuedSeries(self.field, [(e, self.field.mul(c, k)) for e, k in self.terms], self.trunc)

    def shift(self, g: GroupElement) -> "ValuedSeries":
        """Multiply by the monomial t^g (exact)."""
        trunc = self.trunc if self.exact else self.trunc + g
        return ValuedSeries(self.field, [(e + g, c) for e, c in self.terms], trunc)

    def __pow__(self, n: int) -> "ValuedSeries":
        if n < 0:
            raise InputError("negative powers go through div")
        result = ValuedSeries.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def div(self, other: "ValuedSeries") -> "ValuedSeries":
        """Formal series quotient by long division on the reliable window."""
        self._check(other)
        if other.is_zero_exact():
            raise ZeroDivisionError("series division by exact zero")
        vy = other.val()  # raises IndeterminateVal on zero-so-far divisor
        bounds = []
        if not self.exact:
            bounds.append(self.trunc - vy)
        if not other.exact:
            bounds.append(other.trunc + self.val_lower() - vy.scale(2))
        qtrunc = min(bounds) if bounds else INF
        field = self.field
        ylead = other.terms[0][1]
        rest = other.terms[1:]
        rem: dict[GroupElement, object] = {}
        for e, c in self.terms:
            rem[e] = c
        qterms = []
        steps = 0
        while rem:
            steps += 1
            if steps > 100000:
                raise InputError(
                    "exact quotient appears to have unbounded support; use div_to")
            lead = min(rem)
            qe = lead - vy
            if not qtrunc.is_infinity and not (qe < qtrunc):
                break
            qc = field.div(rem.pop(lead), ylead)
            qterms.append((qe, qc))
            for e2, c2 in rest:
                tgt = qe + e2
                if not qtrunc.is_infinity and not (tgt < qtrunc + vy):
                    continue
                cur = rem.get(tgt, field.zero())
                cur = field.sub(cur, field.mul(qc, c2))
                if field.is_zero(cur):
                    rem.pop(tgt, None)
                else:
                    rem[tgt] = cur
        return ValuedSeries(field, qterms, qtrunc)

    def div_to(self, other: "ValuedSeries", delta: GroupElement) -> "ValuedSeries":
        """Quotient known below delta; use when the exact quotient may have
        infinite support (plain div would not terminate)."""
        return self.truncate(delta + other.val()).div(other)

    def inverse(self) -> "ValuedSeries":
        return ValuedSeries.one(self.field).div(self)

    def truncate(self, delta: GroupElement) -> "ValuedSeries":
        return ValuedSeries(self.field, self.terms, min(self.trunc, delta))

    # -- window queries ----------------------------------------------
    def is_small(self, delta: GroupElement) -> bool:
        """True iff val(self) > delta is certified on the known window.

        Raises IndeterminateVal when the window does not reach delta.
        """
        for e, _ in self.terms:
            if not (e > delta):
                return False
        if not self.exact and not (self.trunc > delta):
            raise IndeterminateValError(
                f"window {self.trunc.to_json()} does not certify vanishing past {delta.to_json()}")
        return True

    def known_window(self) -> GroupElement:
        return self.trunc

    def agrees_with(self, other: "ValuedSeries", delta: GroupElement) -> bool:
        return (self - other).is_small(delta)

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(field: Field) -> "ValuedSeries":
        return ValuedSeries(field, [])

    @staticmethod
    def one(field: Field) -> "ValuedSeries":
        return ValuedSeries.scalar(field, field.one())

    @staticmethod
    def scalar(field: Field, c) -> "ValuedSeries":
        zero_exp = None  # exponent variant chosen lazily on use: default Z
        return ValuedSeries(field, [(GroupElement.of_int(0), c)])

    @staticmethod
    def t_power(field: Field, exp: GroupElement, coeff=None) -> "ValuedSeries":
        if coeff is None:
            coeff = field.one()
        return ValuedSeries(field, [(exp, coeff)])

    # -- misc ---------------------------------------------------------
    def __repr__(self) -> str:
        body = " + ".join(f"{c!r}*t^{e.to_json()}" for e, c in self.terms) or "0"
        tail = "" if self.exact else f" + O(t^{self.trunc.to_json()})"
        return f"<{body}{tail}>"

    def same_known(self, other: "ValuedSeries") -> bool:
        return self.terms == other.terms and self.trunc == other.trunc

    def to_json(self):
        return {
            "terms": [[e.to_json(), self.field.coeff_to_json(c)] for e, c in self.terms],
            "trunc": self.trunc.to_json(),
            "exact": self.exact,
        }

    @staticmethod
    def from_json(obj, field: Field) -> "ValuedSeries":
        trunc = GroupElement.from_json(obj.get("trunc", "inf"))
        terms = [(GroupElement.from_json(e), field.coeff_from_json(c))
                 for e, c in obj.get("terms", [])]
        return ValuedSeries(field, terms, trunc)


def series_val(x: ValuedSeries) -> GroupElement:
    return x.val()


def series_arith(op: str, x: ValuedSeries, y: ValuedSeries) -> ValuedSeries:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise InputError(f"unknown op {op!r}")


def series_div(x: ValuedSeries, y: ValuedSeries) -> ValuedSeries:
    return x.div(y)


def series_is_unit(x: ValuedSeries) -> bool:
    return x.is_unit()
