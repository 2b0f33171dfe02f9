"""Sparse multivariate polynomials with valued-series coefficients.

Variables carry a tag naming their role: an original generator, a stage
variable recentred at index j, or a duplicated working variable used by
the rewrite pipelines.  The Hasse derivative is computed with integer
binomials before reduction into the base field, so it is correct in any
characteristic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import InputError
from .fields import Field
from .group import GroupElement
from .series import ValuedSeries

_KIND_RANK = {"orig": 0, "stage": 1, "dup": 2}


@dataclass(frozen=True)
class VarTag:
    """Identity of a polynomial variable: Orig(e), Stage(e, j) or Dup(e, key)."""

    kind: str
    e: int
    extra: object = None

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise InputError(f"unknown variable kind {self.kind!r}")

    @staticmethod
    def orig(e: int) -> "VarTag":
        return VarTag("orig", e)

    @staticmethod
    def stage(e: int, j: int) -> "VarTag":
        return VarTag("stage", e, j)

    @staticmethod
    def dup(e: int, key) -> "VarTag":
        return VarTag("dup", e, key)

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.e, repr(self.extra))

    def to_json(self):
        if self.kind == "orig":
            return {"tag": "orig", "e": self.e}
        if self.kind == "stage":
            return {"tag": "stage", "e": self.e, "j": self.extra}
        return {"tag": "dup", "e": self.e, "key": list(self.extra) if isinstance(self.extra, tuple) else self.extra}

    @staticmethod
    def from_json(obj) -> "VarTag":
        kind = obj.get("tag")
        if kind == "orig":
            return VarTag.orig(int(obj["e"]))
        if kind == "stage":
            return VarTag.stage(int(obj["e"]), int(obj["j"]))
        if kind == "dup":
            key = obj.get("key")
            if isinstance(key, list):
                key = tuple(key)
            return VarTag.dup(int(obj["e"]), key)
        raise InputError(f"cannot decode variable tag from {obj!r}")


Monomial = Tuple[Tuple[VarTag, int], ...]  # sorted, exponents >= 1


def _mono_sorted(items: Iterable[Tuple[VarTag, int]]) -> Monomial:
    kept = [(v, int(k)) for v, k in items if k != 0]
    for v, k in kept:
        if k < 0:
            raise InputError("negative exponents are not allowed in polynomials")
    kept.sort(key=lambda p: p[0].sort_key())
    return tuple(kept)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    acc: Dict[VarTag, int] = dict(a)
    for v, k in b:
        acc[v] = acc.get(v, 0) + k
    return _mono_sorted(acc.items())


class Poly:
    __slots__ = ("field", "monos")

    def __init__(self, field: Field, monos: Mapping[Monomial, ValuedSeries] = ()):
        self.field = field
        clean: Dict[Monomial, ValuedSeries] = {}
        items = monos.items() if isinstance(monos, Mapping) else monos
        for mono, coeff in items:
            mono = _mono_sorted(mono)
            if mono in clean:
                coeff = clean[mono] + coeff
            if not coeff.is_zero_exact():
                clean[mono] = coeff
            else:
                clean.pop(mono, None)
        self.monos = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(field: Field) -> "Poly":
        return Poly(field)

    @staticmethod
    def const(coeff: ValuedSeries) -> "Poly":
        return Poly(coeff.field, {(): coeff})

    @staticmethod
    def var(field: Field, tag: VarTag) -> "Poly":
        return Poly(field, {((tag, 1),): ValuedSeries.one(field)})

    @staticmethod
    def from_coeffs(coeffs: Sequence[ValuedSeries], tag: VarTag) -> "Poly":
        """Univariate polynomial sum coeffs[k] * tag^k."""
        if not coeffs:
            raise InputError("empty coefficient list")
        field = coeffs[0].field
        monos = {}
        for k, c in enumerate(coeffs):
            if not c.is_zero_exact():
                monos[((tag, k),) if k else ()] = c
        return Poly(field, monos)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.monos

    def variables(self) -> list:
        seen = set()
        for mono in self.monos:
            for v, _ in mono:
                seen.add(v)
        return sorted(seen, key=lambda v: v.sort_key())

    def degree_in(self, tag: VarTag) -> int:
        best = 0
        for mono in self.monos:
            for v, k in mono:
                if v == tag:
                    best = max(best, k)
        return best

    def total_degree(self) -> int:
        best = 0
        for mono in self.monos:
            best = max(best, sum(k for _, k in mono))
        return best

    def coeff(self, mono) -> ValuedSeries:
        mono = _mono_sorted(mono)
        return self.monos.get(mono, ValuedSeries.zero(self.field))

    def constant_term(self) -> ValuedSeries:
        return self.monos.get((), ValuedSeries.zero(self.field))

    def coeffs_in(self, tag: VarTag) -> list:
        """Coefficients of powers of tag, as Polys in the other variables."""
        d = self.degree_in(tag)
        buckets: list = [dict() for _ in range(d + 1)]
        for mono, coeff in self.monos.items():
            k = 0
            rest = []
            for v, kk in mono:
                if v == tag:
                    k = kk
                else:
                    rest.append((v, kk))
            buckets[k][_mono_sorted(rest)] = coeff
        return [Poly(self.field, b) for b in buckets]

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Poly") -> None:
        self.field.check_same(other.field)

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.monos)
        for mono, coeff in other.monos.items():
            if mono in out:
                out[mono] = out[mono] + coeff
            else:
                out[mono] = coeff
        return Poly(self.field, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, {m: -c for m, c in self.monos.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        out: Dict[Monomial, ValuedSeries] = {}
        for m1, c1 in self.monos.items():
            for m2, c2 in other.monos.items():
                m = _mono_mul(m1, m2)
                prod = c1 * c2
                if m in out:
                    out[m] = out[m] + prod
                else:
                    out[m] = prod
        return Poly(self.field, out)

    def scale(self, coeff: ValuedSeries) -> "Poly":
        return Poly(self.field, {m: c * coeff for m, c in self.monos.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise InputError("negative polynomial powers")
        result = Poly.const(ValuedSeries.one(self.field))
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    # -- substitution -------------------------------------------------
    def eval_series(self, assignment: Mapping[VarTag, ValuedSeries]) -> ValuedSeries:
        total = ValuedSeries.zero(self.field)
        for mono, coeff in self.monos.items():
            term = coeff
            for v, k in mono:
                if v not in assignment:
                    raise InputError(f"no value for variable {v}")
                term = term * (assignment[v] ** k)
            total = total + term
        return total

    def subs_poly(self, tag: VarTag, replacement: "Poly") -> "Poly":
        """Substitute a polynomial for one variable."""
        self._check(replacement)
        out = Poly.zero(self.field)
        powers: Dict[int, Poly] = {0: Poly.const(ValuedSeries.one(self.field))}

        def power(k: int) -> Poly:
            if k not in powers:
                powers[k] = power(k - 1) * replacement
            return powers[k]

        for mono, coeff in self.monos.items():
            k = 0
            rest = []
            for v, kk in mono:
                if v == tag:
                    k = kk
                else:
                    rest.append((v, kk))
            base = Poly(self.field, {_mono_sorted(rest): coeff})
            out = out + base * power(k)
        return out

    def rename(self, mapping: Mapping[VarTag, VarTag]) -> "Poly":
        """Rename/collapse variables; merged monomials add up."""
        out: Dict[Monomial, ValuedSeries] = {}
        for mono, coeff in self.monos.items():
            acc: Dict[VarTag, int] = {}
            for v, k in mono:
                w = mapping.get(v, v)
                acc[w] = acc.get(w, 0) + k
            m = _mono_sorted(acc.items())
            if m in out:
                out[m] = out[m] + coeff
            else:
                out[m] = coeff
        return Poly(self.field, out)

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.field, {m: fn(c) for m, c in self.monos.items()})

    # -- calculus -----------------------------------------------------
    def hasse_derivative(self, orders: Mapping[VarTag, int]) -> "Poly":
        """D^(orders): Y^k -> binomial(k, n) Y^(k-n), binomials over Z."""
        out: Dict[Monomial, ValuedSeries] = {}
        for mono, coeff in self.monos.items():
            exps = dict(mono)
            factor = 1
            ok = True
            for v, n in orders.items():
                if n == 0:
                    continue
                k = exps.get(v, 0)
                if k < n:
                    ok = False
                    break
                factor *= math.comb(k, n)
                if k == n:
                    exps.pop(v)
                else:
                    exps[v] = k - n
            if not ok:
                continue
            scaled = coeff.scalar_mul(self.field.from_int(factor))
            if scaled.is_zero_exact():
                continue
            m = _mono_sorted(exps.items())
            if m in out:
                out[m] = out[m] + scaled
            else:
                out[m] = scaled
        return Poly(self.field, out)

    def derivative(self, tag: VarTag) -> "Poly":
        """Ordinary partial derivative (k * Y^(k-1))."""
        out: Dict[Monomial, ValuedSeries] = {}
        for mono, coeff in self.monos.items():
            exps = dict(mono)
            k = exps.get(tag, 0)
            if k == 0:
                continue
            scaled = coeff.scalar_mul(self.field.from_int(k))
            if scaled.is_zero_exact():
                continue
            if k == 1:
                exps.pop(tag)
            else:
                exps[tag] = k - 1
            m = _mono_sorted(exps.items())
            if m in out:
                out[m] = out[m] + scaled
            else:
                out[m] = scaled
        return Poly(self.field, out)

    # -- comparison / output ------------------------------------------
    def same_known(self, other: "Poly") -> bool:
        if set(self.monos) != set(other.monos):
            return False
        return all(self.monos[m].same_known(other.monos[m]) for m in self.monos)

    def agrees_with(self, other: "Poly", delta: GroupElement) -> bool:
        diff = self - other
        return all(c.is_small(delta) for c in diff.monos.values())

    def __repr__(self) -> str:
        if not self.monos:
            return "Poly(0)"
        parts = []
        for mono in sorted(self.monos, key=lambda m: tuple(p[0].sort_key() + (p[1],) for p in m)):
            coeff = self.monos[mono]
            vars_txt = "".join(f"*{v.kind}{v.e}" + (f"^{k}" if k > 1 else "") for v, k in mono)
            parts.append(f"({coeff!r}){vars_txt}")
        return "Poly(" + " + ".join(parts) + ")"

    def to_json(self):
        out = []
        for mono in sorted(self.monos, key=lambda m: tuple(p[0].sort_key() + (p[1],) for p in m)):
            coeff = self.monos[mono]
            out.append([[ [v.to_json(), k] for v, k in mono], coeff.to_json()])
        return out

    @staticmethod
    def from_json(obj, field: Field) -> "Poly":
        monos = {}
        for mono_json, coeff_json in obj:
            mono = _mono_sorted((VarTag.from_json(v), int(k)) for v, k in mono_json)
            monos[mono] = ValuedSeries.from_json(coeff_json, field)
        return Poly(field, monos)


def sylvester_resultant(p: Poly, q: Poly, tag: VarTag) -> Poly:
    """Resultant of p and q with respect to one variable.

    Entries of the Sylvester matrix are polynomials in the remaining
    variables; the determinant is expanded by Laplace recursion with
    zero-entry skipping (matrix sizes here stay small).
    """
    pc = p.coeffs_in(tag)
    qc = q.coeffs_in(tag)
    dp, dq = len(pc) - 1, len(qc) - 1
    if dp < 1 or dq < 1:
        raise InputError("resultant needs positive degree in the eliminated variable")
    n = dp + dq
    field = p.field
    zero = Poly.zero(field)
    rows = []
    for i in range(dq):
        row = [zero] * n
        for k, c in enumerate(pc):
            row[i + (dp - k)] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for k, c in enumerate(qc):
            row[i + (dq - k)] = c
        rows.append(row)

    def det(row_ids, col_ids):
        if not row_ids:
            return Poly.const(ValuedSeries.one(field))
        r = row_ids[0]
        total = Poly.zero(field)
        for pos, c in enumerate(col_ids):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            minor = det(row_ids[1:], col_ids[:pos] + col_ids[pos + 1:])
            term = entry * minor
            total = total + term if pos % 2 == 0 else total - term
        return total

    return det(tuple(range(n)), tuple(range(n)))
