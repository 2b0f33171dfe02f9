"""Pseudo-convergent sequences at a finite horizon.

A sequence is generated by an exponent rule (arithmetic, lacunary
doubling, or an explicit list with an arithmetic tail) and a coefficient
rule; v_j is the j-th partial sum, the pseudo-limit y is the full series
materialized to any requested truncation, and gamma_j = val(v_{j+1}-v_j)
strictly increases.  A sequence may also be derived from any series that
can be materialized to arbitrary truncation (partial sums of its term
expansion); that form backs the family construction in the smooth
pipeline.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence, Tuple

from .errors import (HorizonError, InconclusiveError, InputError,
                     NotStabilizedError)
from .fields import Field, field_from_json, field_to_json
from .group import GroupElement
from .poly import Poly
from .series import ValuedSeries

DEFAULT_HORIZON = 300
DEFAULT_WINDOW = 8


class PseudoSequence:
    """Common behaviour; subclasses supply term_pair(j) -> (e_j, c_j)."""

    field: Field
    horizon: int

    def term_pair(self, j: int) -> Tuple[GroupElement, object]:
        raise NotImplementedError

    def _check_index(self, j: int) -> None:
        if j < 0:
            raise InputError("negative sequence index")
        if j >= self.horizon:
            raise HorizonError(f"index {j} >= horizon {self.horizon}")

    # -- core accessors -----------------------------------------------
    def gamma(self, j: int) -> GroupElement:
        self._check_index(j)
        return self.term_pair(j)[0]

    def coeff(self, j: int):
        self._check_index(j)
        return self.term_pair(j)[1]

    def term(self, j: int) -> ValuedSeries:
        """Partial sum v_j = sum_{i<j} c_i t^{e_i} (exact)."""
        self._check_index(j)
        return ValuedSeries(self.field, [self.term_pair(i) for i in range(j)])

    def scale(self, j: int) -> ValuedSeries:
        """s_j = v_{j+1} - v_j = c_j t^{e_j} (exact monomial)."""
        self._check_index(j + 1)
        e, c = self.term_pair(j)
        return ValuedSeries(self.field, [(e, c)])

    def limit(self, delta: GroupElement) -> ValuedSeries:
        """Pseudo-limit y materialized below truncation delta."""
        terms = []
        for j in range(self.horizon):
            try:
                e, c = self.term_pair(j)
            except HorizonError:
                break
            if not (e < delta):
                return ValuedSeries(self.field, terms, delta)
            terms.append((e, c))
        raise HorizonError(
            f"pseudo-limit support does not reach truncation {delta.to_json()} within horizon")

    def gamma_stream(self, lo: int = 0):
        """Iterator over gamma_j for j >= lo, horizon-bounded."""
        j = lo
        while j < self.horizon:
            yield self.gamma(j)
            j += 1

    # -- derived elements ---------------------------------------------
    def stage(self, j: int, delta: GroupElement) -> ValuedSeries:
        """Unit stage element y_j = (y - v_j) / (v_{j+1} - v_j), to truncation delta."""
        self._check_index(j + 1)
        ej = self.gamma(j)
        y = self.limit(delta + ej)
        num = y - self.term(j)
        return num.div(self.scale(j))

    def restage_coeffs(self, j: int, t: int) -> Tuple[ValuedSeries, ValuedSeries]:
        """Exact (d, b) with y_j = d + b*y_t; d a unit, val(b) > 0."""
        if not j < t:
            raise InputError(f"restage needs j < t, got {j}, {t}")
        self._check_index(t + 1)
        sj = self.scale(j)
        d = (self.term(t) - self.term(j)).div(sj)
        b = self.scale(t).div(sj)
        return d, b

    # -- classification -----------------------------------------------
    def _poly_vals(self, f: Poly, indices: Sequence[int]):
        fvars = f.variables()
        if len(fvars) > 1:
            raise InputError("classification polynomial must be univariate")
        if not fvars or f.total_degree() < 1:
            raise InputError("classification polynomial must be nonconstant")
        var = fvars[0]
        out = []
        for j in indices:
            out.append(f.eval_series({var: self.term(j)}).val())
        return out

    def classify(self, f: Poly, W: int = DEFAULT_WINDOW) -> str:
        """Tail behaviour of val(f(v_j)) over the last W indices below the horizon."""
        if W < 2:
            raise InputError("window must be >= 2")
        indices = range(self.horizon - W, self.horizon)
        vals = self._poly_vals(f, indices)
        if all(v == vals[0] for v in vals):
            return "transcendental-like"
        if all(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            return "algebraic-like"
        raise InconclusiveError(
            "tail window is neither constant nor strictly increasing: "
            + str([v.to_json() for v in vals]))

    def stable_val(self, f: Poly, W: int = DEFAULT_WINDOW) -> GroupElement:
        return self.stable_val_info(f, W)[0]

    def stable_val_info(self, f: Poly, W: int = DEFAULT_WINDOW) -> Tuple[GroupElement, int]:
        """(stable value, first index of the certifying window of W equal values)."""
        if W < 2:
            raise InputError("window must be >= 2")
        run_start = 0
        prev = None
        for j in range(self.horizon):
            v = self._poly_vals(f, [j])[0]
            if prev is None or v != prev:
                run_start, prev = j, v
            if j - run_start + 1 >= W:
                return prev, run_start
        raise NotStabilizedError(
            f"val(f(v_j)) did not hold constant over {W} consecutive indices below {self.horizon}")


class RuleSequence(PseudoSequence):
    """Sequence generated from exponent and coefficient rules."""

    def __init__(self, field: Field, exp_rule: dict, coeff_rule: dict,
                 horizon: int = DEFAULT_HORIZON):
        self.field = field
        self.horizon = horizon
        self.exp_rule = dict(exp_rule)
        self.coeff_rule = dict(coeff_rule)
        self._validate()

    def _validate(self) -> None:
        kind = self.exp_rule.get("kind")
        if kind not in ("arith", "geom", "list"):
            raise InputError(f"unknown exponent rule {kind!r}")
        ck = self.coeff_rule.get("kind")
        if ck not in ("const", "cycle"):
            raise InputError(f"unknown coefficient rule {ck!r}")
        if ck == "const" and self.field.is_zero(self.coeff_rule["c"]):
            raise InputError("coefficient rule must be nonzero")
        if ck == "cycle":
            vals = self.coeff_rule["values"]
            if not vals or any(self.field.is_zero(c) for c in vals):
                raise InputError("cycle coefficients must be nonzero")
        e0, e1 = self._exp(0), self._exp(1)
        zero = e0.zero()
        if not (zero < e0 or zero == e0):
            raise InputError("exponents must be >= 0")
        if not e0 < e1:
            raise InputError("exponent rule must be strictly increasing")

    def _exp(self, j: int) -> GroupElement:
        rule = self.exp_rule
        if rule["kind"] == "arith":
            return rule["a"] + rule["b"].scale(j)
        if rule["kind"] == "geom":
            return rule["a"].scale(2 ** j)
        values = rule["values"]
        if j < len(values):
            return values[j]
        return values[-1] + rule["step"].scale(j - len(values) + 1)

    def term_pair(self, j: int) -> Tuple[GroupElement, object]:
        e = self._exp(j)
        if self.coeff_rule["kind"] == "const":
            c = self.coeff_rule["c"]
        else:
            vals = self.coeff_rule["values"]
            c = vals[j % len(vals)]
        return e, c

    # -- JSON ----------------------------------------------------------
    def to_json(self):
        exp = {"kind": self.exp_rule["kind"]}
        if exp["kind"] == "arith":
            exp["a"] = self.exp_rule["a"].to_json()
            exp["b"] = self.exp_rule["b"].to_json()
        elif exp["kind"] == "geom":
            exp["a"] = self.exp_rule["a"].to_json()
        else:
            exp["values"] = [v.to_json() for v in self.exp_rule["values"]]
            exp["step"] = self.exp_rule["step"].to_json()
        if self.coeff_rule["kind"] == "const":
            coeff = {"kind": "const", "c": self.field.coeff_to_json(self.coeff_rule["c"])}
        else:
            coeff = {"kind": "cycle",
                     "values": [self.field.coeff_to_json(c) for c in self.coeff_rule["values"]]}
        out = {"seq": "rule", "exp": exp, "coeff": coeff, "horizon": self.horizon}
        out.update(field_to_json(self.field))
        return out

    @staticmethod
    def from_json(obj) -> "RuleSequence":
        field = field_from_json(obj)
        exp_json = obj["exp"]
        exp = {"kind": exp_json["kind"]}
        if exp["kind"] == "arith":
            exp["a"] = GroupElement.from_json(exp_json["a"])
            exp["b"] = GroupElement.from_json(exp_json["b"])
        elif exp["kind"] == "geom":
            exp["a"] = GroupElement.from_json(exp_json["a"])
        elif exp["kind"] == "list":
            exp["values"] = [GroupElement.from_json(v) for v in exp_json["values"]]
            exp["step"] = GroupElement.from_json(exp_json["step"])
        else:
            raise InputError(f"unknown exponent rule {exp['kind']!r}")
        coeff_json = obj["coeff"]
        if coeff_json["kind"] == "const":
            coeff = {"kind": "const", "c": field.coeff_from_json(coeff_json["c"])}
        elif coeff_json["kind"] == "cycle":
            coeff = {"kind": "cycle",
                     "values": [field.coeff_from_json(c) for c in coeff_json["values"]]}
        else:
            raise InputError(f"unknown coefficient rule {coeff_json['kind']!r}")
        return RuleSequence(field, exp, coeff, int(obj.get("horizon", DEFAULT_HORIZON)))


class TableSequence(PseudoSequence):
    """Sequence given by an explicit finite term table.

    Used to freeze the prefix of a derived sequence into a certificate:
    partial sums, gaps and scales up to the table length are exact, and
    nothing past the table is claimed (the horizon is the table length).
    """

    def __init__(self, field: Field, terms: Sequence[Tuple[GroupElement, object]]):
        if len(terms) < 2:
            raise InputError("term table needs at least two entries")
        for (e0, _), (e1, _) in zip(terms, terms[1:]):
            if not e0 < e1:
                raise InputError("term table exponents must be strictly increasing")
        zero = terms[0][0].zero()
        if terms[0][0] < zero:
            raise InputError("exponents must be >= 0")
        if any(field.is_zero(c) for _, c in terms):
            raise InputError("table coefficients must be nonzero")
        self.field = field
        self.horizon = len(terms)
        self._terms = [(e, c) for e, c in terms]

    def term_pair(self, j: int) -> Tuple[GroupElement, object]:
        return self._terms[j]

    def limit(self, delta: GroupElement) -> ValuedSeries:
        if self._terms[-1][0] < delta:
            raise HorizonError(
                "term table does not reach the requested truncation")
        return ValuedSeries(self.field, [(e, c) for e, c in self._terms if e < delta], delta)

    def to_json(self):
        out = {"seq": "table",
               "terms": [[e.to_json(), self.field.coeff_to_json(c)] for e, c in self._terms]}
        out.update(field_to_json(self.field))
        return out

    @staticmethod
    def from_json(obj) -> "TableSequence":
        field = field_from_json(obj)
        terms = [(GroupElement.from_json(e), field.coeff_from_json(c))
                 for e, c in obj["terms"]]
        return TableSequence(field, terms)


def sequence_from_json(obj) -> PseudoSequence:
    kind = obj.get("seq", "rule")
    if kind == "rule":
        return RuleSequence.from_json(obj)
    if kind == "table":
        return TableSequence.from_json(obj)
    raise InputError(f"unknown sequence kind {kind!r}")


class DerivedSequence(PseudoSequence):
    """Partial-sum sequence of a series given by a materialization callback.

    materialize(delta) must return the series known below delta (exact
    results are accepted and simply bound the available terms).
    """

    def __init__(self, field: Field, materialize: Callable[[GroupElement], ValuedSeries],
                 seed_delta: GroupElement, horizon: int = DEFAULT_HORIZON):
        self.field = field
        self.horizon = horizon
        self._materialize = materialize
        self._delta = seed_delta
        self._series = materialize(seed_delta)

    def term_pair(self, j: int) -> Tuple[GroupElement, object]:
        while len(self._series.terms) <= j:
            if self._series.exact:
                raise HorizonError(
                    f"underlying series has only {len(self._series.terms)} terms")
            self._delta = self._delta.scale(2)
            grown = self._materialize(self._delta)
            if len(grown.terms) <= len(self._series.terms) and grown.trunc == self._series.trunc:
                raise HorizonError("materialization stalled while extending the sequence")
            self._series = grown
        return self._series.terms[j]

    def snapshot(self, count: int) -> "TableSequence":
        """Freeze the first `count` terms into a serializable table sequence."""
        self.term_pair(count - 1)
        return TableSequence(self.field, list(self._series.terms[:count]))

    def to_json(self):
        return self.snapshot(min(self.horizon, max(2, len(self._series.terms)))).to_json()


def lacunary_sequence(field: Field, horizon: int = DEFAULT_HORIZON,
                      coeffs: Optional[Sequence] = None) -> RuleSequence:
    """Default transcendental-style sequence: e_j = 2^j, unit coefficients."""
    if coeffs is None:
        coeff_rule = {"kind": "const", "c": field.one()}
    else:
        coeff_rule = {"kind": "cycle", "values": list(coeffs)}
    return RuleSequence(field, {"kind": "geom", "a": GroupElement.of_int(1)},
                        coeff_rule, horizon)


# Spec-shaped functional wrappers -------------------------------------

def pcs_term(seq: PseudoSequence, j: int) -> ValuedSeries:
    return seq.term(j)


def pcs_gamma(seq: PseudoSequence, j: int) -> GroupElement:
    return seq.gamma(j)


def pcs_stage(seq: PseudoSequence, j: int, delta: GroupElement) -> ValuedSeries:
    return seq.stage(j, delta)


def pcs_restage_coeffs(seq: PseudoSequence, j: int, t: int):
    return seq.restage_coeffs(j, t)


def pcs_classify(seq: PseudoSequence, f: Poly, W: int = DEFAULT_WINDOW) -> str:
    return seq.classify(f, W)


def pcs_stable_val(seq: PseudoSequence, f: Poly, W: int = DEFAULT_WINDOW) -> GroupElement:
    return seq.stable_val(f, W)
