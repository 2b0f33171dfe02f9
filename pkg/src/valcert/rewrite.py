"""Certified polynomial rewrites over pseudo-convergent sequences.

Every operation recentres a polynomial through the stage substitutions
y_e = v_{e,t} + s_{e,t} * Y_{e,t} at indices chosen so that the
coefficient value table of the result satisfies the advertised normal
form (pairwise distinct values; unique strictly minimal linear
coefficient; quadratic-part domination).  Index choice runs through the
separation machinery on stabilized coefficient values; the emitted
certificate stores the exact recentred polynomial, so verification is an
exact recomputation plus direct value checks -- no searches re-run.
"""
from __future__ import annotations

import itertools
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (HorizonError, InputError, NotStabilizedError,
                     UndecidedError, VerificationError)
from .fields import Field, characteristic, field_from_json, field_to_json
from .group import INF, GroupElement
from .pcs import (DEFAULT_WINDOW, PseudoSequence, RuleSequence, TableSequence,
                  sequence_from_json)
from .poly import Poly, VarTag
from .separation import separate_indices
from .series import ValuedSeries

DEFAULT_RETRIES = 16


# -- Taylor recentring -------------------------------------------------

def hasse_derivative(f: Poly, orders: Mapping[VarTag, int]) -> Poly:
    return f.hasse_derivative(orders)


def taylor_recenter(g: Poly, centers: Mapping[VarTag, ValuedSeries],
                    scales: Mapping[VarTag, ValuedSeries],
                    newtags: Mapping[VarTag, VarTag]) -> Poly:
    """Exact polynomial with g(..., v_e + s_e*Y_new, ...) = result(Y_new)."""
    out = g
    for tag, center in centers.items():
        scale = scales[tag]
        if scale.is_zero_exact():
            raise InputError("recentring scale must be nonzero")
        replacement = (Poly.const(center)
                       + Poly.var(g.field, newtags[tag]).scale(scale))
        out = out.subs_poly(tag, replacement)
    return out


def taylor_via_hasse(g: Poly, centers: Mapping[VarTag, ValuedSeries],
                     scales: Mapping[VarTag, ValuedSeries],
                     newtags: Mapping[VarTag, VarTag]) -> Poly:
    """Independent oracle: sum_n D^(n)g(centers) * prod s^n * Y_new^n."""
    tags = list(centers)
    ranges = [range(g.degree_in(t) + 1) for t in tags]
    total = Poly.zero(g.field)
    for combo in itertools.product(*ranges):
        orders = {t: n for t, n in zip(tags, combo)}
        deriv = g.hasse_derivative(orders)
        if deriv.is_zero():
            continue
        coeff = deriv.eval_series(centers)
        mono = []
        for t, n in zip(tags, combo):
            coeff = coeff * (scales[t] ** n)
            if n:
                mono.append((newtags[t], n))
        total = total + Poly(g.field, {tuple(mono): coeff})
    return total


def recenter_at(h: Poly, seqs: Sequence[PseudoSequence],
                indices: Sequence[int]) -> Poly:
    """Recentre each Orig(e) variable at sequence index indices[e]."""
    centers, scales, newtags = {}, {}, {}
    for e, (seq, t) in enumerate(zip(seqs, indices)):
        tag = VarTag.orig(e)
        if h.degree_in(tag) == 0:
            continue
        centers[tag] = seq.term(t)
        scales[tag] = seq.scale(t)
        newtags[tag] = VarTag.stage(e, t)
    return taylor_recenter(h, centers, scales, newtags)


# -- Stabilized coefficient values -------------------------------------

def stable_val_multi(poly: Poly, seqs: Sequence[PseudoSequence],
                     W: int = DEFAULT_WINDOW) -> Tuple[GroupElement, int]:
    """Stable value of val(poly(v_{0,j},...,v_{m,j})) along the common index.

    Returns (value, first index of the W-long certifying window).
    """
    horizon = min(s.horizon for s in seqs)
    assignment_tags = [VarTag.orig(e) for e in range(len(seqs))]
    prev: Optional[GroupElement] = None
    run_start = 0
    for j in range(horizon - 1):
        assignment = {tag: seq.term(j) for tag, seq in zip(assignment_tags, seqs)}
        v = poly.eval_series(assignment).val()
        if prev is None or v != prev:
            prev, run_start = v, j
        if j - run_start + 1 >= W:
            return prev, run_start
    raise NotStabilizedError(
        f"coefficient value did not stabilize over {W} indices below the horizon")


def _stable_betas(h: Poly, seqs: Sequence[PseudoSequence], W: int):
    """beta_k and window start for every nonzero Hasse derivative D^(k)h, k != 0."""
    tags = [VarTag.orig(e) for e in range(len(seqs))]
    ranges = [range(h.degree_in(t) + 1) for t in tags]
    betas: Dict[Tuple[int, ...], Tuple[GroupElement, int]] = {}
    for combo in itertools.product(*ranges):
        if not any(combo):
            continue
        deriv = h.hasse_derivative({t: n for t, n in zip(tags, combo)})
        if deriv.is_zero():
            continue
        betas[combo] = stable_val_multi(deriv, seqs, W)
    return betas


# -- Certificates ------------------------------------------------------

_MODES = ("content", "min-linear")


class RewriteCert:
    """Exact, self-verifying record of one rewrite."""

    def __init__(self, kind: str, field: Field, g: Poly,
                 multiplier: Mapping[int, int], seqs: Sequence[PseudoSequence],
                 from_indices: Optional[Sequence[int]], indices: Sequence[int],
                 G1: Poly, c_mono, mode: str, case: str,
                 table: Sequence[Tuple[object, GroupElement]]):
        self.kind = kind
        self.field = field
        self.g = g
        self.multiplier = dict(multiplier)
        self.seqs = list(seqs)
        self.from_indices = list(from_indices) if from_indices is not None else None
        self.indices = list(indices)
        self.G1 = G1
        self.c_mono = c_mono  # canonical monomial (tuple of [tag, exp])
        self.mode = mode
        self.case = case
        self.table = list(table)

    # -- serialization ------------------------------------------------
    def to_json(self):
        out = {
            "cert": "rewrite",
            "kind": self.kind,
            "g": self.g.to_json(),
            "multiplier": sorted([e, k] for e, k in self.multiplier.items()),
            "seqs": [s.to_json() for s in self.seqs],
            "indices": self.indices,
            "G1": self.G1.to_json(),
            "c_mono": [[v.to_json(), k] for v, k in self.c_mono],
            "mode": self.mode,
            "case": self.case,
            "table": [[[[v.to_json(), k] for v, k in mono], val.to_json()]
                      for mono, val in self.table],
        }
        out.update(field_to_json(self.field))
        if self.from_indices is not None:
            out["from_indices"] = self.from_indices
        return out

    @staticmethod
    def from_json(obj) -> "RewriteCert":
        if obj.get("cert") != "rewrite":
            raise InputError("not a rewrite certificate")
        field = field_from_json(obj)
        seqs = [sequence_from_json(s) for s in obj["seqs"]]
        g = Poly.from_json(obj["g"], field)
        G1 = Poly.from_json(obj["G1"], field)
        mono = tuple((VarTag.from_json(v), int(k)) for v, k in obj["c_mono"])
        table = [(tuple((VarTag.from_json(v), int(k)) for v, k in m),
                  GroupElement.from_json(val)) for m, val in obj["table"]]
        return RewriteCert(
            obj["kind"], field, g, {int(e): int(k) for e, k in obj["multiplier"]},
            seqs, obj.get("from_indices"), obj["indices"], G1, mono,
            obj["mode"], obj["case"], table)

    # -- verification -------------------------------------------------
    def _recompute(self) -> Poly:
        if self.kind == "shift_min":
            out = self.g
            for e, (j, t) in enumerate(zip(self.from_indices, self.indices)):
                old = VarTag.stage(e, j)
                if out.degree_in(old) == 0:
                    continue
                d, b = self.seqs[e].restage_coeffs(j, t)
                replacement = (Poly.const(d)
                               + Poly.var(self.field, VarTag.stage(e, t)).scale(b))
                out = out.subs_poly(old, replacement)
            return out
        h = self.g
        for e, k in self.multiplier.items():
            h = h * (Poly.var(self.field, VarTag.orig(e)) ** k)
        return recenter_at(h, self.seqs, self.indices)

    def verify(self) -> None:
        recomputed = self._recompute()
        if not recomputed.same_known(self.G1):
            raise VerificationError("identity", "recentred polynomial differs from G1")
        vals = {}
        for mono, coeff in self.G1.monos.items():
            vals[mono] = coeff.val()
        table = {mono: v for mono, v in self.table}
        if set(table) != set(vals) or any(table[m] != vals[m] for m in vals):
            raise VerificationError("value-table", "embedded value table is wrong")
        zero = None
        for v in vals.values():
            zero = v.zero()
            break
        for mono, v in vals.items():
            if zero is not None and v < zero:
                raise VerificationError("coeffs-in-V", f"coefficient val {v.to_json()} < 0")
        nonconst = {m: v for m, v in vals.items() if m != ()}
        seen = list(nonconst.values())
        for i in range(len(seen)):
            for j in range(i + 1, len(seen)):
                if seen[i] == seen[j]:
                    raise VerificationError(
                        "distinct-nonconstant", "two coefficient values coincide")
        if self.c_mono not in vals:
            raise VerificationError("c-mono", "designated coefficient is absent")
        cval = vals[self.c_mono]
        if self.mode == "content":
            for v in vals.values():
                if v < cval:
                    raise VerificationError(
                        "content-min", "designated coefficient is not minimal")
        elif self.mode == "min-linear":
            if sum(k for _, k in self.c_mono) != 1:
                raise VerificationError("min-linear", "designated coefficient is not linear")
            for m, v in nonconst.items():
                if m != self.c_mono and not cval < v:
                    raise VerificationError(
                        "min-linear",
                        "designated linear coefficient is not strictly minimal")
        else:
            raise VerificationError("mode", f"unknown mode {self.mode!r}")

    # -- convenience --------------------------------------------------
    @property
    def c(self) -> ValuedSeries:
        return self.G1.monos[self.c_mono]

    def c_val(self) -> GroupElement:
        return self.c.val()


def verify_rewrite(obj) -> None:
    RewriteCert.from_json(obj).verify()


# -- The certification engine ------------------------------------------

def _build_streams(seqs: Sequence[PseudoSequence]):
    """Separation streams: stream[e][s-1] = gamma_{e, s-1} (sep index s maps
    to sequence index s-1); capped one below the horizon so the scale at
    the chosen index is always available."""
    out = []
    for seq in seqs:
        out.append([seq.gamma(j) for j in range(seq.horizon - 1)])
    return out


def _case_tag(vals: Dict[tuple, GroupElement]) -> str:
    nonconst = {m: v for m, v in vals.items() if m != ()}
    if not nonconst:
        return "star"
    cmin = min(nonconst.values())
    if () in vals and vals[()] < cmin:
        return "star"
    sigma = sorted(v.e for v, _ in _argmin(nonconst))
    return "gamma-min:" + ",".join(str(e) for e in sigma)


def _certify(kind: str, g: Poly, multiplier: Mapping[int, int],
             seqs: Sequence[PseudoSequence], nus: Sequence[int],
             mode: str, case: str, W: int, R: int) -> RewriteCert:
    field = g.field
    h = g
    for e, k in multiplier.items():
        h = h * (Poly.var(field, VarTag.orig(e)) ** k)
    if h.is_zero():
        raise InputError("polynomial must be nonzero")
    betas = _stable_betas(h, seqs, W)
    streams = _build_streams(seqs)
    min_idx = []
    for e, nu in enumerate(nus):
        starts = [start for k, (_, start) in betas.items() if k[e]]
        min_idx.append(max([nu + 1] + starts))
    rhos = list(min_idx)
    failure = "no attempt"
    for attempt in range(R):
        entries = [(k, {e: ke for e, ke in enumerate(k) if ke}, beta)
                   for k, (beta, _) in betas.items() if not beta.is_infinity]
        if entries:
            js_sep = separate_indices(entries, streams, rhos)
            indices = [j - 1 for j in js_sep]
        else:
            indices = list(rhos)
        G1 = recenter_at(h, seqs, indices)
        vals = {m: c.val() for m, c in G1.monos.items()}
        nonconst = {m: v for m, v in vals.items() if m != ()}
        ok, failure = _claims_hold(vals, nonconst, mode)
        if ok:
            if mode == "content":
                c_mono = _argmin(vals)
            else:
                c_mono = _argmin(nonconst)
            table = sorted(vals.items(), key=lambda kv: _mono_key(kv[0]))
            tag = case if case else _case_tag(vals)
            cert = RewriteCert(kind, field, g, multiplier, seqs, None, indices,
                               G1, c_mono, mode, tag, table)
            cert.verify()
            return cert
        rhos = [max(r, t + 1) + 1 for r, t in zip(rhos, indices)]
    raise UndecidedError(
        f"claims not reached after {R} retries: {failure}")


def _mono_key(m):
    return tuple(v.sort_key() + (k,) for v, k in m)


def _argmin(vals: Dict[tuple, GroupElement]):
    best = min(vals.values())
    candidates = [m for m, v in vals.items() if v == best]
    return min(candidates, key=_mono_key)


def _claims_hold(vals, nonconst, mode):
    if mode == "content":
        if not vals:
            return False, "empty polynomial"
    elif not nonconst:
        return False, "no nonconstant coefficients survive"
    seen = sorted(nonconst.values())
    for a, b in zip(seen, seen[1:]):
        if a == b:
            return False, "coefficient values collide"
    zero = None
    for v in vals.values():
        zero = v.zero()
        break
    if zero is not None:
        for v in vals.values():
            if v < zero:
                return False, "a coefficient lies outside V"
    if mode == "min-linear":
        m = _argmin(nonconst)
        if sum(k for _, k in m) != 1:
            return False, "minimal coefficient is not linear"
    return True, ""


# -- Public operations -------------------------------------------------

def _check_multilinear(g: Poly, nvars: int) -> None:
    for e in range(nvars):
        if g.degree_in(VarTag.orig(e)) > 1:
            raise InputError(f"polynomial must be multilinear; degree > 1 in Y_{e}")


def rw_pair_square(g: Poly, seqs: Sequence[PseudoSequence],
                   nus: Sequence[int] = (0, 0), W: int = DEFAULT_WINDOW,
                   R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Content-extraction rewrite for a multilinear polynomial in two
    coupled elements (the second squares the first)."""
    _check_multilinear(g, 2)
    if len(seqs) != 2:
        raise InputError("exactly two sequences expected")
    return _certify("pair_square", g, {}, seqs, list(nus), "content", "", W, R)


def rw_multilinear_mono(g: Poly, seqs: Sequence[PseudoSequence],
                        nus: Optional[Sequence[int]] = None,
                        W: int = DEFAULT_WINDOW, R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Content-extraction rewrite when every variable occurs in at most
    one monomial (single-monomial partial derivatives)."""
    n = len(seqs)
    _check_multilinear(g, n)
    for e in range(n):
        tag = VarTag.orig(e)
        occupied = [m for m in g.monos if any(v == tag for v, _ in m)]
        if len(occupied) > 1:
            raise InputError(
                f"variable Y_{e} occurs in {len(occupied)} monomials; at most one allowed")
    nus = list(nus) if nus is not None else [0] * n
    return _certify("multilinear_mono", g, {}, seqs, nus, "content", "", W, R)


def rw_multilinear(g: Poly, seqs: Sequence[PseudoSequence],
                   nus: Optional[Sequence[int]] = None,
                   W: int = DEFAULT_WINDOW, R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Full multilinear rewrite: unique strictly minimal linear coefficient."""
    n = len(seqs)
    if g.is_zero():
        raise InputError("polynomial must be nonzero")
    _check_multilinear(g, n)
    nus = list(nus) if nus is not None else [0] * n
    if g.total_degree() < 1:
        # Constant polynomial: c = g, g1 = 1; nothing to recenter.
        return _certify("multilinear", g, {}, seqs, nus, "content", "", W, R)
    return _certify("multilinear", g, {}, seqs, nus, "min-linear", "", W, R)


def rw_shift_min(g_stage: Poly, seqs: Sequence[PseudoSequence],
                 bounds: Sequence[int], W: int = DEFAULT_WINDOW,
                 R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Shift stage indices of a distinct-valued multilinear stage polynomial
    until one linear coefficient is strictly minimal."""
    field = g_stage.field
    stage_vars = [v for v in g_stage.variables() if v.kind == "stage"]
    if not stage_vars:
        raise InputError("input must contain stage variables")
    es = sorted(v.e for v in stage_vars)
    if es != list(range(len(es))):
        raise InputError("stage variables must be Y_{0,j0}..Y_{m,jm}")
    from_indices = [None] * len(es)
    for v in stage_vars:
        if g_stage.degree_in(v) > 1:
            raise InputError("input must be multilinear")
        from_indices[v.e] = v.extra
    if len(seqs) != len(es) or len(bounds) != len(es):
        raise InputError("sequences and bounds must match the stage variables")
    vals = {m: c.val() for m, c in g_stage.monos.items() if m != ()}
    flat = sorted(vals.values())
    for a, b in zip(flat, flat[1:]):
        if a == b:
            raise InputError("input coefficient values must be pairwise distinct")
    streams = _build_streams(seqs)
    rhos = [max(j + 1, t) for j, t in zip(from_indices, bounds)]
    failure = "no attempt"
    for attempt in range(R):
        # Predict the shifted linear values and separate them.
        entries = []
        for e in range(len(es)):
            tag = VarTag.stage(e, from_indices[e])
            taus = [m for m in vals if any(v == tag for v, _ in m)]
            if not taus:
                continue
            beta = min(vals[m] for m in taus) - seqs[e].gamma(from_indices[e])
            entries.append((e, {e: 1}, beta))
        if entries:
            js_sep = separate_indices(entries, streams, rhos)
            indices = [j - 1 for j in js_sep]
        else:
            indices = list(rhos)
        out = g_stage
        for e, (j, t) in enumerate(zip(from_indices, indices)):
            old = VarTag.stage(e, j)
            if out.degree_in(old) == 0:
                continue
            d, b = seqs[e].restage_coeffs(j, t)
            out = out.subs_poly(old, Poly.const(d)
                                + Poly.var(field, VarTag.stage(e, t)).scale(b))
        new_vals = {m: c.val() for m, c in out.monos.items()}
        nonconst = {m: v for m, v in new_vals.items() if m != ()}
        ok, failure = _claims_hold(new_vals, nonconst, "min-linear")
        if ok:
            c_mono = _argmin(nonconst)
            table = sorted(new_vals.items(), key=lambda kv: _mono_key(kv[0]))
            cert = RewriteCert("shift_min", field, g_stage, {}, seqs,
                               from_indices, indices, out, c_mono,
                               "min-linear", "shift", table)
            cert.verify()
            return cert
        rhos = [max(r, t + 1) + 1 for r, t in zip(rhos, indices)]
    raise UndecidedError(f"shift did not reach a minimal linear coefficient: {failure}")


def _charp_exponent_check(g: Poly, p: int, tags: Sequence[VarTag]) -> None:
    if p == 0:
        return
    for mono in g.monos:
        for v, k in mono:
            if v in tags and k > 0 and k % p == 0:
                raise InputError(
                    f"exponent {k} of Y_{v.e} is divisible by the characteristic {p}")


def _has_admissible(g: Poly, p: int, tags: Sequence[VarTag]) -> bool:
    """Some monomial has a positive exponent not divisible by p in one of tags."""
    for mono in g.monos:
        for v, k in mono:
            if v in tags and k > 0 and (p == 0 or k % p != 0):
                return True
    return False


def rw_univariate_pfree(g: Poly, seq: PseudoSequence, nu: int = 0,
                        W: int = DEFAULT_WINDOW, R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Univariate normal form when no positive exponent is divisible by
    the characteristic."""
    if g.is_zero():
        raise InputError("polynomial must be nonzero")
    tag = VarTag.orig(0)
    if any(v != tag for v in g.variables()):
        raise InputError("polynomial must be univariate in Y_0")
    p = characteristic(g.field)
    _charp_exponent_check(g, p, [tag])
    if g.total_degree() < 1:
        raise InputError("polynomial must be nonconstant")
    return _certify("univariate_pfree", g, {}, [seq], [nu], "min-linear", "case1", W, R)


def rw_univariate_charp(g: Poly, seq: PseudoSequence, nu: int = 0,
                        W: int = DEFAULT_WINDOW, R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Characteristic-p univariate case split: rewrite g itself (case1) or
    Y*g (case2) into the minimal-linear normal form."""
    p = characteristic(g.field)
    if p == 0:
        raise InputError("this operation requires positive characteristic")
    if g.is_zero():
        raise InputError("polynomial must be nonzero")
    tag = VarTag.orig(0)
    if any(v != tag for v in g.variables()):
        raise InputError("polynomial must be univariate in Y_0")
    if _has_admissible(g, p, [tag]):
        return _certify("univariate_charp", g, {}, [seq], [nu],
                        "min-linear", "case1", W, R)
    return _certify("univariate_charp", g, {0: 1}, [seq], [nu],
                    "min-linear", "case2", W, R)


def rw_bivariate_pfree(g: Poly, seqs: Sequence[PseudoSequence],
                       nus: Sequence[int] = (0, 0), W: int = DEFAULT_WINDOW,
                       R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Bivariate normal form when no positive exponent is divisible by
    the characteristic."""
    if g.is_zero():
        raise InputError("polynomial must be nonzero")
    tags = [VarTag.orig(0), VarTag.orig(1)]
    if any(v not in tags for v in g.variables()):
        raise InputError("polynomial must live in Y_0, Y_1")
    p = characteristic(g.field)
    _charp_exponent_check(g, p, tags)
    if g.total_degree() < 1:
        raise InputError("polynomial must be nonconstant")
    return _certify("bivariate_pfree", g, {}, seqs, list(nus),
                    "min-linear", "case1", W, R)


_MULTIPLIER_CASCADE = ({}, {0: 1}, {1: 1}, {0: 1, 1: 1})
_MULTIPLIER_NAMES = {(): "1", ((0, 1),): "y1", ((1, 1),): "y2",
                     ((0, 1), (1, 1)): "y1y2"}


def rw_bivariate_charp(f: Poly, seqs: Sequence[PseudoSequence],
                       nus: Sequence[int] = (0, 0), W: int = DEFAULT_WINDOW,
                       R: int = DEFAULT_RETRIES) -> RewriteCert:
    """Characteristic-p bivariate cascade: multiply f by 1, Y_1, Y_2 or
    Y_1*Y_2 until the product admits the minimal-linear normal form."""
    p = characteristic(f.field)
    if p == 0:
        raise InputError("this operation requires positive characteristic")
    if f.is_zero():
        raise InputError("polynomial must be nonzero")
    tags = [VarTag.orig(0), VarTag.orig(1)]
    if any(v not in tags for v in f.variables()):
        raise InputError("polynomial must live in Y_0, Y_1")
    last_failure: Optional[Exception] = None
    for mult in _MULTIPLIER_CASCADE:
        h = f
        for e, k in mult.items():
            h = h * (Poly.var(f.field, VarTag.orig(e)) ** k)
        if not _has_admissible(h, p, tags):
            continue
        name = _MULTIPLIER_NAMES[tuple(sorted(mult.items()))]
        try:
            return _certify("bivariate_charp", f, mult, seqs, list(nus),
                            "min-linear", "multiplier:" + name, W, R)
        except UndecidedError as exc:
            last_failure = exc
    raise UndecidedError(
        "no multiplier in the cascade reached the normal form: "
        + str(last_failure))
