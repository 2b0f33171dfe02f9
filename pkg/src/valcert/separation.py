"""Index separation in ordered abelian groups.

Four procedures locate tails or index tuples past which linear
value-combinations beta + sum(t_e * gamma_{e,j_e}) are pairwise
distinct, together with explicit collision structure where collisions
are unavoidable.  Every certificate embeds the gamma windows it used, so
verification is an exhaustive exact scan that needs no recomputation of
the search.

Streams are 1-indexed: a stream list g represents gamma_s = g[s-1] for
s = 1..H (matching the source statements that range indices over [1, λ)).
"""
from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import HorizonError, InputError, VerificationError
from .group import GroupElement, gv_solve_scalar


def _check_stream(g: Sequence[GroupElement], name: str = "gamma") -> None:
    if not g:
        raise InputError(f"{name} stream is empty")
    for a, b in zip(g, g[1:]):
        if not a < b:
            raise InputError(f"{name} stream must be strictly increasing")


class SeparationCert:
    """Self-contained certificate; verify() re-checks every claim."""

    def __init__(self, kind: str, data: dict):
        self.kind = kind
        self.data = data

    def to_json(self):
        out = {"cert": "separation", "kind": self.kind}
        out.update(self.data)
        return out

    @staticmethod
    def from_json(obj) -> "SeparationCert":
        if obj.get("cert") != "separation":
            raise InputError("not a separation certificate")
        data = {k: v for k, v in obj.items() if k not in ("cert", "kind")}
        return SeparationCert(obj["kind"], data)

    def verify(self) -> None:
        _VERIFIERS[self.kind](self.data)


def _g(x):
    return GroupElement.from_json(x)


def _gl(xs):
    return [GroupElement.from_json(x) for x in xs]


# -- Tail separation (single stream, integer multipliers) --------------

def sep_tail(betas: Sequence[GroupElement], ts: Sequence[int],
             gamma: Sequence[GroupElement]) -> SeparationCert:
    """Least nu with beta_i + t_i*gamma_s pairwise distinct for all s > nu.

    When every t_i is positive, also reports the index r whose value is
    strictly minimal past nu; nu is then additionally raised past any
    index where that minimality fails without an on-stream collision
    (a pair's crossover value can fall between stream points), so the
    certified claims hold for every s > nu and break at s = nu.
    """
    m = len(betas)
    if m != len(ts) or m < 1:
        raise InputError("need equally many betas and ts, at least one")
    _check_stream(gamma)
    H = len(gamma)
    for i in range(m):
        for j in range(i + 1, m):
            if ts[i] == ts[j] and betas[i] == betas[j]:
                raise InputError(
                    f"hypothesis violated: entries {i} and {j} coincide (equal t and beta)")
    nu = 0
    for i in range(m):
        for j in range(i + 1, m):
            dt = ts[j] - ts[i]
            if dt == 0:
                continue
            target = gv_solve_scalar(dt, betas[i] - betas[j])
            if target is None:
                continue
            if gamma[-1] < target:
                raise HorizonError(
                    "a collision target lies beyond the stream window; "
                    "extend the horizon")
            for s in range(1, H + 1):
                if gamma[s - 1] == target:
                    nu = max(nu, s)
                    break
                if target < gamma[s - 1]:
                    break
    r: Optional[int] = None
    if all(t > 0 for t in ts):
        if nu >= H:
            raise HorizonError("no indices remain past nu within the window")
        end = [betas[i] + gamma[H - 1].scale(ts[i]) for i in range(m)]
        r = end.index(min(end))
        # A pair's ordering can flip between stream points without an
        # on-stream collision (the crossover value is skipped or is not
        # solvable in the group), so the minimality claim needs nu to
        # also dominate the last index where r fails to be strictly
        # minimal.
        for s in range(H - 1, nu, -1):
            vals = [betas[i] + gamma[s - 1].scale(ts[i]) for i in range(m)]
            if any(i != r and not vals[r] < vals[i] for i in range(m)):
                nu = s
                break
        if nu >= H:
            raise HorizonError("no indices remain past nu within the window")
    cert = SeparationCert("tail", {
        "betas": [b.to_json() for b in betas],
        "ts": list(ts),
        "gamma": [g.to_json() for g in gamma],
        "nu": nu,
        "r": r,
    })
    cert.verify()
    return cert


def _verify_tail(data: dict) -> None:
    betas = _gl(data["betas"])
    ts = data["ts"]
    gamma = _gl(data["gamma"])
    nu, r = data["nu"], data["r"]
    m, H = len(betas), len(gamma)
    for s in range(nu + 1, H + 1):
        vals = [betas[i] + gamma[s - 1].scale(ts[i]) for i in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                if vals[i] == vals[j]:
                    raise VerificationError(
                        "tail-distinct", f"collision of entries {i},{j} at s={s}")
        if r is not None:
            for i in range(m):
                if i != r and not vals[r] < vals[i]:
                    raise VerificationError(
                        "tail-minimum", f"entry {r} not strictly minimal at s={s}")
    if nu > 0:
        vals = [betas[i] + gamma[nu - 1].scale(ts[i]) for i in range(m)]
        collision = len(set(vals)) < len(vals)
        # nu is minimal when at s=nu the certified claims break: either
        # two values collide, or the reported entry fails strict minimality.
        min_fails = (r is not None
                     and any(i != r and not vals[r] < vals[i] for i in range(m)))
        if not collision and not min_fails:
            raise VerificationError(
                "tail-minimal-nu",
                f"claims hold at s={nu} already; nu is not minimal")


# -- Shifted pair (one stream, second shifted by a constant) ------------

def sep_shifted_pair(beta0: GroupElement, beta1: GroupElement, c: GroupElement,
                     gamma0: Sequence[GroupElement]) -> SeparationCert:
    """Collision structure of beta0+gamma_{j0} versus beta1+gamma_{j1}+c.

    Returns the set A and injective map sigma with equality exactly at
    j1 = sigma(j0), j0 in A, within the stream window.
    """
    _check_stream(gamma0)
    H = len(gamma0)
    index_of = {gamma0[j - 1]: j for j in range(1, H + 1)}
    shift = beta0 - beta1 - c
    sigma: List[Tuple[int, int]] = []
    for j0 in range(1, H + 1):
        target = gamma0[j0 - 1] + shift
        j1 = index_of.get(target)
        if j1 is not None:
            sigma.append((j0, j1))
    cert = SeparationCert("shifted", {
        "beta0": beta0.to_json(),
        "beta1": beta1.to_json(),
        "c": c.to_json(),
        "gamma0": [g.to_json() for g in gamma0],
        "A": [p[0] for p in sigma],
        "sigma": [list(p) for p in sigma],
    })
    cert.verify()
    return cert


def _verify_shifted(data: dict) -> None:
    beta0, beta1, c = _g(data["beta0"]), _g(data["beta1"]), _g(data["c"])
    gamma0 = _gl(data["gamma0"])
    H = len(gamma0)
    pairs = {(a, b) for a, b in data["sigma"]}
    if set(data["A"]) != {a for a, _ in pairs}:
        raise VerificationError("shifted-A", "A does not match sigma's domain")
    if len({b for _, b in pairs}) != len(pairs):
        raise VerificationError("shifted-injective", "sigma is not injective")
    for j0 in range(1, H + 1):
        p0 = beta0 + gamma0[j0 - 1]
        for j1 in range(1, H + 1):
            p1 = beta1 + gamma0[j1 - 1] + c
            if (p0 == p1) != ((j0, j1) in pairs):
                raise VerificationError(
                    "shifted-exhaustive", f"collision map wrong at ({j0},{j1})")


# -- Cross pair (two streams and a cross term) --------------------------

def sep_cross_pair(beta0: GroupElement, beta1: GroupElement, beta01: GroupElement,
                   gamma0: Sequence[GroupElement],
                   gamma1: Sequence[GroupElement]) -> SeparationCert:
    """Bounds and collision map making the three families
    beta0+gamma_{0,j0}, beta1+gamma_{1,j1}, beta01+gamma_{0,j0}+gamma_{1,j1}
    pairwise distinct for j0 > rho0, j1 > rho1 with j1 != sigma(j0)."""
    _check_stream(gamma0, "gamma0")
    _check_stream(gamma1, "gamma1")
    H0, H1 = len(gamma0), len(gamma1)
    rho0 = 0
    t0 = beta1 - beta01
    for j0 in range(1, H0 + 1):
        if gamma0[j0 - 1] == t0:
            rho0 = j0
    rho1 = 0
    t1 = beta0 - beta01
    for j1 in range(1, H1 + 1):
        if gamma1[j1 - 1] == t1:
            rho1 = j1
    index1 = {gamma1[j - 1]: j for j in range(1, H1 + 1)}
    shift = beta0 - beta1
    sigma: List[Tuple[int, int]] = []
    for j0 in range(1, H0 + 1):
        j1 = index1.get(gamma0[j0 - 1] + shift)
        if j1 is not None:
            sigma.append((j0, j1))
    cert = SeparationCert("cross", {
        "beta0": beta0.to_json(),
        "beta1": beta1.to_json(),
        "beta01": beta01.to_json(),
        "gamma0": [g.to_json() for g in gamma0],
        "gamma1": [g.to_json() for g in gamma1],
        "rho0": rho0,
        "rho1": rho1,
        "A": [p[0] for p in sigma],
        "sigma": [list(p) for p in sigma],
    })
    cert.verify()
    return cert


def _verify_cross(data: dict) -> None:
    beta0, beta1, beta01 = _g(data["beta0"]), _g(data["beta1"]), _g(data["beta01"])
    gamma0, gamma1 = _gl(data["gamma0"]), _gl(data["gamma1"])
    rho0, rho1 = data["rho0"], data["rho1"]
    pairs = {(a, b) for a, b in data["sigma"]}
    for j0 in range(rho0 + 1, len(gamma0) + 1):
        p0 = beta0 + gamma0[j0 - 1]
        for j1 in range(rho1 + 1, len(gamma1) + 1):
            if (j0, j1) in pairs:
                continue
            p1 = beta1 + gamma1[j1 - 1]
            p01 = beta01 + gamma0[j0 - 1] + gamma1[j1 - 1]
            if p0 == p1 or p0 == p01 or p1 == p01:
                raise VerificationError(
                    "cross-distinct", f"families collide at ({j0},{j1})")


# -- Multi-index separation (the inductive lemma) -----------------------

Entry = Tuple[object, Mapping[int, int], GroupElement]  # (label, {pos: mult}, beta)


def separate_indices(entries: Sequence[Entry],
                     gammas: Sequence[Sequence[GroupElement]],
                     rhos: Sequence[int]) -> List[int]:
    """Choose indices (j_e), rho_e < j_e <= H_e, making all entry values
    beta + sum(mult_e * gamma_{e,j_e}) pairwise distinct.

    Implements the inductive proof: recurse on positions below the last,
    requiring distinctness only for entry pairs that carry equal
    multipliers at the peeled position (mixed pairs are separated by the
    tail step on the last index).  Multipliers may be any integers.
    Returns the lexicographically least tuple in that search order.
    """
    n = len(gammas)
    if len(rhos) != n:
        raise InputError("rhos must match the number of streams")
    for g in gammas:
        _check_stream(g)
    if not entries:
        raise InputError("no entries to separate")
    required = [(i, j) for i in range(len(entries)) for j in range(i + 1, len(entries))]
    return _separate_rec(entries, required, gammas, rhos, n - 1)


def _entry_value(entry: Entry, gammas, js, upto: int) -> GroupElement:
    _, mult, beta = entry
    total = beta
    for e, t in mult.items():
        if e <= upto and t != 0:
            total = total + gammas[e][js[e] - 1].scale(t)
    return total


def _separate_rec(entries, required, gammas, rhos, m: int) -> List[int]:
    if m < 0:
        for i, j in required:
            if entries[i][2] == entries[j][2]:
                raise InputError(
                    f"entries {entries[i][0]!r} and {entries[j][0]!r} cannot be "
                    "separated: identical multipliers and equal offsets")
        return []
    child_required = [(i, j) for i, j in required
                      if entries[i][1].get(m, 0) == entries[j][1].get(m, 0)]
    js = _separate_rec(entries, child_required, gammas, rhos, m - 1)
    mixed = [(i, j) for i, j in required
             if entries[i][1].get(m, 0) != entries[j][1].get(m, 0)]
    H = len(gammas[m])
    for jm in range(rhos[m] + 1, H + 1):
        g = gammas[m][jm - 1]
        ok = True
        for i, j in mixed:
            bi = _entry_value(entries[i], gammas, js + [jm], m - 1)
            bj = _entry_value(entries[j], gammas, js + [jm], m - 1)
            if bi + g.scale(entries[i][1].get(m, 0)) == bj + g.scale(entries[j][1].get(m, 0)):
                ok = False
                break
        if ok:
            return js + [jm]
    raise HorizonError(
        f"no admissible index for position {m} within the stream window")


def sep_multi(subsets: Sequence[Sequence[int]], betas: Sequence[GroupElement],
              ts: Sequence[int], gammas: Sequence[Sequence[GroupElement]],
              rhos: Sequence[int]) -> SeparationCert:
    """Spec-shaped wrapper: entries are subsets of positions with a common
    positive multiplier t_e per position."""
    if not subsets:
        raise InputError("empty subset family")
    if len(subsets) != len(betas):
        raise InputError("need one beta per subset")
    if any(t < 1 for t in ts):
        raise InputError("position multipliers must be positive")
    seen = set()
    entries: List[Entry] = []
    for sub, beta in zip(subsets, betas):
        key = tuple(sorted(set(sub)))
        if not key:
            raise InputError("subsets must be nonempty")
        if key in seen:
            raise InputError(f"duplicate subset {key}")
        seen.add(key)
        if any(e < 0 or e >= len(gammas) for e in key):
            raise InputError(f"subset {key} names a position without a stream")
        entries.append((list(key), {e: ts[e] for e in key}, beta))
    js = separate_indices(entries, gammas, rhos)
    cert = SeparationCert("multi", {
        "entries": [[label, sorted((e, t) for e, t in mult.items()), beta.to_json()]
                    for label, mult, beta in entries],
        "gammas": [[g.to_json() for g in stream] for stream in gammas],
        "rhos": list(rhos),
        "js": js,
    })
    cert.verify()
    return cert


def _verify_multi(data: dict) -> None:
    gammas = [_gl(stream) for stream in data["gammas"]]
    js = data["js"]
    rhos = data["rhos"]
    if len(js) != len(gammas):
        raise VerificationError("multi-shape", "index tuple does not match streams")
    for e, j in enumerate(js):
        if not (rhos[e] < j <= len(gammas[e])):
            raise VerificationError("multi-bounds", f"index j_{e}={j} out of range")
    values = []
    for label, mult, beta in data["entries"]:
        total = _g(beta)
        for e, t in mult:
            if t != 0:
                total = total + gammas[e][js[e] - 1].scale(t)
        values.append((label, total))
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i][1] == values[j][1]:
                raise VerificationError(
                    "multi-distinct",
                    f"entries {values[i][0]!r} and {values[j][0]!r} coincide")


_VERIFIERS = {
    "tail": _verify_tail,
    "shifted": _verify_shifted,
    "cross": _verify_cross,
    "multi": _verify_multi,
}


def verify_separation(obj) -> None:
    """Re-check a separation certificate from its JSON form."""
    SeparationCert.from_json(obj).verify()
