"""Batch front end: run separation/rewrite/smooth pipelines from JSON
configs and verify certificate files.

Exit codes: 0 ok, 1 input error, 2 horizon/stabilization, 3 undecided
after retries, 4 verification failure.  Output is canonical JSON
(sorted keys, compact separators) so identical configs yield
byte-identical certificates.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import (HorizonError, InconclusiveError, InputError,
                     UndecidedError, VerificationError)
from .fields import characteristic, field_from_json
from .group import GroupElement
from .pcs import sequence_from_json
from .poly import Poly
from .rewrite import (rw_bivariate_charp, rw_bivariate_pfree, rw_multilinear,
                      rw_multilinear_mono, rw_pair_square, rw_univariate_charp,
                      rw_univariate_pfree, verify_rewrite)
from .separation import (sep_cross_pair, sep_multi, sep_shifted_pair,
                         sep_tail, verify_separation)
from .smooth import SmoothCert, sm_family, sm_fraction, sm_pair, sm_verify
from .series import ValuedSeries

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HORIZON = 2
EXIT_UNDECIDED = 3
EXIT_VERIFY = 4


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _group(obj) -> GroupElement:
    return GroupElement.from_json(obj)


def _load_stream(spec, horizon: int):
    """A gamma stream: either an explicit JSON list of group elements or a
    sequence spec whose gamma values are materialized up to the horizon."""
    if isinstance(spec, list):
        return [_group(x) for x in spec]
    seq = sequence_from_json(spec)
    hi = min(horizon, seq.horizon)
    return [seq.gamma(j) for j in range(hi)]


def _load_seq(spec, horizon):
    seq = sequence_from_json(spec)
    if horizon is not None:
        seq.horizon = horizon
    return seq


def _require(cfg, key):
    if key not in cfg:
        raise InputError(f"config is missing required key {key!r}")
    return cfg[key]


# -- command implementations -------------------------------------------

def cmd_separate(cfg, opts):
    H = opts.get("horizon") or cfg.get("horizon", 200)
    op = _require(cfg, "op")
    if op == "tail":
        cert = sep_tail([_group(b) for b in _require(cfg, "betas")],
                        [int(t) for t in _require(cfg, "ts")],
                        _load_stream(_require(cfg, "gamma"), H))
    elif op == "shifted":
        cert = sep_shifted_pair(_group(_require(cfg, "beta0")),
                                _group(_require(cfg, "beta1")),
                                _group(_require(cfg, "c")),
                                _load_stream(_require(cfg, "gamma0"), H))
    elif op == "cross":
        cert = sep_cross_pair(_group(_require(cfg, "beta0")),
                              _group(_require(cfg, "beta1")),
                              _group(_require(cfg, "beta01")),
                              _load_stream(_require(cfg, "gamma0"), H),
                              _load_stream(_require(cfg, "gamma1"), H))
    elif op == "multi":
        gammas = [_load_stream(g, H) for g in _require(cfg, "gammas")]
        cert = sep_multi([list(map(int, s)) for s in _require(cfg, "subsets")],
                         [_group(b) for b in _require(cfg, "betas")],
                         [int(t) for t in _require(cfg, "ts")],
                         gammas,
                         [int(r) for r in cfg.get("rhos", [0] * len(gammas))])
    else:
        raise InputError(f"unknown separate op {op!r}")
    return cert.to_json()


def cmd_rewrite(cfg, opts):
    field = field_from_json(cfg)
    g = Poly.from_json(_require(cfg, "g"), field)
    seqs = [_load_seq(s, opts.get("horizon")) for s in _require(cfg, "seqs")]
    W = opts.get("window") or cfg.get("window", 8)
    R = opts.get("retries") or cfg.get("retries", 16)
    op = _require(cfg, "op")
    p = characteristic(field)
    if op == "pair_square":
        cert = rw_pair_square(g, seqs, nus=tuple(cfg.get("nus", (0, 0))), W=W, R=R)
    elif op == "multilinear_mono":
        cert = rw_multilinear_mono(g, seqs, nus=cfg.get("nus"), W=W, R=R)
    elif op == "multilinear":
        cert = rw_multilinear(g, seqs, nus=cfg.get("nus"), W=W, R=R)
    elif op == "univariate":
        fn = rw_univariate_charp if p > 0 else rw_univariate_pfree
        cert = fn(g, seqs[0], nu=int(cfg.get("nu", 0)), W=W, R=R)
    elif op == "bivariate":
        fn = rw_bivariate_charp if p > 0 else rw_bivariate_pfree
        cert = fn(g, seqs, nus=tuple(cfg.get("nus", (0, 0))), W=W, R=R)
    else:
        raise InputError(f"unknown rewrite op {op!r}")
    return cert.to_json()


def cmd_smooth(cfg, opts):
    field = field_from_json(cfg)
    seq0 = _load_seq(_require(cfg, "seq0"), opts.get("horizon"))
    W = opts.get("window") or cfg.get("window", 8)
    R = opts.get("retries") or cfg.get("retries", 16)
    delta = opts.get("delta")
    if delta is None and "delta" in cfg:
        delta = _group(cfg["delta"])
    op = _require(cfg, "op")
    if op == "pair":
        f = Poly.from_json(_require(cfg, "f"), field)
        d = (ValuedSeries.from_json(cfg["d"], field) if "d" in cfg else None)
        cert = sm_pair(f, seq0, d=d, nu=int(cfg.get("nu", 0)), W=W, R=R,
                       delta=delta)
    elif op == "family":
        fs = [Poly.from_json(f, field) for f in _require(cfg, "fs")]
        cert = sm_family(fs, seq0, delta=delta, W=W, R=R)
    elif op == "fraction":
        f1 = Poly.from_json(_require(cfg, "f1"), field)
        f2 = Poly.from_json(_require(cfg, "f2"), field)
        cert = sm_fraction(f1, f2, seq0, delta=delta, W=W, R=R)
    else:
        raise InputError(f"unknown smooth op {op!r}")
    return cert.to_json()


def cmd_verify(cfg, opts):
    kind = cfg.get("cert")
    if kind == "separation":
        verify_separation(cfg)
    elif kind == "rewrite":
        verify_rewrite(cfg)
    elif kind == "smooth":
        delta = opts.get("delta")
        sm_verify(SmoothCert.from_json(cfg), delta=delta)
    else:
        raise InputError(f"unknown certificate schema {kind!r}")
    return {"verified": True, "cert": kind}


_COMMANDS = {"separate": cmd_separate, "rewrite": cmd_rewrite,
             "smooth": cmd_smooth, "verify": cmd_verify}


def run_single(command: str, cfg: dict, opts: dict):
    """Run one config; returns (exit_code, result-or-error-message)."""
    try:
        return EXIT_OK, _COMMANDS[command](cfg, opts)
    except (InputError, KeyError, TypeError, ValueError) as exc:
        return EXIT_INPUT, f"input error: {exc}"
    except (HorizonError, InconclusiveError) as exc:
        return EXIT_HORIZON, f"horizon/stabilization: {exc}"
    except UndecidedError as exc:
        return EXIT_UNDECIDED, f"undecided after retries: {exc}"
    except VerificationError as exc:
        return EXIT_VERIFY, f"verification failed: {exc}"


def _parse_delta(text):
    try:
        return GroupElement.from_json(json.loads(text))
    except (json.JSONDecodeError, InputError):
        return GroupElement.from_json(text)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="valcert",
        description="produce and verify separation / rewrite / smooth-"
                    "presentation certificates")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("path", nargs="?",
                        help="config (or certificate) file; - for stdin")
    parser.add_argument("--config", help="config file path (same as the "
                        "positional argument)")
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--horizon", type=int)
    parser.add_argument("--window", type=int)
    parser.add_argument("--delta", help="truncation order as group-element "
                        "JSON (e.g. 12, \"3/2\", [1,0])")
    parser.add_argument("--retries", type=int)
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for an array config")
    args = parser.parse_args(argv)

    path = args.config or args.path
    if path is None:
        print("error: no config file given", file=sys.stderr)
        return EXIT_INPUT
    try:
        if path == "-":
            payload = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INPUT

    opts = {"horizon": args.horizon, "window": args.window,
            "retries": args.retries,
            "delta": _parse_delta(args.delta) if args.delta else None}

    if isinstance(payload, list):
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_pool_entry,
                                        [(args.command, cfg, opts) for cfg in payload]))
        else:
            results = [run_single(args.command, cfg, opts) for cfg in payload]
        code = max((c for c, _ in results), default=EXIT_OK)
        out = [r if c == EXIT_OK else {"error": r, "exit": c}
               for c, r in results]
    else:
        code, out = run_single(args.command, payload, opts)
        if code != EXIT_OK:
            print(out, file=sys.stderr)
            return code

    text = canonical_json(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _pool_entry(item):
    command, cfg, opts = item
    return run_single(command, cfg, opts)


if __name__ == "__main__":
    sys.exit(main())
