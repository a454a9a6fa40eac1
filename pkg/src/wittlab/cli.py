"""Batch command-line front end.

Two subcommands:

  eval      read one JSON request from stdin (or an NDJSON stream with
            --batch) and print one JSON response per request
  selftest  run the named check suite at a fixed parameter profile and
            print a JSON report

A request is ``{"op": <name>, "params": {...}}`` plus optional top-level
precision overrides (``p``, ``prec``, ``depth``, ``len``, ``guard``).
Responses are ``{"ok": true, "value": ..., ...}`` or
``{"ok": false, "error": {"code": ..., "message": ...}}``; nothing is
ever half-printed.

Exit codes: 0 success, 1 computation/test failure, 2 usage error,
3 precision exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import jsonio as J, selftest, theta as TH, tilt as T, trmodel as TR, witt as W
from .context import PrecisionCtx
from .errors import DomainError, PrecisionError, WittlabError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


# --------------------------------------------------------------------------
# operation registry: each handler takes (params, ctx) and returns the
# payload dict merged into the {"ok": true} response


_OPS = {}


def _op(name):
    def deco(fn):
        _OPS[name] = fn
        return fn

    return deco


def _need(params, key):
    if key not in params:
        raise DomainError(f"missing required parameter {key!r}")
    return params[key]


def _decode_witt(params, key, ctx):
    return J.decode_witt(_need(params, key), ctx)


def _with_eff(value):
    out = {"value": J.encode(value)}
    eff = W.effective_prec(value) if isinstance(value, W.WittVec) else None
    if eff is not None:
        out["effective_precision"] = eff
    return out


@_op("ghost")
def _op_ghost(params, ctx):
    a = _decode_witt(params, "witt", ctx)
    return {"value": [J.encode(c) for c in W.ghost(a).comps]}


@_op("from_ghost")
def _op_from_ghost(params, ctx):
    body = _need(params, "ghost")
    comps = body["comps"] if isinstance(body, dict) else body
    vals = [Fraction(c) if isinstance(c, str) else c for c in comps]
    if any(isinstance(v, Fraction) for v in vals):
        ring = W.RationalRing(ctx.p)
        vals = [Fraction(v) for v in vals]
    else:
        ring = W.IntegerRing(ctx.p)
    return _with_eff(W.ghost_inverse(W.GhostVec(ring, tuple(vals))))


def _binop(which):
    def handler(params, ctx):
        a = _decode_witt(params, "a", ctx)
        b = J.decode_witt(_need(params, "b"), ctx, ring=a.ring)
        backend = params.get("backend")
        if which == "divide":
            return _with_eff(W.witt_divide_exact(a, b))
        fn = {"add": W.witt_add, "mul": W.witt_mul, "sub": W.witt_sub}[which]
        return _with_eff(fn(a, b, backend))

    return handler


for _name in ("add", "mul", "sub", "divide"):
    _OPS[_name] = _binop(_name)


@_op("teich")
def _op_teich(params, ctx):
    raw = _need(params, "x")
    if isinstance(raw, dict) and "tilt" in raw:
        x = J.decode_tilt(raw, ctx)
    else:
        x = J.decode_scalar(raw, ctx)
    n = int(params.get("len", ctx.L))
    ring = J.infer_ring([x], ctx)
    if isinstance(x, int):
        x = ring.from_int(x)
    return _with_eff(W.teichmuller(ring, x, n))


@_op("F")
def _op_frobenius(params, ctx):
    return _with_eff(W.frobenius(_decode_witt(params, "x", ctx)))


@_op("V")
def _op_verschiebung(params, ctx):
    a = _decode_witt(params, "x", ctx)
    max_len = params.get("max_len")
    return _with_eff(W.verschiebung(a, int(max_len) if max_len else None))


@_op("R")
def _op_restrict(params, ctx):
    return _with_eff(W.restrict(_decode_witt(params, "x", ctx)))


@_op("tilt_valuation")
def _op_tilt_valuation(params, ctx):
    x = J.decode_tilt(_need(params, "x"), ctx)
    return {"value": J.encode(T.tilt_valuation(x))}


@_op("make_epsilon")
def _op_make_epsilon(params, ctx):
    k = int(_need(params, "k"))
    m = params.get("len")
    return {"value": J.encode(T.make_epsilon(ctx, k, int(m) if m else None))}


@_op("sharp")
def _op_sharp(params, ctx):
    x = J.decode_tilt(_need(params, "x"), ctx)
    level = int(params.get("level", 1))
    prec = int(params.get("prec", ctx.N))
    return {"value": J.encode(T.sharp(x, level, prec, ctx)), "effective_precision": prec}


@_op("theta")
def _op_theta(params, ctx):
    a = _decode_witt(params, "x", ctx)
    if not isinstance(a.ring, T.TiltRing):
        raise DomainError("theta expects a Witt vector with tilt coordinates")
    n = int(_need(params, "n"))
    precision = params.get("precision")
    res = TH.theta_n(a, n, ctx, precision=int(precision) if precision else None)
    return {
        "value": J.encode(res.value),
        "effective_precision": res.effective_precision,
        "consumed_window": res.consumed_window,
    }


@_op("theta_prime")
def _op_theta_prime(params, ctx):
    x = J.decode_scalar(_need(params, "x"), ctx)
    n = int(_need(params, "n"))
    return {"value": J.encode(TH.theta_prime(x, n, ctx))}


@_op("xi")
def _op_xi(params, ctx):
    n = int(_need(params, "n"))
    m = int(params.get("len", 1))
    return {"value": J.encode(TH.xi_generator(n, m, ctx))}


@_op("classify_root")
def _op_classify(params, ctx):
    a = _decode_witt(params, "x", ctx)
    m = int(_need(params, "m"))
    return {"value": J.encode(TH.classify_root_of_unity(a, m, ctx))}


@_op("tr_beta")
def _op_tr_beta(params, ctx):
    return {"value": J.encode(TR.tr_make_beta(int(_need(params, "n")), ctx))}


@_op("tr_R")
def _op_tr_restriction(params, ctx):
    c = J.decode_tr(_need(params, "x"), ctx)
    return {"value": J.encode(TR.tr_restriction(c, ctx))}


@_op("tr_F")
def _op_tr_frobenius(params, ctx):
    c = J.decode_tr(_need(params, "x"), ctx)
    return {"value": J.encode(TR.tr_frobenius(c, ctx))}


@_op("tr_galois")
def _op_tr_galois(params, ctx):
    c = J.decode_tr(_need(params, "x"), ctx)
    return {"value": J.encode(TR.tr_galois(c, int(_need(params, "u")), ctx))}


@_op("tc_kernel")
def _op_tc_kernel(params, ctx):
    q = int(_need(params, "q"))
    m = int(_need(params, "m"))
    c = params.get("c")
    x = params.get("x")
    xw = J.decode_witt(x, ctx) if x is not None else None
    return {
        "value": TR.tc_kernel_check(q, tuple(c) if c is not None else None, m, ctx, x=xw)
    }


# --------------------------------------------------------------------------


_CTX_KEYS = (("p", "p"), ("prec", "N"), ("depth", "D"), ("len", "L"), ("guard", "G"))


def _build_ctx(args, overrides):
    kw = {}
    for flag, field in _CTX_KEYS:
        v = overrides.get(flag, getattr(args, flag, None))
        if v is not None:
            kw[field] = int(v)
    kw.setdefault("p", 3)
    kw.setdefault("G", max(4, kw.get("L", 4)))
    return PrecisionCtx(**kw)


def _error_obj(code, message, **extra):
    err = {"code": code, "message": message}
    err.update({k: v for k, v in extra.items() if v is not None})
    return {"ok": False, "error": err}


def _eval_one(line, args):
    """Evaluate one request; returns (response dict, exit code)."""
    try:
        req = json.loads(line)
    except json.JSONDecodeError as exc:
        return _error_obj("bad_json", str(exc)), EXIT_USAGE
    if not isinstance(req, dict) or "op" not in req:
        return _error_obj("schema_violation", 'request must be an object with an "op" field'), EXIT_USAGE
    op = req["op"]
    fn = _OPS.get(op)
    if fn is None:
        return _error_obj("unknown_op", f"unknown operation {op!r}"), EXIT_USAGE
    params = req.get("params", {})
    if not isinstance(params, dict):
        return _error_obj("schema_violation", '"params" must be an object'), EXIT_USAGE
    try:
        ctx = _build_ctx(args, {k: req[k] for k, _ in _CTX_KEYS if k in req})
    except (DomainError, ValueError, TypeError) as exc:
        return _error_obj("schema_violation", str(exc)), EXIT_USAGE
    t0 = time.perf_counter()
    try:
        payload = fn(params, ctx)
    except PrecisionError as exc:
        return _error_obj(exc.code, str(exc)), EXIT_PRECISION
    except WittlabError as exc:
        coord = getattr(exc, "coordinate", None)
        return _error_obj(exc.code, str(exc), coordinate=coord), EXIT_FAILURE
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        return _error_obj("schema_violation", f"malformed parameters: {exc}"), EXIT_USAGE
    out = {"ok": True, "op": op}
    out.update(payload)
    out["seconds"] = round(time.perf_counter() - t0, 6)
    return out, EXIT_OK


def _cmd_eval(args):
    status = EXIT_OK
    if args.batch:
        for line in sys.stdin:
            if not line.strip():
                continue
            resp, code = _eval_one(line, args)
            print(json.dumps(resp), flush=True)
            if status == EXIT_OK:
                status = code
        return status
    resp, status = _eval_one(sys.stdin.read(), args)
    print(json.dumps(resp))
    return status


def _cmd_selftest(args):
    report = selftest.run_profile(args.profile)
    print(json.dumps(report, indent=2))
    return EXIT_OK if report["passed"] else EXIT_FAILURE


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wittlab",
        description="Exact arithmetic for truncated Witt vectors, the finite-depth tilt, and the theta maps.",
    )
    parser.add_argument("--p", type=int, help="odd prime (default 3)")
    parser.add_argument("--prec", type=int, help="p-adic digits N")
    parser.add_argument("--depth", type=int, help="deepest cyclotomic level D")
    parser.add_argument("--len", type=int, help="Witt vector length L")
    parser.add_argument("--guard", type=int, help="guard digits G")
    sub = parser.add_subparsers(dest="command", required=True)
    p_eval = sub.add_parser("eval", help="evaluate JSON requests from stdin")
    p_eval.add_argument(
        "--batch", action="store_true", help="NDJSON stream: one request per line"
    )
    p_eval.set_defaults(func=_cmd_eval)
    p_self = sub.add_parser("selftest", help="run the check suite")
    p_self.add_argument("profile", choices=("small", "full"))
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
