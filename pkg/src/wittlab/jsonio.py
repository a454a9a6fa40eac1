"""JSON encoding/decoding for all wittlab value types.

Formats:
  ResidueElt  {"ring": "residue", "p": 3, "depth": 2, "coeffs": [...]}
  CycElt      {"ring": "cyc", "p": 3, "depth": 2, "prec": 4, "coeffs": [...]}
  TiltElt     {"tilt": {"window": [1, m], "coords": [residue...],
                        "vprec": ["1", ...]}}
  WittVec     {"witt": {"len": n, "coords": [...]}}
  TRClass     {"tr": {"level": n, "deg": 2m, "coeff": witt}}
  Fraction    "3/2"; ValAtLeast ">= 3/2"
"""

from __future__ import annotations

from fractions import Fraction

from . import rings as R, tilt as T, trmodel as TR, witt as W
from .errors import DomainError
from .rings import CycElt, ResidueElt, ValAtLeast
from .tilt import TiltElt
from .trmodel import TRClass
from .witt import WittVec


def encode(obj):
    if isinstance(obj, ResidueElt):
        return {
            "ring": "residue",
            "p": obj.p,
            "depth": obj.depth,
            "coeffs": list(obj.coeffs),
        }
    if isinstance(obj, CycElt):
        return {
            "ring": "cyc",
            "p": obj.p,
            "depth": obj.depth,
            "prec": obj.prec,
            "coeffs": list(obj.coeffs),
        }
    if isinstance(obj, TiltElt):
        return {
            "tilt": {
                "window": list(obj.window),
                "coords": [encode(c) for c in obj.coords],
                "vprec": [str(v) for v in obj.vprec],
            }
        }
    if isinstance(obj, WittVec):
        return {
            "witt": {"len": len(obj), "coords": [encode(c) for c in obj.coords]}
        }
    if isinstance(obj, W.GhostVec):
        return {
            "ghost": {"len": len(obj), "comps": [encode(c) for c in obj.comps]}
        }
    if isinstance(obj, TRClass):
        return {
            "tr": {
                "level": obj.level,
                "deg": obj.degree,
                "coeff": encode(obj.coeff),
            }
        }
    if isinstance(obj, ValAtLeast):
        return f">= {obj.bound}"
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or isinstance(obj, int) or obj is None:
        return obj
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    raise DomainError(f"cannot encode {type(obj).__name__}")


def decode_scalar(data, ctx):
    """Residue or cyclotomic element, or a plain integer."""
    if isinstance(data, int):
        return data
    if not isinstance(data, dict) or "ring" not in data:
        raise DomainError("expected a ring-element object or integer")
    kind = data["ring"]
    p = data.get("p", ctx.p)
    if kind == "residue":
        depth = int(data["depth"])
        e = p ** (depth - 1) * (p - 1)
        coeffs = [int(c) for c in data["coeffs"]]
        if len(coeffs) > e:
            raise DomainError(f"residue element at depth {depth} has at most {e} coefficients")
        coeffs += [0] * (e - len(coeffs))
        return ResidueElt(p, depth, tuple(c % p for c in coeffs))
    if kind == "cyc":
        depth = int(data["depth"])
        prec = int(data.get("prec", ctx.N))
        length = R._phi_len(p, depth)
        mod = p**prec
        coeffs = [int(c) for c in data["coeffs"]]
        if len(coeffs) > length:
            return CycElt(
                p, depth, prec,
                tuple(R._cyc_reduce_raw(coeffs, p, depth, mod)),
            )
        coeffs += [0] * (length - len(coeffs))
        return CycElt(p, depth, prec, tuple(c % mod for c in coeffs))
    raise DomainError(f"unknown ring kind {kind!r}")


def decode_tilt(data, ctx) -> TiltElt:
    body = data["tilt"] if "tilt" in data else data
    coords = tuple(decode_scalar(c, ctx) for c in body["coords"])
    if "vprec" in body:
        vprec = tuple(Fraction(v) for v in body["vprec"])
    else:
        vprec = (Fraction(1),) * len(coords)
    return TiltElt(ctx.p, coords, vprec)


def decode_witt(data, ctx, ring=None) -> WittVec:
    body = data["witt"] if "witt" in data else data
    coords = []
    for c in body["coords"]:
        if isinstance(c, dict) and "tilt" in c:
            coords.append(decode_tilt(c, ctx))
        else:
            coords.append(decode_scalar(c, ctx))
    if ring is None:
        ring = infer_ring(coords, ctx)
    coords = [ring.from_int(c) if isinstance(c, int) else c for c in coords]
    return WittVec(ring, tuple(coords))


def infer_ring(coords, ctx):
    for c in coords:
        if isinstance(c, TiltElt):
            return T.TiltRing(ctx.p, len(c.coords))
        if isinstance(c, CycElt):
            return W.CycRing(ctx.p, c.depth, c.prec, guard=ctx.G)
        if isinstance(c, ResidueElt):
            return W.ResidueRing(ctx.p, c.depth)
    return W.IntegerRing(ctx.p)


def decode_tr(data, ctx) -> TRClass:
    body = data["tr"] if "tr" in data else data
    coeff = decode_witt(body["coeff"], ctx)
    return TRClass(int(body["level"]), int(body["deg"]), coeff)
