"""Sparse multivariate polynomials over Z.

Just enough machinery to generate and evaluate the universal Witt sum and
product polynomials: dict from exponent tuples to integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotDivisibleError


@dataclass(frozen=True)
class DictPoly:
    nvars: int
    terms: dict = field(default_factory=dict)  # exponent tuple -> int, no zeros

    @staticmethod
    def const(nvars: int, c: int) -> "DictPoly":
        if c == 0:
            return DictPoly(nvars, {})
        return DictPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def var(nvars: int, i: int) -> "DictPoly":
        exp = [0] * nvars
        exp[i] = 1
        return DictPoly(nvars, {tuple(exp): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DictPoly") -> "DictPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            c2 = out.get(e, 0) + c
            if c2:
                out[e] = c2
            else:
                out.pop(e, None)
        return DictPoly(self.nvars, out)

    def __neg__(self) -> "DictPoly":
        return DictPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "DictPoly") -> "DictPoly":
        return self + (-other)

    def __mul__(self, other: "DictPoly") -> "DictPoly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = out.get(e, 0) + c1 * c2
                if c:
                    out[e] = c
                else:
                    out.pop(e, None)
        return DictPoly(self.nvars, out)

    def scale(self, c: int) -> "DictPoly":
        if c == 0:
            return DictPoly(self.nvars, {})
        return DictPoly(self.nvars, {e: k * c for e, k in self.terms.items()})

    def __pow__(self, k: int) -> "DictPoly":
        result = DictPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def exact_div(self, d: int) -> "DictPoly":
        out = {}
        for e, c in self.terms.items():
            if c % d:
                raise NotDivisibleError(f"coefficient {c} not divisible by {d}")
            out[e] = c // d
        return DictPoly(self.nvars, out)

    def eval(self, values, add, mul, from_int, one):
        """Evaluate with ring callbacks; `values` are ring elements."""
        powcache = [dict() for _ in range(self.nvars)]

        def vpow(i, k):
            cache = powcache[i]
            if k in cache:
                return cache[k]
            if k == 1:
                r = values[i]
            elif k % 2 == 0:
                h = vpow(i, k // 2)
                r = mul(h, h)
            else:
                r = mul(vpow(i, k - 1), values[i])
            cache[k] = r
            return r

        acc = None
        for e, c in self.terms.items():
            term = from_int(c)
            for i, k in enumerate(e):
                if k:
                    term = mul(term, vpow(i, k))
            acc = term if acc is None else add(acc, term)
        return acc if acc is not None else from_int(0)
