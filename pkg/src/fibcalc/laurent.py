"""Univariate Laurent polynomials over the integers, with exact arithmetic.

A polynomial is stored as a sorted tuple of (exponent, coefficient) pairs with
no zero coefficients; the empty tuple is 0.  All arithmetic is exact (Python
integers), which matters because Alexander coefficients grow quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import MalformedInputError


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        fixed = tuple(sorted((int(e), int(c)) for e, c in self.terms if c != 0))
        exps = [e for e, _ in fixed]
        if len(set(exps)) != len(exps):
            raise MalformedInputError("duplicate exponents in Laurent polynomial")
        object.__setattr__(self, "terms", fixed)

    @classmethod
    def from_dict(cls, coeffs: dict[int, int]) -> "LaurentPoly":
        return cls(tuple(coeffs.items()))

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls(((0, c),))

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.const(1)

    @classmethod
    def t(cls, exponent: int = 1, coeff: int = 1) -> "LaurentPoly":
        return cls(((exponent, coeff),))

    def coeff(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exp(self) -> int:
        if self.is_zero:
            raise MalformedInputError("zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        if self.is_zero:
            raise MalformedInputError("zero polynomial has no degree")
        return self.terms[-1][0]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(acc)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((e, c * k) for e, c in self.terms))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise MalformedInputError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def reverse(self) -> "LaurentPoly":
        """Exponent reversal t -> t^-1."""
        return LaurentPoly(tuple((-e, c) for e, c in self.terms))

    def evaluate(self, x: int) -> int:
        """Evaluate at a nonzero integer (negative exponents need x = +-1)."""
        total = 0
        for e, c in self.terms:
            if e >= 0:
                total += c * x**e
            else:
                if x not in (1, -1):
                    raise MalformedInputError("negative exponent at non-unit argument")
                total += c * x**(-e)
        return total

    def dense_coeffs(self) -> list[int]:
        """Coefficient list from min_exp upward (empty for 0)."""
        if self.is_zero:
            return []
        lo, hi = self.min_exp, self.max_exp
        out = [0] * (hi - lo + 1)
        for e, c in self.terms:
            out[e - lo] = c
        return out

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            if e == 0:
                mono = str(abs(c))
            else:
                head = "" if abs(c) == 1 else str(abs(c)) + "*"
                mono = head + ("t" if e == 1 else f"t^{e}")
            parts.append(("- " if c < 0 else "+ ") + mono)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Multiply by a unit +-t^k so the lowest term sits at exponent 0 and the
    leading (highest-degree) coefficient is positive.

    Alexander polynomials are only defined up to such units.
    """
    if p.is_zero:
        raise MalformedInputError("cannot normalize the zero polynomial")
    q = p.shift(-p.min_exp)
    if q.terms[-1][1] < 0:
        q = -q
    return q


def _content(coeffs: list[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    return g


def _primitive(coeffs: list[int]) -> list[int]:
    g = _content(coeffs)
    return [c // g for c in coeffs] if g else list(coeffs)


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z[x] (little-endian dense lists)."""
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b) and _strip(a):
        shift = len(a) - len(b)
        la = a[-1]
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[shift + i] -= la * bc
        _strip(a)
    return a


def _gcd_dense(a: list[int], b: list[int]) -> list[int]:
    a, b = _strip(list(a)), _strip(list(b))
    if not a:
        return _primitive(b) if b else []
    if not b:
        return _primitive(a)
    ca, cb = _content(a), _content(b)
    a, b = _primitive(a), _primitive(b)
    while b:
        r = _primitive(_strip(_pseudo_rem(a, b)))
        a, b = b, r
    g = [c * gcd(ca, cb) for c in a]
    if g[-1] < 0:
        g = [-c for c in g]
    return g


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """gcd in Z[t, t^-1], computed over Z[t] after clearing the unit t^min_exp.

    Result is defined up to units; it is returned with exponent-0 lowest term
    and positive leading coefficient.
    """
    if p.is_zero and q.is_zero:
        return LaurentPoly.zero()
    if p.is_zero:
        return normalize_alexander(q)
    if q.is_zero:
        return normalize_alexander(p)
    g = _gcd_dense(p.shift(-p.min_exp).dense_coeffs(), q.shift(-q.min_exp).dense_coeffs())
    return normalize_alexander(LaurentPoly(tuple((e, c) for e, c in enumerate(g))))
