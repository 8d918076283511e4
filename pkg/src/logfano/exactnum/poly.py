"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import as_rat, rat_str, sign


class Poly:
    """Polynomial with Fraction coefficients, lowest degree first.

    Instances are immutable and hashable. The zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def linear(cls, slope, intercept) -> Poly:
        """``slope*x + intercept``."""
        return cls([intercept, slope])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly([{', '.join(rat_str(c) for c in self.coeffs)}])"

    def __str__(self):
        return self.pretty()

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = rat_str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{rat_str(mag)}*{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append((" - " if c < 0 else " + ") + body)
        return "".join(terms)

    # arithmetic

    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def scale(self, c) -> Poly:
        c = as_rat(c)
        return Poly(a * c for a in self.coeffs)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(1 / self.lead)

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def antiderivative(self) -> Poly:
        """Antiderivative with zero constant term."""
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def compose(self, inner: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, h) -> Poly:
        """Return ``p(x + h)``."""
        return self.compose(Poly([h, 1]))

    def integrate(self, a, b) -> Fraction:
        """Exact definite integral over rational endpoints."""
        F = self.antiderivative()
        return F(as_rat(b)) - F(as_rat(a))

    def content_normal(self) -> tuple[int, ...]:
        """Primitive integer coefficients with positive leading term."""
        if not self.coeffs:
            return ()
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return tuple(ints)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree(p: Poly) -> Poly:
    """Square-free part, made monic."""
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def _sign_changes(values: Sequence) -> int:
    signs = [sign(v) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo, hi, seq: list[Poly] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open ``(lo, hi]``."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    seq = seq if seq is not None else sturm_sequence(p)
    return _sign_changes([q(lo) for q in seq]) - _sign_changes([q(hi) for q in seq])


def cauchy_bound(p: Poly) -> Fraction:
    """All real roots lie in ``[-B, B]``."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.lead)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])
