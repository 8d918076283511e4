"""Piecewise polynomial functions on an interval partition with algebraic breakpoints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algreal import AlgReal, poly_at, sum_of_values, to_alg
from .poly import Poly


class DomainError(ValueError):
    pass


def poly_integrate(p: Poly, a, b) -> AlgReal:
    """Exact ``int_a^b p``; rational whenever both endpoints are."""
    a, b = to_alg(a), to_alg(b)
    if a > b:
        raise DomainError("integration bounds out of order")
    if p.is_zero() or a == b:
        return AlgReal.rational(0)
    F = p.antiderivative()
    return sum_of_values([(F, b), (-F, a)])


@dataclass(frozen=True)
class PiecewisePoly:
    """``pieces[i]`` is in force on ``[breakpoints[i], breakpoints[i+1]]``.

    With ``zero_beyond`` set the function is taken to vanish to the right of
    the last breakpoint (volume profiles); otherwise evaluation or integration
    there is a domain error.
    """

    breakpoints: tuple[AlgReal, ...]
    pieces: tuple[Poly, ...]
    zero_beyond: bool = False

    def __post_init__(self):
        bps = tuple(to_alg(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if len(self.pieces) != len(bps) - 1:
            raise ValueError("need exactly one piece per consecutive breakpoint pair")
        for lo, hi in zip(bps, bps[1:]):
            if not lo < hi:
                raise ValueError("breakpoints must be strictly increasing")

    @property
    def start(self) -> AlgReal:
        return self.breakpoints[0]

    @property
    def end(self) -> AlgReal:
        return self.breakpoints[-1]

    def piece_index(self, x) -> int:
        """Index of the piece used at ``x`` (right-continuous except at the end)."""
        x = to_alg(x)
        if x < self.start:
            raise DomainError(f"{x} lies left of the domain")
        if x > self.end:
            if self.zero_beyond:
                return len(self.pieces)
            raise DomainError(f"{x} lies right of the domain")
        for i in range(len(self.pieces) - 1, -1, -1):
            if x >= self.breakpoints[i]:
                return i
        return 0

    def __call__(self, x) -> AlgReal:
        i = self.piece_index(x)
        if i == len(self.pieces):
            return AlgReal.rational(0)
        return poly_at(self.pieces[i], x)

    def integrate(self, a, b) -> AlgReal:
        a, b = to_alg(a), to_alg(b)
        if a > b:
            raise DomainError("integration bounds out of order")
        if a < self.start:
            raise DomainError("lower bound lies left of the domain")
        if b > self.end and not self.zero_beyond:
            raise DomainError("upper bound lies right of the domain")
        terms = []
        for i, p in enumerate(self.pieces):
            lo = max(a, self.breakpoints[i])
            hi = min(b, self.breakpoints[i + 1])
            if lo < hi and not p.is_zero():
                F = p.antiderivative()
                terms.append((F, hi))
                terms.append((-F, lo))
        return sum_of_values(terms)

    def is_continuous(self) -> bool:
        for i in range(1, len(self.pieces)):
            jump = self.pieces[i] - self.pieces[i - 1]
            if poly_at(jump, self.breakpoints[i]).sign() != 0:
                return False
        return True

    def derivative(self) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(p.derivative() for p in self.pieces), self.zero_beyond)

    def shifted(self, h) -> PiecewisePoly:
        """The function ``x -> f(x + h)``, breakpoints moved by ``-h``; ``h`` rational."""
        h = to_alg(h).as_fraction()
        bps = tuple(b - h for b in self.breakpoints)
        return PiecewisePoly(bps, tuple(p.shift(h) for p in self.pieces), self.zero_beyond)


def piecewise_integrate(f: PiecewisePoly, a, b) -> AlgReal:
    return f.integrate(a, b)


def sign_of(v) -> int:
    """-1, 0 or 1."""
    return to_alg(v).sign()
