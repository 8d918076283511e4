"""Real algebraic numbers given by a defining polynomial and an isolating interval.

Only what the volume/threshold computations need is supported: exact
comparison, sign, evaluation of rational polynomials at algebraic points, and
ring operations between a small number of algebraic numbers (done by finding
an annihilating polynomial in the tensor product of the generators' quotient
rings, then re-isolating the result by interval arithmetic).
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from itertools import product
from typing import Iterable, Sequence

from .poly import Poly, cauchy_bound, count_roots, sturm_sequence, squarefree
from .rational import as_rat, rat_str, sign


def _minimal_factor(p: Poly, lo: Fraction, hi: Fraction) -> Poly:
    """Irreducible factor of ``p`` owning the unique root of ``p`` in (lo, hi)."""
    if p.degree <= 2:
        # a reducible quadratic has rational roots; caught by the caller's root test
        return p
    import sympy

    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")
    _, factors = sp.factor_list()
    for f, _mult in factors:
        q = Poly(Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs()))
        if count_roots(q, lo, hi) == 1:
            return q.monic()
    raise ArithmeticError("no factor isolates the root; interval was not isolating")


def _rational_root_of_quadratic(p: Poly) -> list[Fraction]:
    if p.degree != 2:
        return []
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    num, den = disc.numerator, disc.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        return []
    root = Fraction(rn, rd)
    return [(-b - root) / (2 * a), (-b + root) / (2 * a)]


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


@total_ordering
class AlgReal:
    """A real algebraic number.

    Rational values are stored with ``lo == hi`` and defining polynomial
    ``x - value``. Irrational values carry a monic irreducible polynomial with
    exactly one root in the open interval ``(lo, hi)`` and opposite signs at
    the endpoints.
    """

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly: Poly, lo, hi):
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "lo", as_rat(lo))
        object.__setattr__(self, "hi", as_rat(hi))

    def __setattr__(self, name, value):
        raise AttributeError("AlgReal is immutable")

    # construction

    @classmethod
    def rational(cls, q) -> AlgReal:
        q = as_rat(q)
        return cls(Poly([-q, 1]), q, q)

    @classmethod
    def from_root(cls, p: Poly, lo, hi) -> AlgReal:
        """Root of ``p`` that is the only one in the half-open ``(lo, hi]``."""
        lo, hi = as_rat(lo), as_rat(hi)
        p = squarefree(p)
        if p.degree < 1:
            raise ValueError("constant polynomial has no root")
        if lo == hi:
            if p(lo) != 0:
                raise ValueError("degenerate interval does not contain a root")
            return cls.rational(lo)
        seq = sturm_sequence(p)
        if count_roots(p, lo, hi, seq) != 1:
            raise ValueError("interval does not isolate exactly one root")
        if p(hi) == 0:
            return cls.rational(hi)
        while p(lo) == 0:
            mid = (lo + hi) / 2
            if p(mid) == 0:
                return cls.rational(mid)
            if count_roots(p, mid, hi, seq) == 1:
                lo = mid
            else:
                hi = mid
        if p.degree == 1:
            return cls.rational(-p.coeffs[0] / p.coeffs[1])
        for r in _rational_root_of_quadratic(p):
            if lo < r < hi:
                return cls.rational(r)
        q = _minimal_factor(p, lo, hi)
        if q.degree == 1:
            return cls.rational(-q.coeffs[0] / q.coeffs[1])
        return cls(q.monic(), lo, hi)

    # basic queries

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return self.lo

    def refined(self, width=Fraction(1, 2**40)) -> AlgReal:
        """Same number with an isolating interval no wider than ``width``."""
        if self.is_rational:
            return self
        p, lo, hi = self.poly, self.lo, self.hi
        width = as_rat(width)
        s_lo = sign(p(lo))
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = p(mid)
            if v == 0:
                return AlgReal.rational(mid)
            if sign(v) == s_lo:
                lo = mid
            else:
                hi = mid
        return AlgReal(p, lo, hi)

    def _bisect_once(self) -> AlgReal:
        return self.refined((self.hi - self.lo) / 2)

    def cmp_rat(self, q) -> int:
        q = as_rat(q)
        a = self
        while True:
            if a.is_rational:
                return sign(a.lo - q)
            if q <= a.lo:
                return 1
            if q >= a.hi:
                return -1
            if a.poly(q) == 0:
                return 0
            a = a._bisect_once()

    def sign(self) -> int:
        return self.cmp_rat(0)

    def __float__(self):
        if self.is_rational:
            return float(self.lo)
        a = self.refined(Fraction(1, 2**60))
        return float((a.lo + a.hi) / 2)

    def decimal_hint(self, digits: int = 12) -> str:
        if self.is_rational:
            v = self.lo
        else:
            a = self.refined(Fraction(1, 10 ** (digits + 4)))
            v = (a.lo + a.hi) / 2
        return f"{float(v):.{digits}g}"

    # comparison

    def compare(self, other) -> int:
        if not isinstance(other, AlgReal):
            return self.cmp_rat(other)
        if other.is_rational:
            return self.cmp_rat(other.lo)
        if self.is_rational:
            return -other.cmp_rat(self.lo)
        if self.poly == other.poly:
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if lo < hi and count_roots(self.poly, lo, hi) == 1:
                return 0
        a, b = self, other
        while True:
            if a.hi <= b.lo:
                return -1
            if b.hi <= a.lo:
                return 1
            if a.poly == b.poly:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if lo < hi and count_roots(a.poly, lo, hi) == 1:
                    return 0
            a, b = a._bisect_once(), b._bisect_once()
            if a.is_rational or b.is_rational:
                return a.compare(b)

    def __eq__(self, other):
        if isinstance(other, (AlgReal, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (AlgReal, int, Fraction)):
            return self.compare(other) < 0
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.lo)
        return hash(self.poly)

    def __repr__(self):
        if self.is_rational:
            return f"AlgReal({rat_str(self.lo)})"
        return f"AlgReal(root of {self.poly.pretty()} in ({rat_str(self.lo)}, {rat_str(self.hi)}))"

    def __str__(self):
        if self.is_rational:
            return rat_str(self.lo)
        return f"root of {self.poly.pretty()} in [{rat_str(self.lo)}, {rat_str(self.hi)}] ~ {self.decimal_hint()}"

    # arithmetic

    def __add__(self, other):
        return combine([self, to_alg(other)], {(1, 0): 1, (0, 1): 1})

    __radd__ = __add__

    def __sub__(self, other):
        return combine([self, to_alg(other)], {(1, 0): 1, (0, 1): -1})

    def __rsub__(self, other):
        return combine([to_alg(other), self], {(1, 0): 1, (0, 1): -1})

    def __neg__(self):
        if self.is_rational:
            return AlgReal.rational(-self.lo)
        p = Poly((-c if k % 2 else c) for k, c in enumerate(self.poly.coeffs))
        return AlgReal(p.monic(), -self.hi, -self.lo)

    def __mul__(self, other):
        return combine([self, to_alg(other)], {(1, 1): 1})

    __rmul__ = __mul__


_RESULT_WIDTH = Fraction(1, 2**20)


def to_alg(v) -> AlgReal:
    if isinstance(v, AlgReal):
        return v
    return AlgReal.rational(v)


def min_alg(a: AlgReal, b: AlgReal) -> AlgReal:
    return a if a <= b else b


# --- multivariate evaluation -------------------------------------------------

def _iv_mul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def _iv_pow(a, k):
    out = (Fraction(1), Fraction(1))
    for _ in range(k):
        out = _iv_mul(out, a)
    return out


def _enclose(terms, boxes):
    lo = hi = Fraction(0)
    for exps, c in terms.items():
        iv = (Fraction(1), Fraction(1))
        for e, box in zip(exps, boxes):
            if e:
                iv = _iv_mul(iv, _iv_pow(box, e))
        iv = _iv_mul(iv, (c, c))
        lo += iv[0]
        hi += iv[1]
    return lo, hi


def _annihilator(gens: Sequence[AlgReal], terms) -> Poly:
    """Nonzero polynomial vanishing at the combination, via linear dependence
    of its powers in Q[x_1..x_m]/(q_1,...,q_m)."""
    degs = [g.poly.degree for g in gens]
    # x_i^e reduced modulo q_i, for e up to 2*(d_i - 1)
    red = []
    for g, d in zip(gens, degs):
        table = []
        for e in range(2 * d - 1):
            table.append((Poly.x() ** e) % g.poly)
        red.append(table)
    basis = list(product(*[range(d) for d in degs]))
    index = {b: i for i, b in enumerate(basis)}

    def mul(u: dict, v: dict) -> dict:
        out: dict = {}
        for eu, cu in u.items():
            for ev, cv in v.items():
                c = cu * cv
                factors = [red[i][eu[i] + ev[i]].coeffs for i in range(len(degs))]
                for idx in product(*[range(len(f)) for f in factors]):
                    coef = c
                    for f, k in zip(factors, idx):
                        coef *= f[k]
                    if coef:
                        out[idx] = out.get(idx, 0) + coef
        return {k: v for k, v in out.items() if v != 0}

    gamma: dict = {}
    for exps, c in terms.items():
        piece = {tuple(0 for _ in degs): Fraction(c)}
        for i, e in enumerate(exps):
            for _ in range(e):
                piece = mul(piece, {tuple(1 if j == i else 0 for j in range(len(degs))): Fraction(1)})
        for k, v in piece.items():
            gamma[k] = gamma.get(k, 0) + v
    gamma = {k: v for k, v in gamma.items() if v != 0}

    # incremental row-echelon over the power vectors, tracking combinations
    rows: list[tuple[list, list]] = []  # (vector, coefficients over powers)
    pivots: list[int] = []
    power = {tuple(0 for _ in degs): Fraction(1)}
    n = len(basis)
    for k in range(n + 1):
        vec = [Fraction(0)] * n
        for e, c in power.items():
            vec[index[e]] = c
        comb = [Fraction(0)] * (n + 1)
        comb[k] = Fraction(1)
        for (rvec, rcomb), piv in zip(rows, pivots):
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, rvec)]
                comb = [a - f * b for a, b in zip(comb, rcomb)]
        piv = next((i for i, v in enumerate(vec) if v != 0), None)
        if piv is None:
            return Poly(comb[: k + 1])
        f = vec[piv]
        rows.append(([v / f for v in vec], [c / f for c in comb]))
        pivots.append(piv)
        power = mul(power, gamma) if gamma else {}
    raise ArithmeticError("no linear dependence found")  # unreachable: n+1 vectors in Q^n


def combine(gens: Sequence[AlgReal], terms: dict) -> AlgReal:
    """Evaluate ``sum c * prod gens[i]**e_i`` exactly.

    ``terms`` maps exponent tuples (one entry per generator) to rational
    coefficients.
    """
    gens = [to_alg(g) for g in gens]
    terms = {tuple(e): as_rat(c) for e, c in terms.items() if as_rat(c) != 0}
    # substitute rational generators
    rational = [g.lo if g.is_rational else None for g in gens]
    if any(r is not None for r in rational):
        keep = [i for i, r in enumerate(rational) if r is None]
        new_terms: dict = {}
        for exps, c in terms.items():
            for i, r in enumerate(rational):
                if r is not None:
                    c = c * r ** exps[i]
            key = tuple(exps[i] for i in keep)
            new_terms[key] = new_terms.get(key, 0) + c
        gens = [gens[i] for i in keep]
        terms = {k: v for k, v in new_terms.items() if v != 0}
    # merge equal generators
    merged: list[AlgReal] = []
    where: list[int] = []
    for g in gens:
        for j, h in enumerate(merged):
            if g.poly == h.poly and g == h:
                where.append(j)
                break
        else:
            where.append(len(merged))
            merged.append(g)
    if len(merged) < len(gens):
        new_terms = {}
        for exps, c in terms.items():
            key = [0] * len(merged)
            for i, e in enumerate(exps):
                key[where[i]] += e
            key = tuple(key)
            new_terms[key] = new_terms.get(key, 0) + c
        gens = merged
        terms = {k: v for k, v in new_terms.items() if v != 0}
    if not terms:
        return AlgReal.rational(0)
    if not gens:
        return AlgReal.rational(sum(terms.values(), Fraction(0)))
    if len(gens) == 1 and set(terms) <= {(0,), (1,)}:
        a, b = terms.get((1,), Fraction(0)), terms.get((0,), Fraction(0))
        return _affine(gens[0], a, b)

    ann = squarefree(_annihilator(gens, terms))
    seq = sturm_sequence(ann)
    boxes = list(gens)
    while True:
        lo, hi = _enclose(terms, [(g.lo, g.hi) for g in boxes])
        if lo == hi:
            return AlgReal.rational(lo)
        inside = count_roots(ann, lo, hi, seq) + (1 if ann(lo) == 0 else 0)
        if inside == 1:
            if ann(lo) == 0:
                return AlgReal.rational(lo)
            return AlgReal.from_root(ann, lo, hi).refined(_RESULT_WIDTH)
        boxes = [g._bisect_once() for g in boxes]


def _affine(g: AlgReal, a: Fraction, b: Fraction) -> AlgReal:
    """``a*g + b`` without going through the annihilator search."""
    if a == 0:
        return AlgReal.rational(b)
    # root of p(x) -> root of p((y - b)/a)
    p = g.poly.compose(Poly([-b / a, 1 / a])).monic()
    ends = sorted([a * g.lo + b, a * g.hi + b])
    return AlgReal(p, ends[0], ends[1])


def poly_at(p: Poly, x) -> AlgReal:
    """Exact ``p(x)`` for an algebraic ``x``."""
    x = to_alg(x)
    if x.is_rational:
        return AlgReal.rational(p(x.lo))
    return combine([x], {(k,): c for k, c in enumerate(p.coeffs)})


def isolate_roots(p: Poly, lo=None, hi=None) -> list[AlgReal]:
    """Distinct real roots of ``p`` in the closed interval ``[lo, hi]``.

    Missing bounds default to a Cauchy bound. Roots come back sorted.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    q = squarefree(p)
    if q.degree < 1:
        return []
    bound = cauchy_bound(q)
    lo = -bound if lo is None else as_rat(lo)
    hi = bound if hi is None else as_rat(hi)
    if lo > hi:
        return []
    seq = sturm_sequence(q)
    roots: list[AlgReal] = []
    if q(lo) == 0:
        roots.append(AlgReal.rational(lo))
    stack = [(lo, hi)]
    found = []
    while stack:
        a, b = stack.pop()
        n = count_roots(q, a, b, seq)
        if n == 0:
            continue
        if n == 1:
            found.append(AlgReal.from_root(q, a, b))
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    roots.extend(found)
    roots.sort()
    return roots


def sum_of_values(pairs: Iterable[tuple[Poly, AlgReal]]) -> AlgReal:
    """Exact ``sum p_j(x_j)`` with a single annihilator computation."""
    gens: list[AlgReal] = []
    slots: list[int] = []
    const = Fraction(0)
    polys = []
    for p, x in pairs:
        x = to_alg(x)
        if x.is_rational:
            const += p(x.lo)
            continue
        for j, g in enumerate(gens):
            if g.poly == x.poly and g == x:
                slots.append(j)
                break
        else:
            slots.append(len(gens))
            gens.append(x)
        polys.append(p)
    if not gens:
        return AlgReal.rational(const)
    terms: dict = {}
    zero = (0,) * len(gens)
    terms[zero] = const
    for p, j in zip(polys, slots):
        for k, c in enumerate(p.coeffs):
            key = tuple(k if i == j else 0 for i in range(len(gens)))
            terms[key] = terms.get(key, 0) + c
    return combine(gens, terms)
