"""Independent check by lattice-point counting on smooth complete toric surfaces.

Sections of a torus-invariant divisor ``sum a_i D_i`` correspond to lattice
points ``m`` with ``<m, v_i> >= -floor(a_i)`` for every ray ``v_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from .exactnum import as_rat
from .exactnum.linalg import solve


class ToricError(ValueError):
    pass


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class ToricSurface:
    """Smooth complete fan in the plane; rays given counterclockwise."""

    rays: tuple[tuple[int, int], ...]

    def __post_init__(self):
        rays = tuple((int(a), int(b)) for a, b in self.rays)
        object.__setattr__(self, "rays", rays)
        k = len(rays)
        if k < 3:
            raise ToricError("a complete fan needs at least three rays")
        total = 0.0
        from math import atan2, gcd, pi

        for v in rays:
            if gcd(abs(v[0]), abs(v[1])) != 1:
                raise ToricError(f"ray {v} is not primitive")
        for i in range(k):
            u, v = rays[i], rays[(i + 1) % k]
            if _cross(u, v) != 1:
                raise ToricError(f"cone ({u}, {v}) is not unimodular and counterclockwise")
            ang = atan2(v[1], v[0]) - atan2(u[1], u[0])
            total += ang % (2 * pi)
        if abs(total - 2 * pi) > 1e-9:
            raise ToricError("rays do not wind once around the origin (fan not complete)")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def self_intersection(self, i: int) -> int:
        k = self.n_rays
        prev, nxt, v = self.rays[i - 1], self.rays[(i + 1) % k], self.rays[i]
        s = (prev[0] + nxt[0], prev[1] + nxt[1])
        # prev + next = a * v
        a = s[0] // v[0] if v[0] else s[1] // v[1]
        if (a * v[0], a * v[1]) != s:
            raise ToricError("neighbouring rays violate the smooth surface relation")
        return -a

    def intersection_matrix(self) -> list[list[int]]:
        k = self.n_rays
        M = [[0] * k for _ in range(k)]
        for i in range(k):
            M[i][i] = self.self_intersection(i)
            j = (i + 1) % k
            M[i][j] = M[j][i] = 1
        return M

    def canonical(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(-1) for _ in self.rays)

    def intersect(self, a: Sequence, b: Sequence) -> Fraction:
        M = self.intersection_matrix()
        return sum((as_rat(a[i]) * M[i][j] * as_rat(b[j]) for i in range(self.n_rays) for j in range(self.n_rays)),
                   Fraction(0))

    def is_nef(self, a: Sequence) -> bool:
        k = self.n_rays
        return all(self.intersect(a, [1 if j == i else 0 for j in range(k)]) >= 0 for i in range(k))


def _polygon_box(rays, rhs):
    """Bounding box of ``{m : <m, v_i> >= rhs_i}`` or None if empty."""
    pts = []
    k = len(rays)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = rays[i], rays[j]
            if _cross(a, b) == 0:
                continue
            m = solve([a, b], [[rhs[i], rhs[j]]])[0]
            if all(m[0] * v[0] + m[1] * v[1] >= c for v, c in zip(rays, rhs)):
                pts.append(m)
    if not pts:
        return None
    xs = [p[0] for p in pts]
    return floor(min(xs)), ceil(max(xs))


def count_sections(T: ToricSurface, A: Sequence) -> int:
    """h^0 of the round-down of the torus-invariant Q-divisor ``A``."""
    if len(A) != T.n_rays:
        raise ToricError("one coefficient per ray")
    rhs = [-floor(as_rat(a)) for a in A]
    box = _polygon_box(T.rays, rhs)
    if box is None:
        return 0
    count = 0
    for x in range(box[0], box[1] + 1):
        lo, hi = None, None
        ok = True
        for (vx, vy), c in zip(T.rays, rhs):
            rest = c - vx * x  # need vy * y >= rest
            if vy > 0:
                b = -((-rest) // vy)
                lo = b if lo is None else max(lo, b)
            elif vy < 0:
                b = rest // vy
                hi = b if hi is None else min(hi, b)
            elif rest > 0:
                ok = False
                break
        if not ok:
            continue
        if lo is None or hi is None:
            raise ToricError("unbounded section polytope; is the fan complete?")
        if hi >= lo:
            count += hi - lo + 1
    return count


@dataclass(frozen=True)
class WeightTable:
    k: int
    h0_by_j: tuple[int, ...]
    v_k: int
    w_k: int


def weight_table(T: ToricSurface, L_beta: Sequence, D: Sequence, r_tau_beta, k: int) -> WeightTable:
    """Section counts ``h0(k L_beta - j D)`` for ``j = 0 .. floor(k r tau_beta)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    r_tau_beta = as_rat(r_tau_beta)
    if k == 0:
        return WeightTable(0, (1,), 0, 0)
    kL = [k * as_rat(a) for a in L_beta]
    if any(c.denominator != 1 for c in kL):
        raise ToricError(f"k * L_beta is not integral at k = {k}")
    top = floor(k * r_tau_beta)
    D = [as_rat(d) for d in D]
    h0 = tuple(count_sections(T, [a - j * d for a, d in zip(kL, D)]) for j in range(top + 1))
    v = sum(h0[1:])
    return WeightTable(k, h0, v, -top * h0[0] + v)


def fit_leading_coeffs(tables: Sequence[WeightTable], n: int = 2, modulus: int = 1) -> tuple[Fraction, Fraction]:
    """Exact least-squares fit of ``v(k)`` by a degree ``n+1`` polynomial in ``k``.

    Only tables with ``k`` congruent to the largest ``k`` modulo ``modulus``
    are used. Returns the coefficients of ``k^(n+1)`` and ``k^n``.
    """
    if not tables:
        raise ValueError("insufficient data: no tables")
    kmax = max(t.k for t in tables)
    use = sorted({t.k: t for t in tables if t.k > 0 and (kmax - t.k) % modulus == 0}.values(), key=lambda t: t.k)
    deg = n + 1
    if len(use) < deg + 1:
        raise ValueError(f"insufficient data: need {deg + 1} tables in one residue class, got {len(use)}")
    if kmax < 20:
        raise ValueError("insufficient data: largest k must be at least 20")
    # normal equations for coefficients c_0..c_deg
    m = deg + 1
    G = [[sum(Fraction(t.k) ** (a + b) for t in use) for b in range(m)] for a in range(m)]
    rhs = [sum(Fraction(t.k) ** a * t.v_k for t in use) for a in range(m)]
    c = solve(G, [rhs])[0]
    return c[deg], c[deg - 1]


# --- the blow-up of F_1 as a toric surface -----------------------------------

BLOWUP_F1_RAYS = ((1, 0), (0, 1), (-1, 1), (0, -1), (1, -1))
# ray divisors expressed in the basis (pullback C, pullback f, E) of surfaces.blowup_f1
BLOWUP_F1_TO_LATTICE = (
    (0, 1, -1),   # (1,0): strict transform of the fibre through p
    (1, -1, 0),   # (0,1): negative section
    (0, 1, 0),    # (-1,1): a fibre
    (1, 0, -1),   # (0,-1): strict transform of C, the boundary D
    (0, 0, 1),    # (1,-1): exceptional curve E
)
BLOWUP_F1_BOUNDARY_RAY = 3


def blowup_f1_toric() -> ToricSurface:
    return ToricSurface(BLOWUP_F1_RAYS)


def projective_plane_toric() -> ToricSurface:
    return ToricSurface(((1, 0), (0, 1), (-1, -1)))


def log_divisor(T: ToricSurface, boundary: Sequence, beta, r: int) -> tuple[Fraction, ...]:
    """``r(-K - (1-beta)D)`` as ray coefficients."""
    beta = as_rat(beta)
    return tuple(r * (1 - (1 - beta) * as_rat(d)) for d in boundary)
