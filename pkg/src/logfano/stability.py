"""The destabilizing invariant eta_beta(D), Donaldson-Futaki coefficients and verdicts.

For a volume profile ``V(t) = vol(-K_X - tD)`` with pseudoeffective threshold
``tau``::

    eta_beta = beta * V(1 - beta) - int_{1-beta}^{tau} V(t) dt

split at ``t = min(1, tau)`` into ``eta_plus(beta) - eta_minus``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .exactnum import AlgReal, PiecewisePoly, Poly, isolate_roots, poly_at, sum_of_values, to_alg
from .exactnum.algreal import min_alg
from .lattice import SurfaceData
from .zariski import GeographyBundle, ProfileError, VolumeProfile, bundle_from_profile

R_CAVEAT = (
    "DF values describe the basic log semi test configuration only if r satisfies the "
    "finite generation condition on the section ring; this is not verified. "
    "Sign verdicts do not depend on r."
)


class AlgebraicWallError(ArithmeticError):
    """Symbolic eta in beta needs rational chamber walls and threshold."""


class Verdict(str, enum.Enum):
    NOT_LOG_K_SEMISTABLE = "NOT_LOG_K_SEMISTABLE"
    NOT_LOG_K_STABLE_SEMISTABILITY_UNDECIDED = "NOT_LOG_K_STABLE_SEMISTABILITY_UNDECIDED"
    NECESSARY_CONDITION_PASSED_UNDECIDED = "NECESSARY_CONDITION_PASSED_UNDECIDED"


VERDICT_TEXT = {
    Verdict.NOT_LOG_K_SEMISTABLE:
        "eta < 0: the pair is not log K-semistable with this cone angle, hence admits no "
        "Kahler-Einstein edge metric with angle 2*pi*beta along D",
    Verdict.NOT_LOG_K_STABLE_SEMISTABILITY_UNDECIDED:
        "eta = 0: the pair is not log K-stable; log K-semistability is not decided",
    Verdict.NECESSARY_CONDITION_PASSED_UNDECIDED:
        "eta > 0: the necessary condition holds; no stability claim is made",
}


def _check_beta(beta) -> Fraction:
    beta = Fraction(beta)
    if not 0 <= beta <= 1:
        raise ValueError(f"beta = {beta} lies outside [0, 1]")
    return beta


@dataclass(frozen=True)
class EtaResult:
    beta: Fraction
    value: AlgReal
    eta_plus: AlgReal
    eta_minus: AlgReal
    sign: int
    verdict: Verdict
    local_poly: Optional[Poly] = None
    eta_as_poly_in_beta: Optional[PiecewisePoly] = None


def verdict(e) -> Verdict:
    s = e.sign if isinstance(e, EtaResult) else to_alg(e).sign()
    if s < 0:
        return Verdict.NOT_LOG_K_SEMISTABLE
    if s == 0:
        return Verdict.NOT_LOG_K_STABLE_SEMISTABILITY_UNDECIDED
    return Verdict.NECESSARY_CONDITION_PASSED_UNDECIDED


def eta_split(P: VolumeProfile, beta) -> tuple[AlgReal, AlgReal]:
    """``(eta_plus(beta), eta_minus)``."""
    beta = _check_beta(beta)
    t0 = 1 - beta
    if not t0 < P.tau:
        raise ProfileError(f"-K_X - (1-beta)D is not big at beta = {beta}")
    if t0 < P.start:
        raise ProfileError(f"profile data starts at t = {P.start}, after 1 - beta = {t0}")
    V = P.volume
    split = min_alg(AlgReal.rational(1), P.tau)
    i = P.chamber_index(t0)
    terms = [(V.pieces[i].scale(beta), AlgReal.rational(t0))]
    for j, p in enumerate(V.pieces):
        lo = max(AlgReal.rational(t0), V.breakpoints[j])
        hi = min(split, V.breakpoints[j + 1])
        if lo < hi:
            F = p.antiderivative()
            terms += [(-F, hi), (F, lo)]
    eta_plus = sum_of_values(terms)
    eta_minus = V.integrate(split, P.tau)
    return eta_plus, eta_minus


def eta(P: VolumeProfile, beta, symbolic: bool = True) -> EtaResult:
    beta = _check_beta(beta)
    plus, minus = eta_split(P, beta)
    value = plus - minus
    s = value.sign()
    local = sym = None
    if symbolic:
        try:
            local = local_eta_poly(P, beta)
        except AlgebraicWallError:
            local = None
        try:
            sym = eta_beta_polynomial(P)
        except AlgebraicWallError:
            sym = None
    return EtaResult(beta, value, plus, minus, s, verdict(value), local, sym)


def eta_value(P: VolumeProfile, beta) -> AlgReal:
    plus, minus = eta_split(P, beta)
    return plus - minus


# --- eta as a polynomial in beta --------------------------------------------


def _rat(a: AlgReal, what: str) -> Fraction:
    if not a.is_rational:
        raise AlgebraicWallError(f"{what} is irrational ({a}); symbolic eta needs rational walls")
    return a.as_fraction()


def _piece_in_beta(P: VolumeProfile, i: int, upper: Fraction) -> Poly:
    """``beta*V_i(1-beta) - int_{1-beta}^{upper} V`` for 1-beta in chamber ``i``."""
    V = P.volume
    one_minus = Poly([1, -1])
    top = min(_rat(V.breakpoints[i + 1], "chamber wall"), upper)
    F = V.pieces[i].antiderivative()
    tail = V.integrate(top, upper) if top < upper else AlgReal.rational(0)
    const = F(top) + _rat(tail, "volume integral")
    return Poly.x() * V.pieces[i].compose(one_minus) + F.compose(one_minus) - const


def _beta_pieces(P: VolumeProfile, upper) -> PiecewisePoly:
    upper = _rat(to_alg(upper), "threshold")
    t_lo = max(_rat(P.start, "profile start"), Fraction(0))
    t_hi = min(upper, Fraction(1))
    if not t_lo < t_hi:
        raise ProfileError("no beta in range has -K_X - (1-beta)D big")
    cuts = sorted({t_lo, t_hi} | {
        b for b in (_rat(x, "chamber wall") for x in P.chamber_breaks) if t_lo < b < t_hi
    })
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        i = P.chamber_index(a)
        pieces.append(_piece_in_beta(P, i, upper))
    beta_breaks = tuple(1 - c for c in reversed(cuts))
    return PiecewisePoly(beta_breaks, tuple(reversed(pieces)))


def eta_beta_polynomial(P: VolumeProfile) -> PiecewisePoly:
    """eta as an exact piecewise polynomial in beta over its admissible range."""
    return _beta_pieces(P, P.tau)


def eta_plus_polynomial(P: VolumeProfile) -> PiecewisePoly:
    return _beta_pieces(P, min_alg(AlgReal.rational(1), P.tau))


def local_eta_poly(P: VolumeProfile, beta) -> Poly:
    """The polynomial in beta that equals eta on the chamber containing ``1 - beta``
    (walls count with the chamber on their right in t)."""
    beta = _check_beta(beta)
    upper = _rat(P.tau, "threshold")
    return _piece_in_beta(P, P.chamber_index(1 - beta), upper)


def eta_closed_form(n: int, l, vol_at_beta, beta) -> Fraction:
    """eta for -K_X ~ l*D: n/(n+1) * vol(-K_X-(1-beta)D) * (beta - (l-1)/n)."""
    l, vol_at_beta, beta = Fraction(l), Fraction(vol_at_beta), Fraction(beta)
    if not 1 <= l <= n + 1:
        raise ValueError("l must lie in [1, n+1]")
    return Fraction(n, n + 1) * vol_at_beta * (beta - (l - 1) / n)


# --- destabilizing set ---------------------------------------------------------


@dataclass(frozen=True)
class BetaInterval:
    lo: AlgReal
    hi: AlgReal
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, beta) -> bool:
        b = to_alg(beta)
        left = b >= self.lo if self.lo_closed else b > self.lo
        right = b <= self.hi if self.hi_closed else b < self.hi
        return left and right

    def __str__(self):
        return ("[" if self.lo_closed else "(") + f"{self.lo}, {self.hi}" + ("]" if self.hi_closed else ")")


def rational_between(a: AlgReal, b: AlgReal) -> Fraction:
    """Some rational strictly between ``a < b``."""
    while True:
        if a.hi < b.lo:
            return (a.hi + b.lo) / 2
        a = a.refined((a.hi - a.lo) / 2) if not a.is_rational else a
        b = b.refined((b.hi - b.lo) / 2) if not b.is_rational else b


def destabilizing_betas(P: VolumeProfile, refine_to=Fraction(1, 10**4)) -> list[BetaInterval]:
    """``{beta in (0, 1] : eta_beta < 0}`` as a union of intervals.

    Raises :class:`AlgebraicWallError` when a wall or the threshold is
    irrational; use :func:`certify_beta_grid` then.
    """
    f = eta_beta_polynomial(P)
    crit: list[AlgReal] = list(f.breakpoints)
    for i, p in enumerate(f.pieces):
        if p.is_zero():
            raise ValueError("eta vanishes identically on a beta range")
        lo, hi = f.breakpoints[i].as_fraction(), f.breakpoints[i + 1].as_fraction()
        crit += isolate_roots(p, lo, hi)
    pts: list[AlgReal] = []
    for c in sorted(crit):
        if not pts or c != pts[-1]:
            pts.append(c)
    zero = AlgReal.rational(0)

    def neg_at(x) -> bool:
        return f(x).sign() < 0

    # (point, closed?) events in increasing order
    pieces: list[BetaInterval] = []
    for k, x in enumerate(pts):
        if x > zero and neg_at(x):
            pieces.append(BetaInterval(x, x, True, True))
        if k + 1 < len(pts):
            y = pts[k + 1]
            if neg_at(rational_between(x, y)):
                pieces.append(BetaInterval(x, y, False, False))
    merged: list[BetaInterval] = []
    for iv in pieces:
        if merged and merged[-1].hi == iv.lo and (merged[-1].hi_closed or iv.lo_closed):
            last = merged.pop()
            iv = BetaInterval(last.lo, iv.hi, last.lo_closed, iv.hi_closed)
        merged.append(iv)
    return [BetaInterval(iv.lo.refined(refine_to), iv.hi.refined(refine_to), iv.lo_closed, iv.hi_closed)
            for iv in merged]


def certify_beta_grid(P: VolumeProfile, betas: Sequence) -> list[tuple[Fraction, int]]:
    """Exact sign of eta at each grid point, skipping betas outside the big range."""
    out = []
    for b in betas:
        b = Fraction(b)
        try:
            out.append((b, eta_value(P, b).sign()))
        except ProfileError:
            continue
    return out


# --- Donaldson-Futaki ----------------------------------------------------------


@dataclass(frozen=True)
class DFReport:
    beta: Fraction
    r: int
    n: int
    tau_beta: Fraction
    a0: Fraction
    a1: Fraction
    a0_tilde: Fraction
    b0: Fraction
    b1: Fraction
    b0_tilde: Fraction
    v0: Fraction
    v1: Fraction
    df_value: Fraction
    eta: Fraction
    proportionality_factor: Fraction
    proportionality_checked: bool


def auto_r(S: SurfaceData, beta) -> int:
    """Smallest r >= 1 with r(-K_X - (1-beta)D) integral in the given basis."""
    from math import lcm

    M = S.divisor_ray(1 - Fraction(beta))
    r = 1
    for c in M:
        r = lcm(r, c.denominator)
    return r


def _bundle_at(B: GeographyBundle, beta: Fraction) -> GeographyBundle:
    if B.shift == 1 - beta:
        return B
    return bundle_from_profile(B.to_profile(), beta)


def df_invariant(B: GeographyBundle, beta, r: int, S: Optional[SurfaceData] = None) -> DFReport:
    """All coefficients of the basic log semi test configuration and DF_beta.

    ``B`` may be any bundle covering ``t = 1 - beta``; it is re-expressed at
    ``beta``. With surface data given, the intersection numbers at ``x = 0``
    are cross-checked against the lattice.
    """
    beta = _check_beta(beta)
    if r < 1:
        raise ValueError("r must be a positive integer")
    B = _bundle_at(B, beta)
    if not B.has_kappa:
        raise ValueError("the bundle carries no kappa data; v1 needs the (K_X + D) pairings")
    n = B.dimension_n
    seg0 = B.segments[0]
    if seg0.lo != 0:
        raise ValueError("bundle must start at x = 0")
    Ln_over = seg0.vol(0)              # (-K - (1-beta)D)^n
    LD_over = seg0.s(0)                # (-K - (1-beta)D)^{n-1} . D
    LK_over = Ln_over + (1 - beta) * LD_over   # (-K - (1-beta)D)^{n-1} . (-K)
    if S is not None:
        L = S.lattice
        M = S.divisor_ray(1 - beta)
        if n != 2 or L.square(M) != Ln_over or L.intersect(M, S.boundary) != LD_over \
                or L.intersect(M, S.anticanonical) != LK_over:
            raise ArithmeticError("bundle data disagrees with the lattice intersection numbers")
    tau_b = B.x_end
    nf, n1f = factorial(n), factorial(n - 1)
    a0 = Fraction(r**n) * Ln_over / nf
    a1 = Fraction(r ** (n - 1)) * LK_over / (2 * n1f)
    a0t = Fraction(r ** (n - 1)) * LD_over / n1f
    vol_int = sum((seg.vol.integrate(seg.lo, seg.hi) for seg in B.segments), Fraction(0))
    kap_int = sum((seg.kappa.integrate(seg.lo, seg.hi) for seg in B.segments), Fraction(0))
    v0 = Fraction(r ** (n + 1)) / nf * vol_int
    v1 = -Fraction(r**n) / (2 * n1f) * kap_int
    b0 = v0 - r * tau_b * a0
    b1 = v1 - r * tau_b * a1
    b0t = -r * tau_b * a0t
    df = 2 * (b0 * a1 - b1 * a0) + (1 - beta) * (a0 * b0t - b0 * a0t)
    df_display = 2 * (v0 * a1 - v1 * a0) + (1 - beta) * (a0 * b0t - (v0 - r * tau_b * a0) * a0t)
    if df != df_display:
        raise ArithmeticError("DF coefficient forms disagree")
    eta_b = beta * Ln_over - vol_int
    factor = Fraction(r**n) * (Fraction(r**n) * Ln_over) / (nf * nf)
    return DFReport(
        beta=beta, r=r, n=n, tau_beta=tau_b, a0=a0, a1=a1, a0_tilde=a0t,
        b0=b0, b1=b1, b0_tilde=b0t, v0=v0, v1=v1, df_value=df, eta=eta_b,
        proportionality_factor=factor, proportionality_checked=(df == factor * eta_b),
    )


def lemma_vol_check(B: GeographyBundle, beta) -> bool:
    """Integration-by-parts identity: the integral form of eta equals
    ``n * sum int (beta - x) s(x) dx`` over the segments."""
    beta = _check_beta(beta)
    B = _bundle_at(B, beta)
    lhs, rhs = lemma_vol_sides(B, beta)
    return lhs == rhs


def lemma_vol_sides(B: GeographyBundle, beta) -> tuple[Fraction, Fraction]:
    n = B.dimension_n
    integral_form = beta * B.segments[0].vol(0) - sum(
        (seg.vol.integrate(seg.lo, seg.hi) for seg in B.segments), Fraction(0))
    weight = Poly([beta, -1])
    derivative_form = n * sum(((weight * seg.s).integrate(seg.lo, seg.hi) for seg in B.segments), Fraction(0))
    return integral_form, derivative_form
