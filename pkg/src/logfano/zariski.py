"""Zariski decomposition on surfaces and the volume profile t -> vol(-K_X - tD).

The profile is built by walking the divisor ray upward. Inside a chamber the
negative part has a fixed support, so the positive part is affine in ``t`` and
the volume is a quadratic; walls are the parameters where a curve outside the
support starts pairing negatively with the positive part (or a support
coefficient would turn negative), and the walk stops where the volume
vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import AlgReal, PiecewisePoly, Poly, isolate_roots, to_alg
from .exactnum.linalg import SingularMatrixError, is_negative_definite, solve
from .lattice import DivisorClass, SurfaceData, is_nef_against


class ZariskiError(ArithmeticError):
    pass


class NotPseudoeffectiveError(ZariskiError):
    pass


class SingularSupportError(NotPseudoeffectiveError):
    """The collected support has a Gram matrix that is not negative definite.

    For a pseudoeffective class this cannot happen with a complete curve
    list, so it means either the class is not pseudoeffective or the curve
    data is wrong.
    """


class ProfileError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ZariskiResult:
    positive: DivisorClass
    negative: tuple[tuple[int, Fraction], ...]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in self.negative if c != 0)

    def negative_class(self, S: SurfaceData) -> DivisorClass:
        out = DivisorClass.zero(S.lattice.rank)
        for i, c in self.negative:
            out = out + S.negative_curves[i] * c
        return out


def _support_gram(S: SurfaceData, idx: Sequence[int]):
    L, curves = S.lattice, S.negative_curves
    return [[L.intersect(curves[i], curves[j]) for j in idx] for i in idx]


def _negative_coeffs(S: SurfaceData, A, idx: Sequence[int]) -> list[Fraction]:
    if not idx:
        return []
    G = _support_gram(S, idx)
    rhs = [S.lattice.intersect(A, S.negative_curves[i]) for i in idx]
    try:
        return solve(G, [rhs])[0]
    except SingularMatrixError as exc:
        raise SingularSupportError("support Gram matrix is singular") from exc


def zariski_decompose(S: SurfaceData, A: Sequence) -> ZariskiResult:
    """Zariski decomposition of ``A`` relative to the supplied curves.

    Raises :class:`NotPseudoeffectiveError` when ``A`` is not
    pseudoeffective (as far as the curve list and the reference ample class
    can tell).
    """
    L = S.lattice
    A = L.cls(A)
    curves = S.negative_curves
    support: list[int] = []
    P = A
    coeffs: list[Fraction] = []
    while True:
        bad = [i for i, C in enumerate(curves) if i not in support and L.intersect(P, C) < 0]
        if not bad:
            break
        support = sorted(support + bad)
        if not is_negative_definite(_support_gram(S, support)):
            raise SingularSupportError(
                "curves {" + ", ".join(S.curve_labels[i] for i in support) + "} do not have a negative definite Gram matrix"
            )
        coeffs = _negative_coeffs(S, A, support)
        P = A
        for i, c in zip(support, coeffs):
            P = P - curves[i] * c
    if any(c < 0 for c in coeffs):
        raise NotPseudoeffectiveError("negative part has a negative coefficient")
    if not is_nef_against(S, P):
        raise NotPseudoeffectiveError("positive part pairs negatively with a listed curve")
    if L.square(P) < 0 or L.intersect(P, S.reference_ample) < 0:
        raise NotPseudoeffectiveError("positive part lies outside the positive cone")
    return ZariskiResult(P, tuple(zip(support, coeffs)))


def volume_of(S: SurfaceData, A: Sequence) -> Fraction:
    try:
        z = zariski_decompose(S, A)
    except NotPseudoeffectiveError:
        return Fraction(0)
    return S.lattice.square(z.positive)


def zariski_axioms(S: SurfaceData, A: Sequence, z: ZariskiResult) -> dict[str, bool]:
    """The four defining conditions, each checked exactly."""
    L = S.lattice
    N = z.negative_class(S)
    supp = sorted(z.support)
    return {
        "decomposes": z.positive + N == L.cls(A),
        "positive_nef": is_nef_against(S, z.positive),
        "negative_effective": all(c >= 0 for _, c in z.negative),
        "orthogonal": all(L.intersect(z.positive, S.negative_curves[i]) == 0 for i in supp),
        "negative_definite": is_negative_definite(_support_gram(S, supp)) if supp else True,
    }


# --- profile -----------------------------------------------------------------


@dataclass(frozen=True)
class Chamber:
    lo: AlgReal
    hi: AlgReal
    contracted: frozenset[int]
    volume: Poly
    s: Poly
    kappa: Optional[Poly]


@dataclass(frozen=True)
class VolumeProfile:
    """``V(t) = vol(-K_X - tD)`` on ``[start, tau]`` with per-chamber data.

    ``derivative_data[i]`` is the pairing of the positive part with ``D`` and
    ``log_data[i]`` its pairing with ``K_X + D`` (absent when unknown).
    ``chamber_models`` holds the contracted-curve indices per chamber, or
    ``None`` for profiles not computed from surface data.
    """

    volume: PiecewisePoly
    tau: AlgReal
    chamber_breaks: tuple[AlgReal, ...]
    derivative_data: tuple[Poly, ...]
    log_data: Optional[tuple[Poly, ...]]
    chamber_models: Optional[tuple[frozenset, ...]] = None
    dimension_n: int = 2
    curve_labels: tuple[str, ...] = ()

    @property
    def start(self) -> AlgReal:
        return self.chamber_breaks[0]

    @property
    def n_chambers(self) -> int:
        return len(self.derivative_data)

    def chamber_index(self, t) -> int:
        """Chamber used at ``t``; walls belong to the chamber on their right."""
        return min(self.volume.piece_index(t), self.n_chambers - 1)

    def chambers(self) -> list[Chamber]:
        out = []
        for i in range(self.n_chambers):
            out.append(Chamber(
                self.chamber_breaks[i], self.chamber_breaks[i + 1],
                self.chamber_models[i] if self.chamber_models is not None else frozenset(),
                self.volume.pieces[i], self.derivative_data[i],
                self.log_data[i] if self.log_data is not None else None,
            ))
        return out


def _affine_positive_part(S: SurfaceData, support: Sequence[int]):
    """Positive part of -K - tD for fixed support, as P0 + t*P1, plus the
    negative coefficients as (x0, x1) pairs."""
    L = S.lattice
    curves = S.negative_curves
    mK, D = S.anticanonical, S.boundary
    if not support:
        return mK, -D, []
    G = _support_gram(S, support)
    r0 = [L.intersect(mK, curves[i]) for i in support]
    r1 = [-L.intersect(D, curves[i]) for i in support]
    try:
        x0, x1 = solve(G, [r0, r1])
    except SingularMatrixError as exc:
        raise SingularSupportError("support Gram matrix is singular") from exc
    P0, P1 = mK, -D
    for i, a, b in zip(support, x0, x1):
        P0 = P0 - curves[i] * a
        P1 = P1 - curves[i] * b
    return P0, P1, list(zip(x0, x1))


def _pairing_poly(L, P0, P1, X) -> Poly:
    return Poly([L.intersect(P0, X), L.intersect(P1, X)])


def build_profile(S: SurfaceData, max_wall_degree: int = 2) -> VolumeProfile:
    """Walk ``t`` from 0 to the pseudoeffective threshold, chamber by chamber."""
    L = S.lattice
    curves = S.negative_curves
    mK, D = S.anticanonical, S.boundary
    H = S.reference_ample
    if L.square(mK) <= 0 or any(L.intersect(mK, C) <= 0 for C in curves):
        raise ProfileError("non-pseudoeffective at t=0: -K_X is not ample against the supplied curves")
    if any(L.intersect(mK, C) < 0 for C in S.extra_curves):
        raise ProfileError("-K_X pairs negatively with a listed curve")

    t_lo: AlgReal = AlgReal.rational(0)
    breaks = [t_lo]
    vols, ss, ks, models = [], [], [], []
    support: list[int] = []
    KD = S.canonical + D
    for _guard in range(4 * len(curves) + 8):
        q = t_lo.as_fraction()
        # support just to the right of t_lo: start from the decomposition at t_lo,
        # then close under curves whose pairing is zero now and decreasing
        support = sorted(zariski_decompose(S, S.divisor_ray(q)).support)
        while True:
            if support and not is_negative_definite(_support_gram(S, support)):
                raise SingularSupportError("wall support is not negative definite")
            P0, P1, xs = _affine_positive_part(S, support)
            changed = False
            for i, C in enumerate(curves):
                if i in support:
                    continue
                pc = _pairing_poly(L, P0, P1, C)
                if pc(q) == 0 and pc.degree == 1 and pc.lead < 0:
                    support = sorted(support + [i])
                    changed = True
                    break
            if not changed:
                for i, (a, b) in zip(list(support), xs):
                    if a + b * q == 0 and b < 0:
                        support = [j for j in support if j != i]
                        changed = True
                        break
            if not changed:
                break
        # if enlarging the support is impossible the class stops being big here
        P0, P1, xs = _affine_positive_part(S, support)
        V = Poly([L.square(P0), 2 * L.intersect(P0, P1), L.square(P1)])
        if V(q) <= 0:
            break
        events: list[AlgReal] = []
        for i, C in enumerate(curves + S.extra_curves):
            if i < len(curves) and i in support:
                continue
            pc = _pairing_poly(L, P0, P1, C)
            if pc.degree == 1 and pc.lead < 0:
                events.append(AlgReal.rational(-pc.coeffs[0] / pc.coeffs[1]))
        for a, b in xs:
            if b < 0:
                events.append(AlgReal.rational(-a / b))
        h = _pairing_poly(L, P0, P1, H)
        if h.degree == 1 and h.lead < 0:
            events.append(AlgReal.rational(-h.coeffs[0] / h.coeffs[1]))
        vroots = [r for r in isolate_roots(V) if r > t_lo] if not V.is_zero() and V.degree >= 1 else []
        if vroots:
            if V.degree > max_wall_degree:
                raise ProfileError("irrational wall beyond supported degree")
            events.append(vroots[0])
        events = [e for e in events if e > t_lo]
        if not events:
            raise ProfileError("volume never vanishes along -K_X - tD; is D effective and nonzero?")
        t_hi = min(events)
        vols.append(V)
        ss.append(_pairing_poly(L, P0, P1, D))
        ks.append(_pairing_poly(L, P0, P1, KD))
        models.append(frozenset(support))
        breaks.append(t_hi)
        if poly_value_is_zero(V, t_hi) or not t_hi.is_rational:
            t_lo = t_hi
            break
        t_lo = t_hi
    else:
        raise ProfileError("chamber walk did not terminate")

    if not vols:
        raise ProfileError("non-pseudoeffective at t=0")
    tau = breaks[-1]
    vol = PiecewisePoly(tuple(breaks), tuple(vols), zero_beyond=True)
    return VolumeProfile(
        volume=vol, tau=tau, chamber_breaks=tuple(breaks),
        derivative_data=tuple(ss), log_data=tuple(ks), chamber_models=tuple(models),
        dimension_n=2, curve_labels=S.curve_labels,
    )


def poly_value_is_zero(p: Poly, x: AlgReal) -> bool:
    from .exactnum import poly_at

    return poly_at(p, x).sign() == 0


def thresholds(P: VolumeProfile, beta) -> tuple[AlgReal, AlgReal]:
    beta = Fraction(beta)
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    return P.tau, P.tau - (1 - beta)


# --- geography bundles -------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    lo: Fraction
    hi: Fraction
    vol: Poly
    s: Poly
    kappa: Optional[Poly] = None


@dataclass(frozen=True)
class GeographyBundle:
    """Per-chamber volume data in the variable ``x = t - shift``.

    Bundles produced from a profile at cone parameter ``beta`` use
    ``shift = 1 - beta`` and cover ``x in [0, tau_beta]``.
    """

    dimension_n: int
    segments: tuple[Segment, ...]
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "shift", Fraction(self.shift))
        if not segs:
            raise ValueError("a bundle needs at least one segment")
        for a, b in zip(segs, segs[1:]):
            if a.hi != b.lo:
                raise ValueError("segments must be contiguous")
            if a.vol(a.hi) != b.vol(b.lo):
                raise ValueError(f"volume jumps at x = {a.hi}")
        for seg in segs:
            if not seg.lo < seg.hi:
                raise ValueError("segments must be increasing")
            if seg.vol.degree > self.dimension_n:
                raise ValueError("volume polynomial degree exceeds the dimension")

    @property
    def has_kappa(self) -> bool:
        return all(seg.kappa is not None for seg in self.segments)

    @property
    def x_end(self) -> Fraction:
        return self.segments[-1].hi

    def to_profile(self) -> VolumeProfile:
        """Re-express in the unshifted variable ``t``."""
        h = self.shift
        segs = self.segments
        breaks = tuple(AlgReal.rational(seg.lo + h) for seg in segs) + (AlgReal.rational(segs[-1].hi + h),)
        vol = PiecewisePoly(breaks, tuple(seg.vol.shift(-h) for seg in segs), zero_beyond=True)
        kappa = tuple(seg.kappa.shift(-h) for seg in segs) if self.has_kappa else None
        return VolumeProfile(
            volume=vol, tau=breaks[-1], chamber_breaks=breaks,
            derivative_data=tuple(seg.s.shift(-h) for seg in segs),
            log_data=kappa, chamber_models=None, dimension_n=self.dimension_n,
        )


def bundle_from_profile(P: VolumeProfile, beta) -> GeographyBundle:
    """Segments in ``x = t - (1 - beta)`` over ``[0, tau_beta]``."""
    beta = Fraction(beta)
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    shift = 1 - beta
    if not P.tau.is_rational:
        raise ProfileError("bundles need a rational pseudoeffective threshold")
    if not shift < P.tau:
        raise ProfileError("-K_X - (1-beta)D is not big")
    if P.start > shift:
        raise ProfileError("profile does not reach down to t = 1 - beta")
    segs = []
    for ch in P.chambers():
        lo, hi = ch.lo.as_fraction(), ch.hi.as_fraction()
        if hi <= shift:
            continue
        lo = max(lo, shift)
        segs.append(Segment(
            lo - shift, hi - shift, ch.volume.shift(shift), ch.s.shift(shift),
            ch.kappa.shift(shift) if ch.kappa is not None else None,
        ))
    return GeographyBundle(P.dimension_n, tuple(segs), shift)
