from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logfano.exactnum import Poly
from logfano.lattice import IntersectionLattice, SurfaceData
from logfano.stability import (
    AlgebraicWallError, Verdict, auto_r, certify_beta_grid, destabilizing_betas, df_invariant,
    eta, eta_beta_polynomial, eta_closed_form, eta_plus_polynomial, eta_split, eta_value,
    lemma_vol_check, lemma_vol_sides, local_eta_poly, verdict,
)
from logfano.surfaces import BUILTIN, blowup_f1, projective_plane
from logfano.zariski import GeographyBundle, ProfileError, Segment, build_profile, bundle_from_profile
from oracles import random_bundle, sympy_eta

betas = st.fractions(min_value=F(1, 40), max_value=1, max_denominator=40)


@pytest.fixture(scope="module")
def blf1():
    return build_profile(blowup_f1())


class TestEta:
    def test_one_half(self, blf1):
        r = eta(blf1, F(1, 2))
        assert r.value == F(-5, 6)
        assert r.verdict is Verdict.NOT_LOG_K_SEMISTABLE
        assert r.eta_plus == F(1, 2) and r.eta_minus == F(4, 3)

    def test_polynomial_in_beta(self, blf1):
        f = eta_beta_polynomial(blf1)
        assert [b.as_fraction() for b in f.breakpoints] == [0, 1]
        assert f.pieces == (Poly([F(-4, 3), 0, 2]),)

    def test_eta_plus(self, blf1):
        f = eta_plus_polynomial(blf1)
        assert f.pieces == (Poly([0, 0, 2]),)
        assert all(p(0) == 0 for p in f.pieces)

    @settings(max_examples=40)
    @given(betas)
    def test_matches_sympy_oracle(self, beta):
        P = build_profile(blowup_f1())
        assert eta_value(P, beta) == sympy_eta([[7, -4], [8, -6, 1]], [0, 1, 2], beta)
        assert eta_value(P, beta) == 2 * beta**2 - F(4, 3)

    @pytest.mark.parametrize("name", sorted(BUILTIN))
    def test_eta_plus_vanishes_at_zero(self, name):
        P = build_profile(BUILTIN[name]())
        f = eta_plus_polynomial(P)
        assert f(0) == 0
        plus, minus = eta_split(P, F(1, 2)) if F(1, 2) < P.tau else (None, None)
        if plus is not None:
            assert plus - minus == eta_value(P, F(1, 2))

    def test_local_poly(self, blf1):
        assert local_eta_poly(blf1, F(1, 3)) == Poly([F(-4, 3), 0, 2])

    def test_beta_out_of_range(self, blf1):
        with pytest.raises(ValueError):
            eta(blf1, F(3, 2))

    def test_not_big(self):
        P = build_profile(BUILTIN["cubic_hyperplane"]())
        with pytest.raises(ProfileError):
            eta(P, 0)

    def test_verdicts(self):
        assert verdict(F(-1)) is Verdict.NOT_LOG_K_SEMISTABLE
        assert verdict(F(0)) is Verdict.NOT_LOG_K_STABLE_SEMISTABILITY_UNDECIDED
        assert verdict(F(1, 7)) is Verdict.NECESSARY_CONDITION_PASSED_UNDECIDED


class TestClosedForm:
    def test_value(self):
        assert eta_closed_form(2, 3, 9 * F(1, 4), F(1, 2)) == F(-3, 4)
        assert eta_closed_form(2, 3, 1, F(1, 2)) == F(-1, 3)
        assert eta_closed_form(2, 3, F(25, 4), F(1, 2)) == F(-25, 12)

    @pytest.mark.parametrize("name,l", [("p2_line", 3), ("p2_conic", F(3, 2)),
                                        ("quadric_diagonal", 2), ("cubic_hyperplane", 1)])
    def test_proportional_boundary(self, name, l):
        S = BUILTIN[name]()
        P = build_profile(S)
        for k in range(1, 21):
            beta = F(k, 20)
            if not 1 - beta < P.tau:
                continue
            vol = S.lattice.square(S.divisor_ray(1 - beta))
            assert eta_value(P, beta) == eta_closed_form(2, l, vol, beta)

    def test_l_out_of_range(self):
        with pytest.raises(ValueError):
            eta_closed_form(2, 4, 1, F(1, 2))


class TestDestabilizing:
    def test_example_interval(self, blf1):
        (iv,) = destabilizing_betas(blf1)
        assert iv.lo == 0 and not iv.lo_closed and not iv.hi_closed
        assert iv.hi.poly == Poly([F(-2, 3), 0, 1])
        assert iv.hi.hi - iv.hi.lo <= F(1, 10**4)
        assert iv.contains(F(4, 5)) and not iv.contains(F(41, 50))

    @pytest.mark.parametrize("name,end", [("p2_line", 1), ("p2_conic", F(1, 4)),
                                          ("quadric_diagonal", F(1, 2))])
    def test_proportional_cases(self, name, end):
        (iv,) = destabilizing_betas(build_profile(BUILTIN[name]()))
        assert iv.lo == 0 and iv.hi == end

    def test_cubic_never_destabilized(self):
        assert destabilizing_betas(build_profile(BUILTIN["cubic_hyperplane"]())) == []

    def test_irrational_threshold_falls_back_to_grid(self):
        L = IntersectionLattice(("A", "B"), ((1, 0), (0, -2)))
        P = build_profile(SurfaceData(L, (-3, -1), (1, 1)))
        with pytest.raises(AlgebraicWallError):
            destabilizing_betas(P)
        grid = certify_beta_grid(P, [F(k, 10) for k in range(11)])
        tau = -1 + 2 * 2**0.5
        for b, s in grid:
            t0 = 1 - float(b)
            approx = float(b) * (7 - 2 * t0 - t0**2) - ((7 * tau - tau**2 - tau**3 / 3)
                                                         - (7 * t0 - t0**2 - t0**3 / 3))
            if abs(approx) > 1e-9:
                assert s == (1 if approx > 0 else -1)


class TestDF:
    def test_example_coefficients(self, blf1):
        B = bundle_from_profile(blf1, F(1, 2))
        d = df_invariant(B, F(1, 2), 2, blowup_f1())
        assert (d.a0, d.a1, d.a0_tilde) == (10, 6, 4)
        assert (d.b0, d.b1, d.b0_tilde) == (F(-50, 3), F(-21, 2), -12)
        assert (d.v0, d.v1) == (F(40, 3), F(15, 2))
        assert d.df_value == F(-50, 3)
        assert d.proportionality_checked and d.df_value == 20 * d.eta

    def test_projective_plane(self):
        S = projective_plane(1)
        P = build_profile(S)
        B = bundle_from_profile(P, F(1, 2))
        d = df_invariant(B, F(1, 2), 2, S)
        # 4 * (25/4 * 4) / 4 * eta, eta = 2/3 * 25/4 * (1/2 - 1)
        assert d.eta == F(-25, 12)
        assert d.proportionality_checked
        assert d.df_value == d.proportionality_factor * d.eta

    @settings(max_examples=25)
    @given(betas.filter(lambda b: b < 1), st.integers(1, 6))
    def test_sign_independent_of_r(self, beta, r):
        P = build_profile(blowup_f1())
        B = bundle_from_profile(P, beta)
        d1 = df_invariant(B, beta, r)
        d2 = df_invariant(B, beta, 2 * r)
        assert d1.proportionality_checked and d2.proportionality_checked
        assert (d1.df_value > 0) == (d2.df_value > 0) and (d1.df_value == 0) == (d2.df_value == 0)

    def test_bundle_without_kappa(self):
        B = GeographyBundle(2, (Segment(F(0), F(1), Poly([2, -2]), Poly([1]), None),))
        with pytest.raises(ValueError, match="kappa"):
            df_invariant(B, F(1, 2), 2)

    def test_lattice_mismatch_detected(self, blf1):
        B = bundle_from_profile(blf1, F(1, 2))
        with pytest.raises(ArithmeticError):
            df_invariant(B, F(1, 2), 2, projective_plane(1))

    def test_auto_r(self):
        assert auto_r(blowup_f1(), F(1, 2)) == 2
        assert auto_r(blowup_f1(), F(1, 3)) == 3
        assert auto_r(projective_plane(1), 1) == 1


class TestIntegrationByParts:
    @pytest.mark.parametrize("name", sorted(BUILTIN))
    def test_builtin_profiles(self, name):
        P = build_profile(BUILTIN[name]())
        for k in range(1, 11):
            beta = F(k, 10)
            if 1 - beta < P.tau:
                assert lemma_vol_check(bundle_from_profile(P, beta), beta)

    def test_random_bundles(self):
        rng = random.Random(11)
        for _ in range(50):
            B = random_bundle(rng)
            beta = F(rng.randint(0, 20), 20)
            lhs, rhs = lemma_vol_sides(B, beta)
            assert lhs == rhs

    def test_corrupted_derivative_fails(self, blf1):
        beta = F(1, 2)
        B = bundle_from_profile(blf1, beta)
        bad = GeographyBundle(2, tuple(Segment(s.lo, s.hi, s.vol, s.s + Poly([1]), s.kappa)
                                       for s in B.segments), B.shift)
        assert lemma_vol_check(B, beta)
        assert not lemma_vol_check(bad, beta)
