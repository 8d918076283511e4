from fractions import Fraction as F
import itertools
import random

import pytest

from logfano.stability import df_invariant
from logfano.surfaces import blowup_f1
from logfano.toric import (
    BLOWUP_F1_BOUNDARY_RAY, BLOWUP_F1_TO_LATTICE, ToricError, ToricSurface, blowup_f1_toric,
    count_sections, fit_leading_coeffs, log_divisor, projective_plane_toric, weight_table,
)
from logfano.zariski import build_profile, bundle_from_profile, volume_of


def to_rays(A):
    """Lattice class (a, b, c) in the basis (C, f, E) as ray coefficients."""
    a, b, c = A
    return (0, 0, b, a, a + c)


def boundary_rays(T):
    return tuple(1 if i == BLOWUP_F1_BOUNDARY_RAY else 0 for i in range(T.n_rays))


def test_fan_matches_lattice():
    T = blowup_f1_toric()
    S = blowup_f1()
    M = T.intersection_matrix()
    for i, j in itertools.product(range(5), repeat=2):
        assert M[i][j] == S.lattice.intersect(BLOWUP_F1_TO_LATTICE[i], BLOWUP_F1_TO_LATTICE[j])
    minus_k = [sum(col) for col in zip(*BLOWUP_F1_TO_LATTICE)]
    assert tuple(minus_k) == tuple(S.anticanonical)
    assert BLOWUP_F1_TO_LATTICE[BLOWUP_F1_BOUNDARY_RAY] == tuple(S.boundary)
    for A in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        image = [sum(c * BLOWUP_F1_TO_LATTICE[i][k] for i, c in enumerate(to_rays(A))) for k in range(3)]
        assert tuple(image) == A


def test_basic_counts():
    T = blowup_f1_toric()
    assert count_sections(T, (1, 1, 1, 1, 1)) == 8     # h0(-K) = K^2 + 1
    assert count_sections(projective_plane_toric(), (1, 0, 0)) == 3
    assert count_sections(T, (0,) * 5) == 1
    assert count_sections(T, (0, 0, 0, 0, -1)) == 0
    assert count_sections(T, (F(1, 2),) * 5) == 1


def test_invalid_fans():
    with pytest.raises(ToricError):
        ToricSurface(((1, 0), (0, 1)))
    with pytest.raises(ToricError):
        ToricSurface(((1, 0), (1, 2), (-1, -1)))
    with pytest.raises(ToricError):
        ToricSurface(((1, 0), (-1, -1), (0, 1)))


def test_riemann_roch_for_nef_classes():
    T = blowup_f1_toric()
    rng = random.Random(3)
    checked = 0
    while checked < 12:
        A = tuple(rng.randint(0, 4) for _ in range(5))
        if not T.is_nef(A):
            continue
        checked += 1
        K = T.canonical()
        for k in range(0, 31, 5):
            kA = [k * a for a in A]
            expected = (T.intersect(kA, kA) - T.intersect(kA, K)) / 2 + 1
            assert count_sections(T, kA) == expected


def test_asymptotic_volume_matches_zariski():
    T = blowup_f1_toric()
    S = blowup_f1()
    for t in [F(1, 2), F(3, 2), F(7, 4)]:
        A = S.divisor_ray(t)
        vol = volume_of(S, A)
        k = 400
        approx = F(2 * count_sections(T, [k * c for c in to_rays(A)]), k * k)
        assert abs(approx - vol) / vol < F(2, 100)


@pytest.fixture(scope="module")
def tables():
    T = blowup_f1_toric()
    beta, r = F(1, 2), 2
    L = log_divisor(T, boundary_rays(T), beta, r)
    return [weight_table(T, L, boundary_rays(T), r * F(3, 2), k) for k in range(1, 41)]


def test_weights_monotone_in_j(tables):
    for tab in tables:
        assert all(a >= b for a, b in zip(tab.h0_by_j, tab.h0_by_j[1:]))
        assert tab.h0_by_j[-1] >= 1


def test_first_table(tables):
    assert tables[0].h0_by_j == (17, 12, 7, 3)


def test_leading_coefficients(tables):
    d = df_invariant(bundle_from_profile(build_profile(blowup_f1()), F(1, 2)), F(1, 2), 2)
    v0, v1 = fit_leading_coeffs(tables[19:])
    assert (v0, v1) == (d.v0, d.v1) == (F(40, 3), F(15, 2))
    errs = [abs(F(t.v_k, t.k**3) - v0) for t in tables[9::10]]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < F(1, 2)


def test_fit_needs_data(tables):
    with pytest.raises(ValueError):
        fit_leading_coeffs(tables[:3])
    with pytest.raises(ValueError):
        fit_leading_coeffs(tables[:10])
