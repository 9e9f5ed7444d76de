from __future__ import annotations

from fractions import Fraction

import pytest

from sphcoh.brillnoether import bn_ratio, h0_bound_check, negative_rank_wall_check, weak_bn
from sphcoh.errors import DegreeTwoUnsupported, NonPositive, NotSpherical
from sphcoh.mukai import MukaiVector, enumerate_spherical, pairing
from sphcoh.reduction import cohomology

V = MukaiVector


def brute_weak_bn(n: int, v: MukaiVector):
    """Largest ratio over every spherical v1 with 0 < d1 <= d, scanning all ranks."""
    best = None
    for d1 in range(1, v.d + 1):
        m = n * d1 * d1 + 1
        for r1 in range(-m, m + 1):
            if r1 == 0 or m % r1:
                continue
            v1 = V(r1, d1, m // r1)
            if v1 == v or pairing(n, v, v1) >= 0:
                continue
            if v1.r * v.d == v.r * v1.d:
                continue
            y = Fraction(v1.a * v.d - v.a * v1.d, v1.r * v.d - v.r * v1.d)
            if y > 0 and (best is None or y > best):
                best = y
    return best


def test_failure_example():
    rep = weak_bn(1, V(10, 13, 17))
    assert not rep.holds and rep.y == 3
    assert rep.witnesses == ((V(1, 1, 2), Fraction(3)),)


def test_holding_example():
    rep = weak_bn(1, V(195562, 59615, 18173))
    assert rep.holds and rep.y == Fraction(7, 13)
    assert {w for w, _ in rep.witnesses} >= {V(10, 3, 1), V(7253, 2211, 674)}


def test_fibonacci_bundle_holds():
    assert weak_bn(1, V(1, 1, 2)).holds


def test_invalid_inputs():
    with pytest.raises(NotSpherical):
        weak_bn(1, V(1, 1, 3))
    with pytest.raises(NonPositive):
        weak_bn(1, V(-1, 1, -2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weak_bn_matches_exhaustive_search(n):
    for v in enumerate_spherical(n, 1, 12, lambda v: v.r > 0):
        rep = weak_bn(n, v)
        y = brute_weak_bn(n, v)
        assert rep.y == y, v
        assert rep.holds == (y is None or y < 1)
        for w, ratio in rep.witnesses:
            assert ratio == y and ratio == bn_ratio(v, w)
            assert pairing(n, v, w) < 0 and 0 < w.d <= v.d


def test_ratio_is_undefined_for_vertical_walls():
    assert bn_ratio(V(1, 1, 2), V(2, 2, 3)) is None


def test_h0_bound():
    v = V(1, 1, 3)
    assert h0_bound_check(2, v, cohomology(2, v).h0)
    assert not h0_bound_check(2, v, 2 * (v.r + v.a))
    w = V(1, 1, 4)
    h0 = cohomology(3, w).h0
    assert h0 <= 9 and h0_bound_check(3, w, h0)
    with pytest.raises(DegreeTwoUnsupported):
        h0_bound_check(1, V(1, 1, 2), 3)


def test_negative_rank_examples():
    assert negative_rank_wall_check(1, V(2, 3, 5), V(-5, 12, -29))
    assert negative_rank_wall_check(1, V(1, 1, 2), V(-1, 0, -1))
    assert negative_rank_wall_check(1, V(58, 75, 97), V(-29, 70, -169))
    assert not negative_rank_wall_check(1, V(1, 1, 2), V(2, 1, 1))
