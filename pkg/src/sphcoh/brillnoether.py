"""Weak Brill-Noether decision, the h^0 bound and the negative rank check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegreeTwoUnsupported, NonPositive, NotSpherical
from .mukai import O_X_SHIFT, MukaiVector, SurfaceLike, half_degree, is_spherical, pairing
from .walls import convergents, lattice_contains, numerical_wall


@dataclass(frozen=True)
class WeakBNReport:
    holds: bool
    y: Optional[Fraction]
    witnesses: tuple[tuple[MukaiVector, Fraction], ...]


def bn_ratio(v: MukaiVector, v1: MukaiVector) -> Optional[Fraction]:
    """(a1 d - a d1) / (r1 d - r d1), or None when the denominator vanishes."""
    den = v1.r * v.d - v.r * v1.d
    if den == 0:
        return None
    return Fraction(v1.a * v.d - v.a * v1.d, den)


def _admissible(nn: int, v: MukaiVector, v1: MukaiVector) -> Optional[Fraction]:
    if v1 == v or not 0 < v1.d <= v.d or pairing(nn, v, v1) >= 0:
        return None
    y = bn_ratio(v, v1)
    if y is None or y <= 0:
        return None
    return y


def _candidate(nn: int, r1: int, d1: int) -> Optional[MukaiVector]:
    if r1 == 0:
        return None
    m = nn * d1 * d1 + 1
    if m % r1:
        return None
    return MukaiVector(r1, d1, m // r1)


def weak_bn(n: SurfaceLike, v: MukaiVector) -> WeakBNReport:
    """Largest ratio y over spherical v1 with v.v1 < 0, 0 < d1 <= d and positive ratio.

    Ratios y >= 1 only come from continued fraction convergents of r/d, so
    those are checked first.  When the best convergent ratio y0 is below 1 a
    full search follows, restricted by k d1 < d^2 / (a + y0 r) with
    k = r1 d - r d1 > 0.
    """
    nn = half_degree(n)
    if not is_spherical(nn, v):
        raise NotSpherical(f"{v} is not spherical for n={nn}")
    if v.r <= 0 or v.d <= 0:
        raise NonPositive(f"{v} needs r > 0 and d > 0")
    found: dict[MukaiVector, Fraction] = {}
    for h, k in convergents(v.r, v.d):
        for r1 in (h, -h):
            c = _candidate(nn, r1, k) if k > 0 else None
            if c is not None:
                y = _admissible(nn, v, c)
                if y is not None:
                    found[c] = y
    y0 = max(found.values(), default=None)
    if y0 is None or y0 < 1:
        lower = y0 if y0 is not None else Fraction(0)
        limit = Fraction(v.d * v.d) / (v.a + lower * v.r)
        for d1 in range(1, v.d):
            k = (-v.r * d1) % v.d
            if k == 0:
                k = v.d
            while k * d1 < limit:
                r1 = (k + v.r * d1) // v.d
                c = _candidate(nn, r1, d1)
                if c is not None:
                    y = _admissible(nn, v, c)
                    if y is not None:
                        found[c] = y
                k += v.d
    y = max(found.values(), default=None)
    witnesses = tuple(sorted(((c, r) for c, r in found.items() if r == y), key=lambda cr: (cr[0].d, cr[0].r)))
    holds = y is None or y < 1
    return WeakBNReport(holds, y, witnesses)


def h0_bound_check(n: SurfaceLike, v: MukaiVector, h0: int) -> bool:
    nn = half_degree(n)
    if nn == 1:
        raise DegreeTwoUnsupported("the bound h0 < 2 chi is only available for H^2 > 2")
    if not is_spherical(nn, v):
        raise NotSpherical(f"{v} is not spherical for n={nn}")
    if v.r <= 0 or v.d <= 0:
        raise NonPositive(f"{v} needs r > 0 and d > 0")
    return h0 < 2 * (v.r + v.a)


def negative_rank_wall_check(n: SurfaceLike, s0: MukaiVector, t1: MukaiVector) -> bool:
    nn = half_degree(n)
    key = numerical_wall(nn, s0, t1).key
    if key is not None and lattice_contains(nn, key, O_X_SHIFT):
        return True
    return s0.r * t1.r < 0
