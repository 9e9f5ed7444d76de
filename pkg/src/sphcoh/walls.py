"""Numerical and actual walls on the slice {(sH, tH) : t > 0}.

Walls are ordered by where they cut the line s = eps for infinitesimal
eps > 0.  A semicircle with center c and radius R meets that line at
t^2 = (R^2 - c^2) + 2c eps - eps^2, so the exact pair (R^2 - c^2, 2c) is a
key whose lexicographic order is the order of the walls along the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional

from .errors import ProportionalClasses
from .mukai import (
    O_X_SHIFT,
    MukaiVector,
    SurfaceLike,
    half_degree,
    is_effective,
    effective_order_key,
    pairing,
)


@dataclass(frozen=True)
class ChargePoint:
    s: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t", Fraction(self.t))
        if self.t <= 0:
            raise ValueError("t must be positive")


def central_charge(n: SurfaceLike, p: ChargePoint, v: MukaiVector) -> tuple[Fraction, Fraction]:
    nn = half_degree(n)
    s, t = p.s, p.t
    re = -v.a - v.r * nn * (s * s - t * t) + 2 * nn * v.d * s
    im = 2 * nn * t * (v.d - v.r * s)
    return Fraction(re), Fraction(im)


@total_ordering
@dataclass(frozen=True)
class WallKey:
    """Position of a wall along s = eps: larger keys are higher walls."""

    t0_sq: Fraction
    c2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t0_sq", Fraction(self.t0_sq))
        object.__setattr__(self, "c2", Fraction(self.c2))

    def __lt__(self, other: "WallKey") -> bool:
        return (self.t0_sq, self.c2) < (other.t0_sq, other.c2)

    def height_sq(self, eps: Fraction) -> Fraction:
        return self.t0_sq + self.c2 * eps - eps * eps

    def __str__(self) -> str:
        return f"[t0^2={self.t0_sq}, c2={self.c2}]"


def compare_walls(k1: WallKey, k2: WallKey) -> int:
    """1 if k1 is the higher wall, -1 if k2 is, 0 if they coincide."""
    if k1 == k2:
        return 0
    return 1 if k1 > k2 else -1


def below(key: WallKey, bound: Optional[WallKey]) -> bool:
    """key < bound, with bound None standing for the Gieseker chamber."""
    return bound is None or key < bound


@dataclass(frozen=True)
class WallCircle:
    kind: str  # "semicircle" or "vertical"
    center: Optional[Fraction] = None
    radius_sq: Optional[Fraction] = None
    s0: Optional[Fraction] = None
    defining_pair: tuple[MukaiVector, MukaiVector] = field(default=None, compare=False)

    @property
    def empty(self) -> bool:
        return self.kind == "semicircle" and self.radius_sq <= 0

    @property
    def key(self) -> Optional[WallKey]:
        if self.kind != "semicircle":
            return None
        return WallKey(self.radius_sq - self.center * self.center, 2 * self.center)

    @classmethod
    def from_key(cls, key: WallKey, pair=None) -> "WallCircle":
        c = key.c2 / 2
        return cls("semicircle", center=c, radius_sq=key.t0_sq + c * c, defining_pair=pair)

    def __str__(self) -> str:
        if self.kind == "vertical":
            return f"s = {self.s0}"
        return f"center {self.center}, radius^2 {self.radius_sq}"


def _delta(u: MukaiVector, w: MukaiVector) -> int:
    return u.r * w.d - w.r * u.d


def _proportional(u: MukaiVector, w: MukaiVector) -> bool:
    return (
        u.r * w.d == u.d * w.r
        and u.r * w.a == u.a * w.r
        and u.d * w.a == u.a * w.d
    )


def numerical_wall(n: SurfaceLike, u: MukaiVector, v: MukaiVector) -> WallCircle:
    """The locus where Z(u) and Z(v) have equal phase."""
    nn = half_degree(n)
    if _proportional(u, v):
        raise ProportionalClasses(f"{u} and {v} are proportional")
    delta = _delta(u, v)
    lin = v.a * u.r - u.a * v.r
    const = u.a * v.d - v.a * u.d
    if delta == 0:
        if lin == 0:
            raise ProportionalClasses(f"{u} and {v} have proportional central charges")
        return WallCircle("vertical", s0=Fraction(-const, lin), defining_pair=(u, v))
    center = Fraction(lin, 2 * nn * delta)
    t0_sq = Fraction(const, nn * delta)
    return WallCircle("semicircle", center=center, radius_sq=center * center + t0_sq, defining_pair=(u, v))


def wall_key(n: SurfaceLike, u: MukaiVector, v: MukaiVector) -> Optional[WallKey]:
    return numerical_wall(n, u, v).key


def bn_wall(n: SurfaceLike, v: Optional[MukaiVector] = None) -> WallKey:
    """Key of the wall through (0, sqrt(1/n)); c2 comes from W(v, O_X[1]) when v is given."""
    nn = half_degree(n)
    if v is None or v.d == 0:
        return WallKey(Fraction(1, nn), Fraction(0))
    return WallKey(Fraction(1, nn), Fraction(v.a - v.r, nn * v.d))


def at_or_above_bn(n: SurfaceLike, key: WallKey) -> bool:
    return key.t0_sq >= Fraction(1, half_degree(n))


def phase_sign(n: SurfaceLike, u: MukaiVector, w: MukaiVector, bound: Optional[WallKey]) -> int:
    """Sign of phi(u) - phi(w) just below the wall key `bound` on s = eps.

    bound None means the large volume limit.
    """
    nn = half_degree(n)
    delta = _delta(u, w)
    lin = w.a * u.r - u.a * w.r
    const = u.a * w.d - w.a * u.d
    if delta == 0:
        if const:
            return 1 if const > 0 else -1
        if lin:
            return 1 if lin > 0 else -1
        return 0
    own = WallKey(Fraction(const, nn * delta), Fraction(lin, nn * delta))
    # positive when the sample point lies above the (u, w) wall
    side = 1 if below(own, bound) else -1
    return 1 if delta * side < 0 else -1


def phase_greater(n: SurfaceLike, u: MukaiVector, w: MukaiVector, bound: Optional[WallKey]) -> bool:
    return phase_sign(n, u, w, bound) > 0


def lattice_contains(n: SurfaceLike, key: WallKey, x: MukaiVector) -> bool:
    """Whether x lies in the rank-2 lattice of classes whose walls with each other are this circle."""
    nn = half_degree(n)
    return x.a == nn * (key.t0_sq * x.r + key.c2 * x.d)


def convergents(p: int, q: int) -> list[tuple[int, int]]:
    """Continued fraction convergents h/k of p/q for p >= 0, q > 0."""
    out = []
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    while q:
        m, rem = divmod(p, q)
        h0, h1 = h1, m * h1 + h0
        k0, k1 = k1, m * k1 + k0
        out.append((h1, k1))
        p, q = q, rem
    return out


@dataclass(frozen=True)
class Destabilizer:
    key: WallKey
    cls: MukaiVector


def destabilizers(
    n: SurfaceLike, v: MukaiVector, bound: Optional[WallKey] = None
) -> list[Destabilizer]:
    """All spherical v1 making a wall of v at or above the BN point and below `bound`.

    Conditions: v.v1 < 0, v1 and v - v1 effective.  On such a wall one has
    |r1/d1 - r/d| < 1/(2 d1^2), so r1/d1 is a convergent of r/d and the
    search only visits O(log d) candidates.  O_X[1] is added for negative rank.
    """
    nn = half_degree(n)
    if v.d <= 0:
        return []
    sign = 1 if v.r > 0 else -1
    cands: list[MukaiVector] = []
    for h, k in convergents(abs(v.r), v.d):
        if h == 0 or k > v.d:
            continue
        r1 = sign * h
        m = nn * k * k + 1
        if m % r1:
            continue
        cands.append(MukaiVector(r1, k, m // r1))
    if v.r < 0:
        cands.append(O_X_SHIFT)
    out = []
    bn = Fraction(1, nn)
    for v1 in cands:
        if v1 == v or pairing(nn, v, v1) >= 0:
            continue
        if not (is_effective(v1) and is_effective(v - v1)):
            continue
        if _delta(v, v1) == 0:
            continue
        key = numerical_wall(nn, v, v1).key
        if key.t0_sq < bn or not below(key, bound):
            continue
        out.append(Destabilizer(key, v1))
    out.sort(key=lambda x: (x.key.t0_sq, x.key.c2, tuple(-c for c in effective_order_key(x.cls))), reverse=True)
    return out


def actual_walls(n: SurfaceLike, v: MukaiVector, bound: Optional[WallKey] = None) -> list[WallKey]:
    """Distinct actual wall keys of v at or above the BN point, highest first."""
    keys = sorted({dz.key for dz in destabilizers(n, v, bound)}, reverse=True)
    return keys


def largest_actual_wall(
    n: SurfaceLike, v: MukaiVector, strictly_below: Optional[WallKey] = None
) -> Optional[tuple[WallCircle, MukaiVector]]:
    ds = destabilizers(n, v, strictly_below)
    if not ds:
        return None
    top = ds[0].key
    same = [dz.cls for dz in ds if dz.key == top]
    v1 = min(same, key=effective_order_key)
    return numerical_wall(n, v, v1), v1


def destabilizers_on(n: SurfaceLike, v: MukaiVector, key: WallKey) -> list[MukaiVector]:
    """Destabilizers of v on one given wall, sorted by imaginary part at s = eps."""
    found = [dz.cls for dz in destabilizers(n, v) if dz.key == key]
    return sorted(found, key=effective_order_key)


def numerical_walls_between(
    n: SurfaceLike, classes: Iterable[MukaiVector]
) -> list[WallCircle]:
    vs = list(classes)
    out = []
    for i, u in enumerate(vs):
        for w in vs[i + 1:]:
            if not _proportional(u, w):
                out.append(numerical_wall(n, u, w))
    return out
