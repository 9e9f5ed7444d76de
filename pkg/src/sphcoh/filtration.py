"""Harder-Narasimhan shapes across a single wall.

Conventions: just above a wall the stable chain objects are ordered by phase
as T1 > T2 > ... > S_{-1} > S0, and just below it the order is reversed,
S0 > S_{-1} > ... > T2 > T1.  A segment [X^q, Y^p] therefore lists the
higher phase factor first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    HeightTooLarge,
    NeitherSideInjective,
    NoNonnegativeSolution,
    RigidityViolated,
    UnsupportedPair,
)
from .mukai import O_X_SHIFT, MukaiVector, SurfaceLike, euler_char, half_degree
from .rank2 import (
    S0,
    T1,
    ChainLabel,
    Rank2Wall,
    S,
    T,
    chain_class,
    chain_coords,
    coordinates,
    hom,
    ext1,
    seq_term,
    stable_pair,
)
from .walls import WallKey, largest_actual_wall, phase_greater


@dataclass(frozen=True)
class Factor:
    cls: MukaiVector
    mult: int
    label: Optional[ChainLabel] = field(default=None, compare=False)

    def __str__(self) -> str:
        tag = f"[{self.label}]" if self.label is not None else ""
        return f"{self.cls}{tag}x{self.mult}"


@dataclass(frozen=True)
class Shape:
    factors: tuple[Factor, ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def total(self) -> MukaiVector:
        acc = MukaiVector(0, 0, 0)
        for f in self.factors:
            acc = acc + f.cls * f.mult
        return acc

    def classes(self) -> list[MukaiVector]:
        return [f.cls for f in self.factors]

    def in_phase_order(self, n: SurfaceLike, bound: Optional[WallKey]) -> bool:
        """Strictly decreasing phases just below `bound` (None: large volume)."""
        return all(
            phase_greater(n, a.cls, b.cls, bound) for a, b in zip(self.factors, self.factors[1:])
        )

    def __str__(self) -> str:
        return "[" + ", ".join(str(f) for f in self.factors) + "]"


def make_shape(factors: Iterable[Factor]) -> Shape:
    """Drop zero multiplicities and merge neighbours of equal class."""
    out: list[Factor] = []
    for f in factors:
        if f.mult < 0:
            raise NoNonnegativeSolution(f"negative multiplicity in {f}")
        if f.mult == 0:
            continue
        if out and out[-1].cls == f.cls:
            prev = out.pop()
            f = Factor(f.cls, prev.mult + f.mult, prev.label or f.label)
        out.append(f)
    return Shape(tuple(out))


def _factor(w: Rank2Wall, label: ChainLabel, mult: int) -> Factor:
    return Factor(chain_class(w, label), mult, label)


def jh_below_wall(w: Rank2Wall, label: ChainLabel) -> Shape:
    """Jordan-Holder factors below the wall of a stable chain object."""
    p, q = chain_coords(w.g, label)
    return make_shape([_factor(w, S0, p), _factor(w, T1, q)])


def _locate(g: int, big: int, small: int) -> int:
    """The i >= 0 with a_{i+1}/a_i <= big/small < a_i/a_{i-1}."""

    def fits(i: int) -> bool:
        a_prev, a_i, a_next = seq_term(g, i - 1), seq_term(g, i), seq_term(g, i + 1)
        return big * a_i >= small * a_next and big * a_prev < small * a_i

    if g == 2:
        i = max(-(-small // (big - small)) - 1, 0)
        if fits(i):
            return i
    i = 0
    while i < 10_000:
        if fits(i):
            return i
        i += 1
    raise NoNonnegativeSolution(f"no interval contains {big}/{small} for g={g}")


def resolve_type1(w: Rank2Wall, p: int, q: int, orientation: str = "T-sub") -> Shape:
    """Below-wall shape of a rigid extension 0 -> T1^q -> E -> S0^p -> 0."""
    if orientation != "T-sub":
        raise UnsupportedPair("only the downward crossing (T1 sub-object above the wall) is resolved")
    if p < 0 or q < 0:
        raise NoNonnegativeSolution("negative multiplicities")
    if q == 0 or p == 0:
        return make_shape([_factor(w, S0, p), _factor(w, T1, q)])
    g = w.g
    if g == 0:
        return make_shape([_factor(w, S0, p), _factor(w, T1, q)])
    if g == 1:
        mid = Factor(w.s0 + w.t1, min(p, q), S(-1))
        return make_shape([_factor(w, S0, p - min(p, q)), mid, _factor(w, T1, q - min(p, q))])
    if not p * q * g < p * p + q * q:
        raise RigidityViolated(f"p={p}, q={q}, g={g} is not rigid")
    if q <= p:
        i = _locate(g, p, q)
        a_prev, a_i, a_next = seq_term(g, i - 1), seq_term(g, i), seq_term(g, i + 1)
        m = a_i * p - a_next * q
        k = a_i * q - a_prev * p
        if m < 0 or k < 0:
            raise NoNonnegativeSolution(f"({p}, {q}) at g={g}")
        return make_shape([_factor(w, S(-i), m), _factor(w, S(-i - 1), k)])
    i = _locate(g, q, p)
    a_prev, a_i, a_next = seq_term(g, i - 1), seq_term(g, i), seq_term(g, i + 1)
    m = a_i * q - a_next * p
    k = a_i * p - a_prev * q
    if m < 0 or k < 0:
        raise NoNonnegativeSolution(f"({p}, {q}) at g={g}")
    return make_shape([_factor(w, T(i + 2), k), _factor(w, T(i + 1), m)])


def resolve_type2(w: Rank2Wall, q: int, G: ChainLabel, p: int, side: str = "T-base") -> Shape:
    """Below-wall shape of a rigid object with above-wall factors [T1^q, G^p] or [G^q, S0^p].

    For side "T-base" the segment is [T1^q, G^p].  For side "S-base" it is
    [F^q, S0^p] with F = G, and `q`, `p` keep their roles as multiplicities
    of F and S0.
    """
    if G.is_base:
        raise UnsupportedPair(f"{G} is a base class")
    if side == "T-base":
        eps = max(q - p * ext1(w, G, T1), 0)
        mid = resolve_type1(w, p * hom(w, S0, G), q - eps)
        return make_shape(list(mid) + [_factor(w, T1, p * hom(w, G, T1) + eps)])
    if side == "S-base":
        F = G
        eps = max(p - q * ext1(w, S0, F), 0)
        mid = resolve_type1(w, p - eps, q * hom(w, F, T1))
        return make_shape([_factor(w, S0, q * hom(w, S0, F) + eps)] + list(mid))
    raise ValueError(f"unknown side {side!r}")


def two_step_branch(w: Rank2Wall, F: ChainLabel, q: int, G: ChainLabel, p: int) -> str:
    if p * hom(w, S0, G) <= q * ext1(w, S0, F):
        return "a"
    if q * hom(w, F, T1) <= p * ext1(w, G, T1):
        return "b"
    raise NeitherSideInjective(f"neither inequality holds for {F}^{q}, {G}^{p} at g={w.g}")


def resolve_two_step(w: Rank2Wall, F: ChainLabel, q: int, G: ChainLabel, p: int) -> Shape:
    """Below-wall shape for an above-wall segment [F^q, G^p] of two chain classes."""
    if F == T1:
        return resolve_type2(w, q, G, p, "T-base")
    if G == S0:
        return resolve_type2(w, q, F, p, "S-base")
    branch = two_step_branch(w, F, q, G, p)
    if branch == "a":
        rest = resolve_type2(w, q * hom(w, F, T1), G, p, "T-base")
        return make_shape([_factor(w, S0, q * hom(w, S0, F))] + list(rest))
    rest = resolve_type2(w, q, F, p * hom(w, S0, G), "S-base")
    return make_shape(list(rest) + [_factor(w, T1, p * hom(w, G, T1))])


# cohomology bookkeeping


@dataclass(frozen=True)
class Cohomology:
    """Dimensions of H^-1, H^0, H^1, H^2 of an object of the heart."""

    h0: int
    h1: int
    hm1: int = 0
    h2: int = 0

    @property
    def chi(self) -> int:
        return -self.hm1 + self.h0 - self.h1 + self.h2


O_X_SHIFT_COHOMOLOGY = Cohomology(h0=0, h1=1, hm1=1)


def height_zero_cohomology(x: MukaiVector) -> Cohomology:
    """Cohomology of a class stable down to and past its BN wall."""
    if x == O_X_SHIFT:
        return O_X_SHIFT_COHOMOLOGY
    chi = euler_char(1, x)
    if x.r <= 0 or chi < 0:
        raise UnsupportedPair(f"{x} cannot be stable below its BN wall")
    return Cohomology(h0=chi, h1=0)


def _first_wall(n: int, x: MukaiVector, bound: Optional[WallKey]):
    if x == O_X_SHIFT:
        return None
    found = largest_actual_wall(n, x, bound)
    if found is None:
        return None
    circle, v1 = found
    return circle.key, stable_pair(n, x, v1)


def height(n: SurfaceLike, v: MukaiVector, below: Optional[WallKey] = None) -> int:
    nn = half_degree(n)
    memo: dict = {}

    def go(x: MukaiVector, bound: Optional[WallKey]) -> int:
        if (x, bound) in memo:
            return memo[(x, bound)]
        first = _first_wall(nn, x, bound)
        if first is None:
            h = 0
        else:
            key, w = first
            h = 1 + max(go(w.s0, key), go(w.t1, key))
        memo[(x, bound)] = h
        return h

    return go(v, below)


def combine_connecting(p: int, q: int, hs: Cohomology, ht: Cohomology, chi: int) -> Cohomology:
    """Cohomology of 0 -> S^p -> E -> T^q -> 0 when H^0(T^q) -> H^1(S^p) has maximal rank."""
    h0 = p * hs.h0 + q * ht.h0 - q * ht.hm1 - min(q * ht.h0, p * hs.h1)
    return Cohomology(h0=h0, h1=h0 - chi)


def height2_shortcut(n: SurfaceLike, v: MukaiVector) -> tuple[int, int]:
    nn = half_degree(n)
    if height(nn, v) > 2:
        raise HeightTooLarge(f"{v} has height above two")

    def go(x: MukaiVector, bound: Optional[WallKey]) -> Cohomology:
        first = _first_wall(nn, x, bound)
        if first is None:
            return height_zero_cohomology(x)
        key, w = first
        p, q = coordinates(w, x)
        return combine_connecting(p, q, go(w.s0, key), go(w.t1, key), euler_char(nn, x))

    c = go(v, None)
    return c.h0, c.h1


@dataclass(frozen=True)
class ChainCohomology:
    exact: bool
    h0: Optional[int] = None
    h1: Optional[int] = None
    reason: Optional[str] = None


def chain_cohomology(
    w: Rank2Wall,
    h_S0: tuple[int, int],
    h_T1: tuple[int, int],
    label: ChainLabel,
    flags: Optional[dict] = None,
) -> ChainCohomology:
    """Cohomology of a chain object from that of the stable pair.

    The T side uses 0 -> T_{i+1} -> T_i^g -> T_{i-1} -> 0, exact on H^0 when
    the evaluation map ev_i is surjective; the S side uses the mirrored
    sequences and is exact on H^1 when coev_j is injective.  Surjectivity is
    known for i >= 4 (i >= 2 when H^2 > 2) and injectivity for j <= -3
    (j <= -1), or whenever the relevant space vanishes.
    """
    deg_ge_4 = bool((flags or {}).get("rank_one_deg_ge_4", w.n >= 2))
    g = w.g
    hs = Cohomology(*h_S0)
    hm1_t = 1 if w.t1 == O_X_SHIFT else 0
    ht = Cohomology(h_T1[0], h_T1[1], hm1=hm1_t)

    def done(x: ChainLabel, h0: int) -> ChainCohomology:
        return ChainCohomology(True, h0, h0 - euler_char(w.n, chain_class(w, x)))

    if label == S0:
        return ChainCohomology(True, hs.h0, hs.h1)
    if label == T1:
        return ChainCohomology(True, ht.h0, ht.h1)
    if g < 2:
        return ChainCohomology(False, reason="no-chain")

    if label.side == "T":
        if g * ht.h0 and hs.h1:
            return ChainCohomology(False, reason="ev1-unknown")
        h0 = {1: ht.h0, 2: hs.h0 + g * ht.h0 - g * ht.hm1}
        hm1 = {1: ht.hm1}
        for i in range(2, label.index):
            if not (i >= 4 or (deg_ge_4 and i >= 2) or h0[i - 1] == 0):
                return ChainCohomology(False, reason=f"ev{i}-unknown")
            h0[i + 1] = g * h0[i] - h0[i - 1] + hm1.get(i - 1, 0)
        return done(label, h0[label.index])

    m_target = -label.index
    if ht.h0 and hs.h1:
        return ChainCohomology(False, reason="coev0-unknown")
    h1 = {0: hs.h1, 1: g * hs.h1 + ht.h1}
    for m in range(1, m_target):
        if not (m >= 3 or (deg_ge_4 and m >= 1) or h1[m - 1] == 0):
            return ChainCohomology(False, reason=f"coev{-m}-unknown")
        h1[m + 1] = g * h1[m] - h1[m - 1]
    x = S(-m_target)
    h1v = h1[m_target]
    return ChainCohomology(True, h1v + euler_char(w.n, chain_class(w, x)), h1v)
