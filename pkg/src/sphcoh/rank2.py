"""The rank-2 lattice of a wall, its stable pair and the reflection chains.

Every class stable just above a wall and lying in the wall's lattice sits on
the chain generated by the stable pair (s0, t1) with g = s0.t1:

    c_0 = -s0,  c_1 = t1,  c_{k+1} = g c_k - c_{k-1},
    T_i = c_i for i >= 1,  S_j = -c_j for j <= 0.

In coordinates, S_{-j} = a_j s0 + a_{j-1} t1 and T_i = a_{i-2} s0 + a_{i-1} t1
where a is the sequence a_0 = 1, a_1 = g, a_k = g a_{k-1} - a_{k-2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import NotActualWall, NotInLattice, UnsupportedPair
from .mukai import MukaiVector, SurfaceLike, half_degree, is_effective, is_spherical, pairing
from .walls import WallKey, destabilizers_on, lattice_contains, numerical_wall


@dataclass(frozen=True)
class FundSeq:
    g: int
    terms: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.terms[i]


def fundamental_sequence(g: int, k: int) -> FundSeq:
    if g < 1 or k < 0:
        raise ValueError("need g >= 1 and k >= 0")
    terms = [1, g]
    while len(terms) < k + 1:
        terms.append(g * terms[-1] - terms[-2])
    return FundSeq(g, tuple(terms[: k + 1]))


def seq_term(g: int, i: int) -> int:
    """a_i(g), with a_i = 0 for every negative index."""
    if i < 0:
        return 0
    if g == 2:
        return i + 1
    prev, cur = 0, 1
    for _ in range(i):
        prev, cur = cur, g * cur - prev
    return cur


@dataclass(frozen=True, order=True)
class ChainLabel:
    side: str  # "S" or "T"
    index: int

    def __post_init__(self):
        if self.side == "T" and self.index < 1:
            raise ValueError("T labels start at 1")
        if self.side == "S" and self.index > 0:
            raise ValueError("S labels are nonpositive")
        if self.side not in ("S", "T"):
            raise ValueError(f"unknown side {self.side!r}")

    @property
    def is_base(self) -> bool:
        return (self.side, self.index) in (("S", 0), ("T", 1))

    @property
    def chain_pos(self) -> int:
        """Position k on the combined chain c_k (S_j sits at j, T_i at i)."""
        return self.index

    def __str__(self) -> str:
        return f"{self.side}{self.index}"


S0 = ChainLabel("S", 0)
T1 = ChainLabel("T", 1)


def S(j: int) -> ChainLabel:
    return ChainLabel("S", j)


def T(i: int) -> ChainLabel:
    return ChainLabel("T", i)


def chain_coords(g: int, label: ChainLabel) -> tuple[int, int]:
    if label.side == "S":
        j = -label.index
        return seq_term(g, j), seq_term(g, j - 1)
    i = label.index
    return seq_term(g, i - 2), seq_term(g, i - 1)


@dataclass(frozen=True)
class Rank2Wall:
    n: int
    s0: MukaiVector
    t1: MukaiVector
    g: int
    key: Optional[WallKey] = None

    def __post_init__(self):
        assert is_spherical(self.n, self.s0) and is_spherical(self.n, self.t1)
        assert pairing(self.n, self.s0, self.t1) == self.g >= 0

    @property
    def classification(self) -> str:
        if self.g == 1:
            return "negative_definite"
        if self.g == 2:
            return "degenerate"
        if self.g >= 3:
            return "hyperbolic"
        return "orthogonal"

    def a(self, i: int) -> int:
        return seq_term(self.g, i)

    def contains(self, x: MukaiVector) -> bool:
        try:
            coordinates(self, x)
        except NotInLattice:
            return False
        return True

    def __str__(self) -> str:
        return f"s0={self.s0} t1={self.t1} g={self.g}"


def chain_class(w: Rank2Wall, label: ChainLabel) -> MukaiVector:
    p, q = chain_coords(w.g, label)
    return w.s0 * p + w.t1 * q


def coordinates(w: Rank2Wall, x: MukaiVector) -> tuple[int, int]:
    """Integers (p, q) with x = p s0 + q t1."""
    s, t = w.s0, w.t1
    rows = [(s.r, t.r, x.r), (s.d, t.d, x.d), (s.a, t.a, x.a)]
    for i in range(3):
        for j in range(i + 1, 3):
            a1, b1, c1 = rows[i]
            a2, b2, c2 = rows[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            pn = c1 * b2 - c2 * b1
            qn = a1 * c2 - a2 * c1
            if pn % det or qn % det:
                raise NotInLattice(f"{x} is not an integral combination of {s}, {t}")
            p, q = pn // det, qn // det
            if s * p + t * q != x:
                raise NotInLattice(f"{x} is not in the span of {s}, {t}")
            return p, q
    raise NotInLattice("degenerate base pair")


def label_of(w: Rank2Wall, x: MukaiVector) -> Optional[ChainLabel]:
    p, q = coordinates(w, x)
    if (p, q) == (1, 0):
        return S0
    if (p, q) == (0, 1):
        return T1
    if p <= 0 or q <= 0:
        return None
    g = w.g
    if g == 1:
        return S(-1) if (p, q) == (1, 1) else None
    if g == 2:
        if p == q + 1:
            return S(-q)
        if q == p + 1:
            return T(p + 1)
        return None
    if p > q:
        j, prev, cur = 0, 0, 1
        while cur < p:
            prev, cur = cur, g * cur - prev
            j += 1
        return S(-j) if (cur, prev) == (p, q) else None
    i, prev, cur = 1, 0, 1  # (a_{i-2}, a_{i-1})
    while cur < q:
        prev, cur = cur, g * cur - prev
        i += 1
    return T(i) if (prev, cur) == (p, q) else None


def _base_entry(w: Rank2Wall, frm: ChainLabel, to: ChainLabel) -> Optional[tuple[int, int]]:
    a = w.a
    if frm == S0 and to.side == "T":
        i = to.index
        return a(i - 2), a(i)
    if frm.side == "T" and to == T1:
        i = frm.index
        return a(i - 1), a(i - 3)
    if frm == S0 and to.side == "S":
        j = -to.index
        return a(j), a(j - 2)
    if frm.side == "S" and to == T1:
        j = -frm.index
        return a(j - 1), a(j + 1)
    return None


def hom_ext_table(w: Rank2Wall, frm: ChainLabel, to: ChainLabel) -> tuple[int, int]:
    """(hom, ext^1) between two stable chain objects, one of them a base class."""
    if frm == to:
        return 1, 0
    if not (frm.is_base or to.is_base):
        raise UnsupportedPair(f"neither {frm} nor {to} is a base class")
    direct = _base_entry(w, frm, to)
    if direct is not None:
        return direct
    back = _base_entry(w, to, frm)
    if back is None:
        raise UnsupportedPair(f"no table entry for {frm}, {to}")
    hom_back, ext1 = back
    chi = -pairing(w.n, chain_class(w, frm), chain_class(w, to))
    # chi(A, B) = hom(A, B) - ext1(A, B) + hom(B, A)
    hom = chi + ext1 - hom_back
    assert hom >= 0, (frm, to, hom)
    return hom, ext1


def hom(w: Rank2Wall, frm: ChainLabel, to: ChainLabel) -> int:
    return hom_ext_table(w, frm, to)[0]


def ext1(w: Rank2Wall, frm: ChainLabel, to: ChainLabel) -> int:
    return hom_ext_table(w, frm, to)[1]


def _upper_first(u: MukaiVector, v: MukaiVector) -> bool:
    """Whether u has the larger phase just above the (u, v) wall."""
    return u.r * v.d - v.r * u.d < 0


def base_pair_from(n: SurfaceLike, key: WallKey, x: MukaiVector) -> Optional[Rank2Wall]:
    """Recover (s0, t1) from a class destabilized on the wall, or None if x is stable there.

    The destabilizers of x on the wall are chain classes on one side; the two
    with the smallest imaginary part are the base class of that side and its
    neighbour, and one reflection recovers the other base class.
    """
    nn = half_degree(n)
    dest = destabilizers_on(nn, x, key)
    if not dest:
        return None
    b1 = dest[0]
    if len(dest) == 2 and dest[0] + dest[1] == x and pairing(nn, dest[0], dest[1]) == 1:
        u, v = dest
        t1, s0 = (u, v) if _upper_first(u, v) else (v, u)
        return Rank2Wall(nn, s0, t1, 1, key)
    nxt = dest[1] if len(dest) >= 2 else x
    if _upper_first(b1, x):
        t1 = b1
        g = -pairing(nn, nxt, t1)
        s0 = nxt - t1 * g
    else:
        s0 = b1
        g = -pairing(nn, nxt, s0)
        t1 = nxt - s0 * g
    if g < 1 or not (is_spherical(nn, s0) and is_spherical(nn, t1)):
        raise NotActualWall(f"descent from {x} did not produce a stable pair")
    if not (is_effective(s0) and is_effective(t1)):
        raise NotActualWall(f"descent from {x} produced a non-effective base class")
    w = Rank2Wall(nn, s0, t1, g, key)
    if label_of(w, x) is None:
        raise NotActualWall(f"{x} is not on the chain of {w}")
    return w


def wall_lattice(n: SurfaceLike, key: WallKey, classes: Iterable[MukaiVector]) -> Rank2Wall:
    """Stable pair of the wall, given the classes of a segment lying on it."""
    nn = half_degree(n)
    distinct = list(dict.fromkeys(classes))
    for x in distinct:
        assert lattice_contains(nn, key, x), (x, key)
    for x in distinct:
        w = base_pair_from(nn, key, x)
        if w is not None:
            return w
    # every class is stable on the wall, so they are the base pair itself
    if len(distinct) != 2:
        raise NotActualWall(f"cannot identify a stable pair from {len(distinct)} stable classes")
    u, v = distinct
    t1, s0 = (u, v) if _upper_first(u, v) else (v, u)
    g = pairing(nn, s0, t1)
    if g < 0:
        raise NotActualWall(f"stable classes {s0}, {t1} pair negatively")
    return Rank2Wall(nn, s0, t1, g, key)


def stable_pair(n: SurfaceLike, v: MukaiVector, v1: MukaiVector) -> Rank2Wall:
    nn = half_degree(n)
    key = numerical_wall(nn, v, v1).key
    if key is None:
        raise NotActualWall("vertical walls carry no stable pair")
    w = base_pair_from(nn, key, v)
    if w is None:
        raise NotActualWall(f"{v} is not destabilized on W({v}, {v1})")
    p, q = coordinates(w, v)
    if p < 0 or q < 0:
        raise NotActualWall(f"{v} has coordinates ({p}, {q})")
    return w


def chain_classes(w: Rank2Wall, count: int) -> list[tuple[ChainLabel, MukaiVector]]:
    """The first `count` classes on each side of the chain."""
    out = []
    if w.g == 1:
        return [(S0, w.s0), (T1, w.t1), (S(-1), w.s0 + w.t1)]
    for j in range(count):
        out.append((S(-j), chain_class(w, S(-j))))
    for i in range(1, count + 1):
        out.append((T(i), chain_class(w, T(i))))
    return out
