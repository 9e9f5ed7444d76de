"""Exact arithmetic on the Mukai lattice Z + ZH + Z of a K3 surface with H^2 = 2n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Union

from .errors import DegreeZeroNontrivial, NonPositive, NotSpherical, ZeroRank


@dataclass(frozen=True)
class Surface:
    """A Picard rank one K3 surface, remembered only through n = H^2 / 2."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"half-degree must be a positive integer, got {self.n!r}")


SurfaceLike = Union[Surface, int]


def half_degree(n: SurfaceLike) -> int:
    if isinstance(n, Surface):
        return n.n
    return Surface(n).n


@dataclass(frozen=True, order=True)
class MukaiVector:
    """The class (r, dH, a)."""

    r: int
    d: int
    a: int

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r + other.r, self.d + other.d, self.a + other.a)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r - other.r, self.d - other.d, self.a - other.a)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, -self.d, -self.a)

    def __mul__(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, k * self.d, k * self.a)

    __rmul__ = __mul__

    def __iter__(self) -> Iterator[int]:
        return iter((self.r, self.d, self.a))

    def __str__(self) -> str:
        return f"({self.r},{self.d},{self.a})"

    @classmethod
    def parse(cls, text: str) -> "MukaiVector":
        parts = [p for p in text.replace("(", "").replace(")", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected r,d,a but got {text!r}")
        r, d, a = (int(p.strip()) for p in parts)
        return cls(r, d, a)

    def is_zero(self) -> bool:
        return self.r == 0 and self.d == 0 and self.a == 0


ZERO = MukaiVector(0, 0, 0)
O_X = MukaiVector(1, 0, 1)
O_X_SHIFT = MukaiVector(-1, 0, -1)


def pairing(n: SurfaceLike, u: MukaiVector, v: MukaiVector) -> int:
    return 2 * half_degree(n) * u.d * v.d - u.r * v.a - v.r * u.a


def square(n: SurfaceLike, v: MukaiVector) -> int:
    return pairing(n, v, v)


def euler_char(n: SurfaceLike, u: MukaiVector, v: Optional[MukaiVector] = None) -> int:
    """chi(u, v) = -u.v; with one argument, chi(O_X, u) = r + a."""
    if v is None:
        return u.r + u.a
    return -pairing(n, u, v)


def is_spherical(n: SurfaceLike, v: MukaiVector) -> bool:
    return v.r * v.a == half_degree(n) * v.d * v.d + 1


def is_positive(n: SurfaceLike, v: MukaiVector) -> bool:
    if square(n, v) < -2:
        return False
    if v.r > 0:
        return True
    if v.r == 0 and v.d > 0 and v.a != 0:
        return True
    return v.r == 0 and v.d == 0 and v.a > 0


def is_effective(v: MukaiVector) -> bool:
    """Whether v can be the class of a nonzero object of the heart near s = 0+.

    The imaginary part of the central charge at s = eps is 2nt(d - r eps), so
    it is positive for d > 0, and for d = 0 only shifted classes (r < 0) have
    it nonnegative with negative real part.
    """
    return v.d > 0 or (v.d == 0 and v.r < 0)


def effective_order_key(v: MukaiVector) -> tuple[int, int]:
    """Sort key by the imaginary part of Z at s = eps (d first, then -r)."""
    return (v.d, -v.r)


def dualize(v: MukaiVector) -> MukaiVector:
    return MukaiVector(v.r, -v.d, v.a)


@dataclass(frozen=True)
class Transform:
    """How a query class was moved into the r > 0, d > 0 region."""

    dualized: bool = False
    special: Optional[str] = None

    def compose(self, later: "Transform") -> "Transform":
        return Transform(self.dualized != later.dualized, later.special or self.special)


IDENTITY = Transform()


def normalize_input(n: SurfaceLike, v: MukaiVector) -> tuple[MukaiVector, Transform]:
    """Reduce to r > 0, d > 0 by Serre duality, or flag the structure sheaf."""
    if v.r == 0:
        # no rank zero class is spherical, so report the rank first
        raise ZeroRank(f"{v} has rank zero")
    if not is_spherical(n, v):
        raise NotSpherical(f"{v} is not spherical for n={half_degree(n)}")
    if v.r < 0:
        raise NonPositive(f"{v} has negative rank; only sheaf classes with r > 0 are supported")
    if v.d == 0:
        if v != O_X:
            raise DegreeZeroNontrivial(f"{v}: degree zero spherical class other than O_X")
        return v, Transform(special="O_X")
    if v.d < 0:
        return dualize(v), Transform(dualized=True)
    return v, IDENTITY


def divisors(m: int) -> list[int]:
    """Positive divisors of a positive integer, ascending."""
    from sympy import divisors as _divisors

    return [int(x) for x in _divisors(m)]


def spherical_with_degree(n: SurfaceLike, d: int) -> list[MukaiVector]:
    """All spherical classes of degree d, ordered by rank."""
    nn = half_degree(n)
    m = nn * d * d + 1
    out = []
    for r in divisors(m):
        out.append(MukaiVector(r, d, m // r))
        out.append(MukaiVector(-r, d, -(m // r)))
    out.sort(key=lambda v: v.r)
    return out


def enumerate_spherical(
    n: SurfaceLike,
    d_min: int,
    d_max: int,
    predicate: Optional[Callable[[MukaiVector], bool]] = None,
) -> list[MukaiVector]:
    if not 0 <= d_min <= d_max:
        raise ValueError("need 0 <= d_min <= d_max")
    out: list[MukaiVector] = []
    for d in range(d_min, d_max + 1):
        for v in spherical_with_degree(n, d):
            if predicate is None or predicate(v):
                out.append(v)
    return out


def total(terms: Iterable[tuple[MukaiVector, int]]) -> MukaiVector:
    acc = ZERO
    for v, k in terms:
        acc = acc + v * k
    return acc
