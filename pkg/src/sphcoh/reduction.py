"""Wall-by-wall reduction from the Gieseker chamber to just below the BN wall.

The working object starts as a single stable factor.  At each step the next
wall along s = eps is the highest among the numerical walls of adjacent
factors and the actual walls of each factor.  The factors whose classes lie
in that wall's lattice form a contiguous segment, which is replaced by its
below-wall shape.  Below the BN wall the last factor is O_X[1]^h with h = h^1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import NeedsFullLocalReduction, NotActualWall, WallLimitExceeded
from .filtration import (
    Cohomology,
    Factor,
    Shape,
    jh_below_wall,
    make_shape,
    resolve_two_step,
    resolve_type1,
    resolve_type2,
    two_step_branch,
)
from .mukai import (
    O_X,
    O_X_SHIFT,
    MukaiVector,
    SurfaceLike,
    Transform,
    euler_char,
    half_degree,
    normalize_input,
)
from .rank2 import S0, T1, ChainLabel, Rank2Wall, ext1, hom, label_of, wall_lattice
from .walls import (
    WallCircle,
    WallKey,
    actual_walls,
    below,
    lattice_contains,
    numerical_wall,
)

log = logging.getLogger("sphcoh")

DEFAULT_MAX_WALLS = 256


@dataclass(frozen=True)
class TraceStep:
    wall: WallCircle
    wall_key: WallKey
    lattice: Rank2Wall
    segment_range: tuple[int, int]
    rule: str
    shape_before: Shape
    shape_after: Shape
    note: Optional[str] = None


@dataclass
class Trace:
    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def g_values(self) -> list[int]:
        return [s.lattice.g for s in self.steps]


def _delta(u: MukaiVector, w: MukaiVector) -> int:
    return u.r * w.d - w.r * u.d


def next_wall(
    n: SurfaceLike, shape: Shape, bound: Optional[WallKey]
) -> Optional[tuple[WallCircle, Rank2Wall, tuple[int, int]]]:
    nn = half_degree(n)
    bn = Fraction(1, nn)
    keys: list[WallKey] = []
    for f, h in zip(shape.factors, shape.factors[1:]):
        if _delta(f.cls, h.cls) == 0:
            continue
        key = numerical_wall(nn, f.cls, h.cls).key
        if key.t0_sq >= bn and below(key, bound):
            keys.append(key)
    for f in shape.factors:
        if f.cls == O_X_SHIFT:
            continue
        found = actual_walls(nn, f.cls, bound)
        if found:
            keys.append(found[0])
    if not keys:
        return None
    key = max(keys)
    inside = [i for i, f in enumerate(shape.factors) if lattice_contains(nn, key, f.cls)]
    i, j = inside[0], inside[-1]
    if inside != list(range(i, j + 1)):
        raise NotActualWall(f"segment on wall {key} is not contiguous: {inside}")
    lattice = wall_lattice(nn, key, [shape[k].cls for k in range(i, j + 1)])
    return WallCircle.from_key(key, (lattice.s0, lattice.t1)), lattice, (i, j)


def cross_wall(lattice: Rank2Wall, segment: Shape) -> tuple[Shape, str]:
    """Below-wall shape of a segment given by its above-wall factors."""
    w = lattice
    labels: list[ChainLabel] = []
    for f in segment:
        lab = label_of(w, f.cls)
        if lab is None:
            raise NotActualWall(f"{f.cls} is not a stable chain class of {w}")
        labels.append(lab)
    if len(segment) == 1:
        lab, q = labels[0], segment[0].mult
        if lab.is_base:
            return make_shape([Factor(segment[0].cls, q, lab)]), "reorder"
        jh = jh_below_wall(w, lab)
        return make_shape([Factor(f.cls, f.mult * q, f.label) for f in jh]), "jh"
    if len(segment) == 2:
        X, Y = labels
        q, p = segment[0].mult, segment[1].mult
        if w.g == 0:
            return make_shape([Factor(segment[1].cls, p, Y), Factor(segment[0].cls, q, X)]), "reorder"
        if X == T1 and Y == S0:
            return resolve_type1(w, p, q), "type1"
        if X == T1:
            return resolve_type2(w, q, Y, p, "T-base"), "type2"
        if Y == S0:
            return resolve_type2(w, q, X, p, "S-base"), "type2"
        if X.is_base or Y.is_base:
            raise NotActualWall(f"segment {segment} is out of phase order for {w}")
        return resolve_two_step(w, X, q, Y, p), "two_step"
    raise NeedsFullLocalReduction(
        f"segment with {len(segment)} factor classes at wall g={w.g}", segment=segment, lattice=w
    )


def _note_for(lattice: Rank2Wall, segment: Shape, rule: str) -> Optional[str]:
    if rule != "two_step":
        return None
    X = label_of(lattice, segment[0].cls)
    Y = label_of(lattice, segment[1].cls)
    branch = two_step_branch(lattice, X, segment[0].mult, Y, segment[1].mult)
    q, p = segment[0].mult, segment[1].mult
    both = p * hom(lattice, S0, Y) <= q * ext1(lattice, S0, X) and q * hom(lattice, X, T1) <= p * ext1(
        lattice, Y, T1
    )
    return f"branch {branch}" + (" (both inequalities hold)" if both else "")


def reduce_shape(
    n: SurfaceLike,
    shape: Shape,
    start: Optional[WallKey] = None,
    max_walls: int = DEFAULT_MAX_WALLS,
    trace: Optional[Trace] = None,
) -> tuple[Shape, Trace]:
    """Walk `shape` (stable factors just below `start`) down past the BN wall."""
    nn = half_degree(n)
    trace = trace if trace is not None else Trace()
    target = shape.total()
    bound = start
    while True:
        found = next_wall(nn, shape, bound)
        if found is None:
            break
        if len(trace) >= max_walls:
            raise WallLimitExceeded(f"more than {max_walls} wall crossings")
        circle, lattice, (i, j) = found
        key = circle.key
        segment = Shape(shape.factors[i : j + 1])
        try:
            replaced, rule = cross_wall(lattice, segment)
        except NeedsFullLocalReduction as exc:
            exc.trace = trace
            exc.segment = segment
            raise
        new = make_shape(list(shape.factors[:i]) + list(replaced) + list(shape.factors[j + 1 :]))
        if new.total() != target:
            raise AssertionError(f"class not conserved at {key}")
        if not new.in_phase_order(nn, key):
            raise AssertionError(f"shape {new} is not in phase order below {key}")
        step = TraceStep(circle, key, lattice, (i, j), rule, shape, new, _note_for(lattice, segment, rule))
        trace.steps.append(step)
        log.debug("wall %s g=%d segment %s rule %s -> %s", key, lattice.g, segment, rule, new)
        shape = new
        bound = key
    return shape, trace


def read_cohomology(n: SurfaceLike, shape: Shape) -> Cohomology:
    """Cohomology of an object from its shape just below the BN wall."""
    total = shape.total()
    if shape.classes() == [O_X_SHIFT] and shape[0].mult == 1:
        return Cohomology(h0=0, h1=1, hm1=1)
    h1 = 0
    for k, f in enumerate(shape):
        if f.cls == O_X_SHIFT:
            if k != len(shape) - 1:
                raise AssertionError(f"O_X[1] is not the last factor of {shape}")
            h1 = f.mult
        elif f.cls.d <= 0:
            raise AssertionError(f"factor {f.cls} of the terminal shape has d <= 0")
    return Cohomology(h0=h1 + euler_char(n, total), h1=h1)


def cohomology_below(
    n: SurfaceLike, x: MukaiVector, start: Optional[WallKey], max_walls: int = DEFAULT_MAX_WALLS
) -> Cohomology:
    """Cohomology of the object of class x that is stable just below `start`."""
    if x == O_X_SHIFT:
        return Cohomology(h0=0, h1=1, hm1=1)
    shape, _ = reduce_shape(n, Shape((Factor(x, 1),)), start, max_walls)
    return read_cohomology(n, shape)


@dataclass(frozen=True)
class CohomologyResult:
    n: int
    input: MukaiVector
    normalized: MukaiVector
    transform: Transform
    h0: int
    h1: int
    h2: int
    trace: Trace
    terminal: Shape

    @property
    def chi(self) -> int:
        return self.h0 - self.h1 + self.h2

    @property
    def input_cohomology(self) -> tuple[int, int, int]:
        """(h0, h1, h2) of the query class itself."""
        if self.transform.dualized:
            return self.h2, self.h1, self.h0
        return self.h0, self.h1, self.h2


def cohomology(n: SurfaceLike, v: MukaiVector, max_walls: int = DEFAULT_MAX_WALLS) -> CohomologyResult:
    nn = half_degree(n)
    w, transform = normalize_input(nn, v)
    if transform.special == "O_X":
        shape = Shape((Factor(O_X, 1),))
        return CohomologyResult(nn, v, w, transform, 1, 0, 1, Trace(), shape)
    shape, trace = reduce_shape(nn, Shape((Factor(w, 1),)), None, max_walls)
    c = read_cohomology(nn, shape)
    if c.h0 < 0:
        raise AssertionError(f"negative h0 for {w}")
    return CohomologyResult(nn, v, w, transform, c.h0, c.h1, 0, trace, shape)
