"""Shared fixtures data for the test suite: the small sweep and the criterion recorder."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from sphcoh.errors import NeedsFullLocalReduction
from sphcoh.mukai import MukaiVector, enumerate_spherical
from sphcoh.reduction import CohomologyResult, cohomology

CRITERIA: list[tuple[int, str, bool, str]] = []


@contextmanager
def criterion(number: int, title: str):
    """Record one acceptance line; the assertion error still propagates."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        CRITERIA.append((number, title, False, f"{type(exc).__name__}: {exc}"[:200]))
        raise
    CRITERIA.append((number, title, True, f"{time.perf_counter() - start:.2f}s"))


@dataclass(frozen=True)
class SweepEntry:
    n: int
    v: MukaiVector
    result: Optional[CohomologyResult]
    stuck: bool


def sweep_classes(ns=(1, 2, 3), d_max: int = 12) -> list[tuple[int, MukaiVector]]:
    out = []
    for n in ns:
        for v in enumerate_spherical(n, 1, d_max, lambda v: v.r > 0):
            out.append((n, v))
    return out


@lru_cache(maxsize=None)
def sweep(ns=(1, 2, 3), d_max: int = 12) -> tuple[SweepEntry, ...]:
    out = []
    for n, v in sweep_classes(ns, d_max):
        try:
            out.append(SweepEntry(n, v, cohomology(n, v), False))
        except NeedsFullLocalReduction:
            out.append(SweepEntry(n, v, None, True))
    return tuple(out)
