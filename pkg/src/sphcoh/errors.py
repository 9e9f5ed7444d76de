"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SphcohError(Exception):
    """Base class for all library errors."""

    code = "error"


class InputError(SphcohError):
    """The query itself is unusable (bad class, bad flags)."""


class NotSpherical(InputError):
    code = "not-spherical"


class ZeroRank(InputError):
    code = "zero-rank"


class NonPositive(InputError):
    code = "non-positive"


class DegreeTwoUnsupported(InputError):
    code = "degree-two-unsupported"


class DegreeZeroNontrivial(SphcohError):
    code = "degree-zero-nontrivial"


class ProportionalClasses(SphcohError):
    code = "proportional-classes"


class NotActualWall(SphcohError):
    code = "not-actual-wall"


class NotInLattice(SphcohError):
    code = "not-in-lattice"


class UnsupportedPair(SphcohError):
    code = "unsupported-pair"


class RigidityViolated(SphcohError):
    code = "rigidity-violated"


class NoNonnegativeSolution(SphcohError):
    code = "no-nonnegative-solution"


class NeitherSideInjective(SphcohError):
    code = "neither-side-injective"


class HeightTooLarge(SphcohError):
    code = "height-too-large"


class WallLimitExceeded(SphcohError):
    code = "wall-limit-exceeded"


class IoError(SphcohError):
    code = "io-error"


class NeedsFullLocalReduction(SphcohError):
    """A wall crossing outside the simplified resolutions.

    Carries the stuck segment and the trace recorded before the failure so
    callers can report how far the reduction got.
    """

    code = "needs-full-local-reduction"

    def __init__(self, message: str, segment=None, trace=None, lattice=None):
        super().__init__(message)
        self.segment = segment
        self.trace = trace
        self.lattice = lattice
