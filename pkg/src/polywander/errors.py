"""Exception types shared across the package."""


class PolywanderError(Exception):
    """Base class for all package-specific errors."""


class AngleSyntaxError(PolywanderError, ValueError):
    """Malformed angle literal."""


class UnknownGeneratorError(AngleSyntaxError):
    """Angle literal references a generator that is not registered."""


class BaseMismatchError(PolywanderError, ValueError):
    """Digit-stream base differs from the dynamical degree in use."""


class UnresolvedComparison(PolywanderError):
    """A comparison could not be decided within the precision budget."""


class NotInjectiveError(PolywanderError):
    """The map collapses two vertices of the set under analysis."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NonInjectiveAtStep(PolywanderError):
    """Orbit iteration hit a non-injective step."""

    def __init__(self, step, records=()):
        super().__init__(f"map is not injective on the polygon at step {step}")
        self.step = step
        self.records = list(records)


class DegenerateChordError(PolywanderError, ValueError):
    """Operation requires a non-degenerate chord."""


class ChordsCrossError(PolywanderError):
    """Chord interiors intersect inside the open disk."""


class PreconditionError(PolywanderError, ValueError):
    """A documented precondition of an operation was violated."""


class NoBurnInWithinHorizon(PolywanderError):
    """No recorded index satisfies the burn-in conditions through the horizon."""


class NoHoleExceeds1OverD(PolywanderError):
    """No hole is longer than 1/d; signals an orientation failure upstream."""


class TieUnresolvable(PolywanderError):
    """Two candidate critical holes share the minimal remainder."""


class AssertionBreach(PolywanderError):
    """A fact guaranteed for genuine wandering inputs failed; a precondition
    (burn-in, wandering, precision) was violated."""


class TooFewJumps(PolywanderError):
    """Gap statistics need at least two jumps."""


class EnclosureTooWide(PolywanderError):
    """An enclosure straddles a boundary; raise precision or extend burn-in."""


class NotCertifiedWandering(PolywanderError):
    """Input failed finite-horizon wandering certification."""

    def __init__(self, certificate, member=None):
        self.certificate = certificate
        self.member = member
        where = "" if member is None else f" (collection member {member})"
        super().__init__(f"not certified wandering{where}: {certificate.status}")


class CrossPairLinked(PolywanderError):
    """Two collection members have linked iterates."""

    def __init__(self, a_index, n, b_index, m):
        self.a_index = a_index
        self.n = n
        self.b_index = b_index
        self.m = m
        super().__init__(
            f"iterate {n} of member {a_index} is linked with iterate {m} of member {b_index}"
        )
