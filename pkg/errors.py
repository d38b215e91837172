class BesselLabError(Exception):
    """Base class for every error raised by the library."""


class DivisionByZero(BesselLabError, ZeroDivisionError):
    pass


class NotExpandable(BesselLabError, ValueError):
    """The denominator has no invertible constant term in the series variable."""


class UnsupportedPrime(BesselLabError, ValueError):
    pass


class CaseMismatch(BesselLabError, ValueError):
    pass


class InconsistentProbe(BesselLabError, ValueError):
    """Two coset representatives of one double coset carry different values."""


class NotSymplectic(BesselLabError, ValueError):
    pass


class NotInvertible(BesselLabError, ZeroDivisionError):
    pass


class DegenerateD(BesselLabError, ValueError):
    pass


class RestrictionViolated(BesselLabError, ValueError):
    """A specialized Satake parameter hits a value excluded for its type."""


class Inexpressible(BesselLabError, ValueError):
    """The stored character values cannot decide an existence condition."""


class OutOfStatedRange(BesselLabError, ValueError):
    pass


class UnsupportedIndex(BesselLabError, ValueError):
    pass


class EmptyWindow(BesselLabError, ValueError):
    pass


class ConfigError(BesselLabError, ValueError):
    pass
