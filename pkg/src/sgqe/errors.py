"""Exception types raised across the package."""


class SGQEError(Exception):
    """Base class for every error raised by sgqe."""


class InvalidParameter(SGQEError, ValueError):
    def __init__(self, field: str, constraint: str):
        self.field = field
        self.constraint = constraint
        super().__init__(f"{field}: {constraint}")


class NegativeTime(SGQEError, ValueError):
    def __init__(self, t: float):
        self.t = t
        super().__init__(f"time must be non-negative, got {t!r}")


class TimeBeforeExit(SGQEError, ValueError):
    """The requested quantity is only defined once the atom has left the cavity."""

    def __init__(self, t: float, transit_time: float):
        self.t = t
        self.transit_time = transit_time
        super().__init__(f"t={t!r} s precedes the cavity exit time T={transit_time!r} s")


class UnconditionedOutcome(SGQEError, ValueError):
    def __init__(self):
        super().__init__("a field-measurement outcome (zero or one photon) is required")


class GridTooNarrow(SGQEError, ValueError):
    pass


class NyquistOverflow(SGQEError, ValueError):
    pass
