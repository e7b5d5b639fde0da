from enum import Enum


class MeasurementOutcome(Enum):
    """Record of the cavity field measurement after the atom has left."""

    ZERO_PHOTONS = "zero"
    ONE_PHOTON = "one"
    UNCONDITIONED = "none"

    @property
    def sign(self) -> int:
        """+1 for the fringe channel, -1 for the antifringe channel."""
        if self is MeasurementOutcome.UNCONDITIONED:
            raise ValueError("no interference sign for the unconditioned ensemble")
        return 1 if self is MeasurementOutcome.ZERO_PHOTONS else -1
