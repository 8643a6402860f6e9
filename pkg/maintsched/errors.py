#!/usr/bin/env python3

"""Exceptions raised by :mod:`maintsched`.

Every error derives from :class:`SchedulingError`, so callers that only
care whether an operation worked can catch a single type.

"""


class SchedulingError(Exception):
    """Base class for all errors raised by this package."""


####################################################################
# Instance and schedule errors
####################################################################


class InfeasibleJob(SchedulingError, ValueError):
    """A job deteriorates the machine more than ``ml_max``.

    No maintenance activity can raise the level above ``ml_max``, so such
    a job can never be processed.

    """

    def __init__(self, index, delta, ml_max):
        """Create new :class:`InfeasibleJob` for job ``index``."""
        super().__init__(f"job {index} has delta {delta} > ml_max {ml_max}")
        self.index = index
        self.delta = delta
        self.ml_max = ml_max


class InvalidPermutation(SchedulingError, ValueError):
    """Job order is not a permutation of the instance's job indices."""


class MalformedSchedule(SchedulingError, ValueError):
    """Schedule refers to positions the job order does not have."""


class InfeasibleSchedule(SchedulingError, ValueError):
    """Schedule breaks the machine or over-maintains it."""


class NotCanonical(SchedulingError, ValueError):
    """Maintenance activities differ from the canonical placement.

    Raised by :func:`~maintsched.approx.audit_lemma2`, which only judges
    schedules whose activities are as late and as short as possible.

    """


class ArithmeticOverflow(SchedulingError, OverflowError):
    """A running sum left the unsigned 64-bit range."""


class TooLarge(SchedulingError, ValueError):
    """Instance is too large for an exhaustive method."""

    def __init__(self, n, limit):
        """Create new :class:`TooLarge` for ``n`` jobs over ``limit``."""
        super().__init__(f"{n} jobs exceed the limit of {limit}")
        self.n = n
        self.limit = limit


####################################################################
# Reduction errors
####################################################################


class InvalidPartition(SchedulingError, ValueError):
    """Partition input holds a non-positive integer or is empty."""


class OddSum(InvalidPartition):
    """Partition input sums to an odd number and has no half-sum."""


class InvalidSubset(SchedulingError, ValueError):
    """Subset indices are unsorted, repeated or out of ``1..n``."""


class CertificateViolated(SchedulingError):
    """A swap did not change the schedule by the expected amounts.

    Each swap of the certificate must raise the total completion time by
    ``x`` and lower the deterioration before the center job by ``2x``.

    """


class NotWithinThreshold(SchedulingError, ValueError):
    """Schedule's total completion time exceeds the threshold ``Q``."""


####################################################################
# Input errors
####################################################################


class InstanceFormatError(SchedulingError, ValueError):
    """JSON input is malformed or has invalid fields."""


class InvalidParameter(SchedulingError, ValueError):
    """Generator or command parameter is out of range."""
