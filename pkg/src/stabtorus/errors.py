"""Exception taxonomy shared across the package.

Every domain failure raises one of these, so the CLI can map any of them to
exit code 2 with a structured payload. Keep the class names stable: they are
part of the JSON error contract ({"error": {"name": ..., "message": ...}}).
"""


class StabTorusError(Exception):
    """Base class for all domain errors raised by this package."""


class ZeroCharge(StabTorusError):
    """A central charge vanished where a nonzero value was required."""


class NoPhaseInWindow(StabTorusError):
    """No representative of the phase (mod 2) lies in the requested window."""


class UnsupportedSpectrum(StabTorusError):
    """The requested label does not carry the data needed for this operation."""


class NotInHeart(StabTorusError):
    """The object does not belong to the abelian category in play."""


class MissingHNData(StabTorusError):
    """A torsion-free piece needs declared filtration data and has none."""


class InvalidTorsionPair(StabTorusError):
    """The decomposition rules do not define a torsion pair on this heart."""


class InconsistentMorphism(StabTorusError):
    """Declared structure contradicts itself (classes, phases, or flags)."""


class DomainError(StabTorusError):
    """An argument is outside the domain the operation is defined on."""


class NotNumericallyConsistent(StabTorusError):
    """The numerical data cannot come from a single point of the cover."""


class NotInU(StabTorusError):
    """The data is consistent but the point lies outside the modeled region."""


class OnSpectrum(StabTorusError):
    """The value coincides with a spectrum point, so one-sided data is undefined."""


class NeverEscapes(StabTorusError):
    """The twisting iteration provably never crosses the requested bound."""


class Disconnected(StabTorusError):
    """The complex is not connected, so a single fundamental group is undefined."""
