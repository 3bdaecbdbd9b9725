"""Exception hierarchy shared by the library and the command line."""


class WalkError(ValueError):
    """Base error; numeric failures exit with code 1."""

    exit_code = 1


class InputError(WalkError):
    """The caller supplied parameters that violate a precondition."""

    exit_code = 2


class NormalizationError(InputError):
    """An initial spinor does not satisfy |alpha|^2 + |beta|^2 = 1."""


class UnitarityError(InputError):
    """A coin matrix fails the unitarity check."""


class ZeroEntryError(InputError):
    """A scheduled coin has a vanishing entry (abcd must be nonzero)."""


class DegenerateCoinError(InputError):
    """An orthogonal coin angle is a multiple of pi/2."""


class EqualAngleError(InputError):
    """The two coins of a two-period walk coincide."""


class KindError(InputError):
    """An operation was applied to the wrong kind of schedule."""


class DomainError(InputError):
    """An argument lies outside the supported domain."""


class DegenerateSymbolError(WalkError):
    """The two eigenvalues of the Fourier symbol coincide."""


class InternalError(WalkError):
    """An internal consistency check failed."""
