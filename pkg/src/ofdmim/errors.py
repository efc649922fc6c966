"""Exception types raised by the library.

Everything a caller can trigger with bad input derives from
:class:`OfdmImError`, itself a :class:`ValueError`.
"""


class OfdmImError(ValueError):
    pass


class DimensionError(OfdmImError):
    """Table or configuration dimensions are inconsistent."""


class RankOutOfRange(OfdmImError):
    """Rank outside ``[0, C(n, k))`` or outside a LUT's index range."""


class PatternError(OfdmImError):
    """Index list is not a strictly decreasing pattern of the right length."""


class TableCapacityError(OfdmImError):
    """A lookup table would exceed its configured size budget."""


class BitLengthError(OfdmImError):
    pass


class ModulationError(OfdmImError):
    pass


class SymbolError(OfdmImError):
    """A mapped symbol cannot be inverted."""
