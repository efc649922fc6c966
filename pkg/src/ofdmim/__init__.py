"""OFDM with index modulation: a bit-to-symbol mapper whose index selector
reads binomial coefficients from a Pascal's triangle table."""

from .combinadics import (
    DEFAULT_LUT_CAP,
    FullLut,
    IndexPattern,
    PascalTable,
    binomial_multiplicative,
    build_full_lut,
    build_pascal_table,
    colex_patterns,
    index_bits,
    rank,
    unrank_baseline,
    unrank_pt,
)
from .errors import OfdmImError, RankOutOfRange, TableCapacityError
from .mapper import (
    BACKENDS,
    OfdmImConfig,
    demap_symbol,
    format_symbol,
    make_selector,
    map_symbol,
    modulate,
    parse_symbol,
    split_bits,
)

__version__ = "0.1.0"
