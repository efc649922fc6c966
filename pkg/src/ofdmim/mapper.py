"""OFDM-IM bit-to-symbol mapper and its noiseless inverse.

An m-bit word is split into p1 index bits, which select the k active
subcarriers, and p2 = k*log2(M) constellation bits, which set the values
on them.  Index bits come first and both groups are read MSB first.  The
i-th constellation point lands on the i-th index of the pattern, i.e.
points fill active subcarriers from the highest index down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .combinadics import (
    DEFAULT_LUT_CAP,
    FullLut,
    IndexPattern,
    PascalTable,
    build_full_lut,
    build_pascal_table,
    index_bits,
    rank,
    unrank_baseline,
    unrank_pt,
)
from .errors import BitLengthError, DimensionError, ModulationError, SymbolError

BACKENDS = ("baseline", "pt", "lut")

_SQRT1_2 = 1 / math.sqrt(2)

# label (bit group read MSB first) -> point
CONSTELLATIONS = {
    2: np.array([1.0, -1.0], dtype=np.complex128),
    4: np.array(
        [
            complex(_SQRT1_2, _SQRT1_2),  # 00
            complex(-_SQRT1_2, _SQRT1_2),  # 01
            complex(_SQRT1_2, -_SQRT1_2),  # 10
            complex(-_SQRT1_2, -_SQRT1_2),  # 11
        ]
    ),
}

DECIMALS = 12


@dataclass(frozen=True)
class OfdmImConfig:
    """Subcarrier count ``n``, active count ``k`` and constellation order ``m_ary``."""

    n: int
    k: int
    m_ary: int = 2
    p1: int = field(init=False)
    p2: int = field(init=False)
    m_total: int = field(init=False)

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.k <= self.n:
            raise DimensionError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.m_ary < 2 or self.m_ary & (self.m_ary - 1):
            raise DimensionError(f"M must be a power of two >= 2, got {self.m_ary}")
        p1 = index_bits(self.n, self.k)
        p2 = self.k * self.bits_per_point
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "m_total", p1 + p2)

    @property
    def bits_per_point(self) -> int:
        return self.m_ary.bit_length() - 1

    @property
    def is_ideal(self) -> bool:
        return self.n % 2 == 0 and self.k == self.n // 2 and self.m_ary == 2

    @classmethod
    def ideal(cls, n: int, m_ary: int = 2) -> "OfdmImConfig":
        """k = n/2 configuration used by the benchmarks."""
        if n % 2:
            raise DimensionError(f"ideal setup needs even n, got {n}")
        return cls(n, n // 2, m_ary)


class Selector:
    """Maps a rank to an index pattern for a fixed (n, k)."""

    name = ""

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k

    def unrank(self, x: int) -> IndexPattern:
        raise NotImplementedError


class BaselineSelector(Selector):
    name = "baseline"

    def unrank(self, x: int) -> IndexPattern:
        return unrank_baseline(x, self.n, self.k)


class PtSelector(Selector):
    name = "pt"

    def __init__(self, n: int, k: int, table: PascalTable | None = None, max_bytes: int | None = None):
        super().__init__(n, k)
        self.table = table if table is not None else build_pascal_table(n, k, max_bytes)

    def unrank(self, x: int) -> IndexPattern:
        return unrank_pt(x, self.table, self.n, self.k)


class LutSelector(Selector):
    name = "lut"

    def __init__(self, n: int, k: int, lut: FullLut | None = None, max_entries: int = DEFAULT_LUT_CAP):
        super().__init__(n, k)
        self.lut = lut if lut is not None else build_full_lut(n, k, max_entries)

    def unrank(self, x: int) -> IndexPattern:
        return self.lut.lookup(x)


def make_selector(
    cfg: OfdmImConfig,
    backend: str,
    *,
    lut_cap: int = DEFAULT_LUT_CAP,
    pt_max_bytes: int | None = None,
) -> Selector:
    if backend == "baseline":
        return BaselineSelector(cfg.n, cfg.k)
    if backend == "pt":
        return PtSelector(cfg.n, cfg.k, max_bytes=pt_max_bytes)
    if backend == "lut":
        return LutSelector(cfg.n, cfg.k, max_entries=lut_cap)
    raise ValueError(f"unknown backend {backend!r}, expected one of {BACKENDS}")


def as_bits(bits) -> np.ndarray:
    """Coerce a 0/1 sequence or a '0101' string to a uint8 array."""
    if isinstance(bits, str):
        if bits.strip("01"):
            raise BitLengthError(f"bit string may only contain 0 and 1: {bits!r}")
        return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    arr = np.asarray(bits, dtype=np.uint8).reshape(-1)
    if arr.size and arr.max() > 1:
        raise BitLengthError("bits must be 0 or 1")
    return arr


def bits_to_int(bits: np.ndarray) -> int:
    """Unsigned big-endian value of a bit array."""
    if bits.size == 0:
        return 0
    pad = -bits.size % 8
    return int.from_bytes(np.packbits(bits).tobytes(), "big") >> pad


def int_to_bits(x: int, width: int) -> np.ndarray:
    if width == 0:
        return np.zeros(0, dtype=np.uint8)
    nbytes = (width + 7) // 8
    raw = np.frombuffer(x.to_bytes(nbytes, "big"), dtype=np.uint8)
    return np.unpackbits(raw)[nbytes * 8 - width :]


def split_bits(word, cfg: OfdmImConfig) -> tuple[int, np.ndarray]:
    """Split a word into its index rank and constellation bits."""
    bits = as_bits(word)
    if bits.size != cfg.m_total:
        raise BitLengthError(f"word has {bits.size} bits, config needs p1 + p2 = {cfg.m_total}")
    return bits_to_int(bits[: cfg.p1]), bits[cfg.p1 :]


def constellation_map(bits, m_ary: int) -> np.ndarray:
    """Map consecutive groups of log2(M) bits to constellation points."""
    points = CONSTELLATIONS.get(m_ary)
    if points is None:
        raise ModulationError(f"M={m_ary} not supported, expected one of {sorted(CONSTELLATIONS)}")
    bits = as_bits(bits)
    b = m_ary.bit_length() - 1
    if bits.size % b:
        raise BitLengthError(f"{bits.size} bits do not split into groups of {b}")
    if b == 1:
        return points[bits]
    labels = bits.reshape(-1, b) @ (1 << np.arange(b - 1, -1, -1))
    return points[labels]


def modulate(sym_bits, cfg: OfdmImConfig) -> np.ndarray:
    bits = as_bits(sym_bits)
    if bits.size != cfg.p2:
        raise BitLengthError(f"got {bits.size} constellation bits, config needs {cfg.p2}")
    return constellation_map(bits, cfg.m_ary)


def map_symbol(word, cfg: OfdmImConfig, backend: Union[str, Selector] = "pt") -> np.ndarray:
    """Map one word to a length-n complex symbol.

    ``backend`` is a backend name or a prebuilt :class:`Selector`; pass a
    selector when mapping many words so its table is built once.
    """
    selector = make_selector(cfg, backend) if isinstance(backend, str) else backend
    x, sym_bits = split_bits(word, cfg)
    pattern = selector.unrank(x)
    samples = np.zeros(cfg.n, dtype=np.complex128)
    samples[list(pattern)] = modulate(sym_bits, cfg)
    return samples


def active_pattern(sym, cfg: OfdmImConfig) -> IndexPattern:
    """Decreasing positions of the nonzero samples."""
    s = np.asarray(sym, dtype=np.complex128)
    nz = np.flatnonzero((np.round(s.real, DECIMALS) != 0) | (np.round(s.imag, DECIMALS) != 0))
    return tuple(int(c) for c in nz[::-1])


def demap_symbol(sym, cfg: OfdmImConfig) -> np.ndarray:
    """Recover the word that :func:`map_symbol` turned into ``sym``."""
    s = np.asarray(sym, dtype=np.complex128).reshape(-1)
    if s.size != cfg.n:
        raise SymbolError(f"symbol has {s.size} samples, config has n={cfg.n}")
    pattern = active_pattern(s, cfg)
    if len(pattern) != cfg.k:
        raise SymbolError(f"symbol has {len(pattern)} active subcarriers, expected k={cfg.k}")
    x = rank(pattern, cfg.k)
    if x >> cfg.p1:
        raise SymbolError(f"pattern {pattern} has rank {x}, beyond the 2**{cfg.p1} mapped patterns")

    points = CONSTELLATIONS.get(cfg.m_ary)
    if points is None:
        raise ModulationError(f"M={cfg.m_ary} not supported")
    lookup = {
        (float(re), float(im)): label
        for label, (re, im) in enumerate(zip(np.round(points.real, DECIMALS), np.round(points.imag, DECIMALS)))
    }
    active = s[list(pattern)]
    labels = []
    for re, im in zip(np.round(active.real, DECIMALS), np.round(active.imag, DECIMALS)):
        label = lookup.get((float(re), float(im)))
        if label is None:
            raise SymbolError(f"sample {complex(re, im)} is not a point of the M={cfg.m_ary} constellation")
        labels.append(label)

    b = cfg.bits_per_point
    sym_bits = (np.array(labels, dtype=np.int64)[:, None] >> np.arange(b - 1, -1, -1)) & 1
    return np.concatenate([int_to_bits(x, cfg.p1), sym_bits.astype(np.uint8).reshape(-1)])


def format_bits(bits) -> str:
    return "".join("1" if b else "0" for b in as_bits(bits))


def _format_sample(v: complex) -> str:
    re = round(v.real, DECIMALS) + 0.0
    im = round(v.imag, DECIMALS) + 0.0
    if re == 0 and im == 0:
        return "0"
    return f"{re:+.{DECIMALS}f}{im:+.{DECIMALS}f}j"


def format_symbol(sym: Sequence[complex]) -> str:
    """One line of comma-separated samples; inactive subcarriers print as ``0``."""
    return ",".join(_format_sample(complex(v)) for v in sym)


def parse_symbol(line: str) -> np.ndarray:
    fields = line.strip().split(",")
    try:
        return np.array([complex(f.strip()) for f in fields], dtype=np.complex128)
    except ValueError as exc:
        raise SymbolError(f"cannot parse symbol line: {exc}") from None
