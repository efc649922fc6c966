"""Mapping runtime, throughput and table-size measurements.

Times are steady-state: selector tables are built before the clock starts,
warmup calls are discarded, and the reported figure is the mean over the
timed calls.
"""

from __future__ import annotations

import csv
import gc
import io
import math
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import psutil

from .combinadics import DEFAULT_LUT_CAP, build_full_lut, build_pascal_table, index_bits
from .errors import DimensionError, TableCapacityError
from .mapper import BACKENDS, BaselineSelector, LutSelector, OfdmImConfig, PtSelector, Selector, make_selector, map_symbol

CSV_HEADER = (
    "n",
    "k",
    "m_ary",
    "backend",
    "trials",
    "mean_map_time_s",
    "throughput_bits_per_s",
    "pt_entries",
    "lut_entries",
)


@dataclass(frozen=True)
class BenchRecord:
    n: int
    k: int
    m_ary: int
    backend: str
    trials: int
    mean_map_time: float | None  # None when the backend's table was over budget
    m_total: int
    pt_entries: int
    lut_entries: int | None  # None on capped lut rows

    @property
    def throughput(self) -> float | None:
        """Mapped bits per second."""
        if self.mean_map_time is None:
            return None
        return self.m_total / self.mean_map_time

    @property
    def capped(self) -> bool:
        return self.mean_map_time is None


@dataclass(frozen=True)
class AsymptoticsRow:
    n: int
    p1: int
    approx: float
    ratio: float


def default_pt_budget() -> int:
    """Half of the currently available physical memory, in bytes."""
    return psutil.virtual_memory().available // 2


def random_words(cfg: OfdmImConfig, count: int, seed: int) -> np.ndarray:
    """``count`` uniform words of ``cfg.m_total`` bits, one per row."""
    rng = np.random.default_rng(seed)
    return rng.integers(0, 2, size=(count, cfg.m_total), dtype=np.uint8)


def measure_map_time(
    cfg: OfdmImConfig,
    backend: str | Selector,
    trials: int,
    warmup: int = 0,
    seed: int = 0,
    *,
    lut_cap: int = DEFAULT_LUT_CAP,
    pt_max_bytes: int | None = None,
) -> float:
    """Mean wall-clock seconds per :func:`map_symbol` call.

    Table construction happens before timing.  Over-budget tables raise
    :class:`TableCapacityError`.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if warmup < 0:
        raise ValueError(f"warmup must be >= 0, got {warmup}")
    if isinstance(backend, str):
        selector = make_selector(cfg, backend, lut_cap=lut_cap, pt_max_bytes=pt_max_bytes)
    else:
        selector = backend
    words = random_words(cfg, warmup + trials, seed)

    for w in words[:warmup]:
        map_symbol(w, cfg, selector)

    clock = time.perf_counter
    total = 0.0
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for w in words[warmup:]:
            t0 = clock()
            map_symbol(w, cfg, selector)
            total += clock() - t0
    finally:
        if gc_was_enabled:
            gc.enable()
    return total / trials


def _check_sweep_args(n_values, m_ary_values, backends):
    for n in n_values:
        if n < 2 or n % 2:
            raise DimensionError(f"sweep needs even n >= 2, got {n}")
    for m in m_ary_values:
        OfdmImConfig(2, 1, m)
    for b in backends:
        if b not in BACKENDS:
            raise ValueError(f"unknown backend {b!r}, expected one of {BACKENDS}")


def sweep(
    n_values: Sequence[int],
    m_ary_values: Sequence[int] = (2,),
    backends: Sequence[str] = BACKENDS,
    trials: int = 100,
    warmup: int = 10,
    seed: int = 0,
    *,
    lut_cap: int = DEFAULT_LUT_CAP,
    pt_max_bytes: int | None = None,
) -> list[BenchRecord]:
    """One record per (n, M, backend) with k = n/2.

    A backend whose table would exceed its budget yields a capped record
    (no timing) instead of failing the sweep.  ``pt_max_bytes`` defaults to
    :func:`default_pt_budget` evaluated per n.
    """
    _check_sweep_args(n_values, m_ary_values, backends)
    records = []
    for n in n_values:
        k = n // 2
        p1 = index_bits(n, k)
        selectors: dict[str, Selector | None] = {}
        for backend in backends:
            try:
                if backend == "baseline":
                    selectors[backend] = BaselineSelector(n, k)
                elif backend == "pt":
                    budget = default_pt_budget() if pt_max_bytes is None else pt_max_bytes
                    selectors[backend] = PtSelector(n, k, build_pascal_table(n, k, budget))
                else:
                    selectors[backend] = LutSelector(n, k, build_full_lut(n, k, lut_cap))
            except TableCapacityError:
                selectors[backend] = None

        for m_ary in m_ary_values:
            cfg = OfdmImConfig(n, k, m_ary)
            for backend in backends:
                selector = selectors[backend]
                mean = None
                if selector is not None:
                    mean = measure_map_time(cfg, selector, trials, warmup, seed)
                capped_lut = backend == "lut" and selector is None
                records.append(
                    BenchRecord(
                        n=n,
                        k=k,
                        m_ary=m_ary,
                        backend=backend,
                        trials=trials,
                        mean_map_time=mean,
                        m_total=cfg.m_total,
                        pt_entries=n * k,
                        lut_entries=None if capped_lut else 1 << p1,
                    )
                )
        del selectors
        gc.collect()
    return records


def loglog_slope(n_values: Iterable[float], times: Iterable[float]) -> float:
    """Least-squares slope of log(time) against log(n)."""
    x = np.log(np.asarray(list(n_values), dtype=np.float64))
    y = np.log(np.asarray(list(times), dtype=np.float64))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def fit_scaling_exponent(records: Sequence[BenchRecord]) -> float:
    """Empirical exponent of mean map time in n for one backend."""
    backends = {r.backend for r in records}
    if len(backends) > 1:
        raise ValueError(f"records mix backends {sorted(backends)}")
    timed = [r for r in records if r.mean_map_time is not None]
    if len({r.n for r in timed}) < 4 or len(timed) != len({r.n for r in timed}):
        raise ValueError("need at least 4 timed records with distinct n")
    return loglog_slope([r.n for r in timed], [r.mean_map_time for r in timed])


def asymptotics_report(n_values: Sequence[int]) -> list[AsymptoticsRow]:
    """Exact p1 for k = n/2 against its large-n approximation n - log2(sqrt(n))."""
    rows = []
    for n in n_values:
        if n < 2 or n % 2:
            raise DimensionError(f"asymptotics need even n >= 2, got {n}")
        p1 = index_bits(n, n // 2)
        approx = n - 0.5 * math.log2(n)
        rows.append(AsymptoticsRow(n, p1, approx, p1 / approx))
    return rows


@contextmanager
def _unbounded_int_str():
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def _fmt_float(v: float | None) -> str:
    return "NA" if v is None else repr(v)


def records_to_csv(records: Iterable[BenchRecord], out=None) -> str:
    """Write records as CSV; returns the text when ``out`` is None."""
    buf = io.StringIO() if out is None else out
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    with _unbounded_int_str():
        for r in records:
            writer.writerow(
                [
                    r.n,
                    r.k,
                    r.m_ary,
                    r.backend,
                    r.trials,
                    _fmt_float(r.mean_map_time),
                    _fmt_float(r.throughput),
                    r.pt_entries,
                    "NA" if r.lut_entries is None else str(r.lut_entries),
                ]
            )
    return buf.getvalue() if out is None else ""


def asymptotics_to_csv(rows: Iterable[AsymptoticsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("n", "p1", "n_minus_log2_sqrt_n", "ratio"))
    for r in rows:
        writer.writerow([r.n, r.p1, repr(r.approx), repr(r.ratio)])
    return buf.getvalue()
