"""Timing of the rank-1 mass application against a dense matrix-vector product."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits

from ..mass import build_mass_pair
from ..quadrature import gauss_lobatto_nodes

BENCH_COLUMNS = ("N", "rank1_time_ns", "dense_time_ns", "speedup", "max_abs_diff")


@dataclass(frozen=True)
class BenchRow:
    N: int
    rank1_time_ns: float
    dense_time_ns: float
    max_abs_diff: float

    @property
    def speedup(self) -> float:
        return self.dense_time_ns / self.rank1_time_ns

    def csv_row(self) -> list:
        return [self.N, self.rank1_time_ns, self.dense_time_ns, self.speedup, self.max_abs_diff]


def _median_ns(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return float(statistics.median(samples))


def run_apply_benchmark(sizes, repeats: int = 100, seed: int = 0) -> list[BenchRow]:
    """Median time of M v via the rank-1 form and via the materialized matrix.

    BLAS is held to one thread so the dense product is not flattered by
    parallelism the rank-1 path cannot use.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("at least one size is required")
    if any(n < 2 for n in sizes):
        raise ValueError("benchmark sizes must be >= 2")
    if repeats < 1:
        raise ValueError("repeats must be positive")
    rng = np.random.default_rng(seed)
    rows = []
    with threadpool_limits(limits=1):
        for n in sizes:
            op = build_mass_pair(gauss_lobatto_nodes(n)).exact
            dense = op.to_dense()
            v = rng.standard_normal(op.dim)
            diff = float(np.max(np.abs(op.apply(v) - dense @ v)))
            t_rank1 = _median_ns(lambda: op.apply(v), repeats)
            t_dense = _median_ns(lambda: dense @ v, repeats)
            rows.append(BenchRow(n, t_rank1, t_dense, diff))
    return rows
