"""Accuracy and timing studies, and their CSV form.

A report is written as ``# key: value`` metadata lines followed by a plain
CSV table with a fixed header, so it can be diffed, plotted by external
tools, or parsed back with :func:`read_compare` / :func:`read_bench`.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binom

from .density import pmf_table
from .model import BinomialMixture, new_mixture
from .oracle import empirical_pmf, exact_pmf, sample
from .tail import cdf_at

COMPARE_HEADER = ("s", "truth", "approx", "diff")
BENCH_HEADER = ("method", "wall_time_s", "max_abs_error")


@dataclass(frozen=True)
class CompareRow:
    s: int
    truth: float
    approx: float
    diff: float
    method: str = "saddlepoint"


@dataclass
class CompareReport:
    rows: list[CompareRow]
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def max_abs_diff(self) -> float:
        return max(abs(r.diff) for r in self.rows)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])


@dataclass(frozen=True)
class BenchRow:
    method: str
    wall_time: float
    max_abs_error: float


@dataclass
class BenchReport:
    rows: list[BenchRow]
    metadata: dict[str, str] = field(default_factory=dict)

    def row(self, method: str) -> BenchRow:
        for r in self.rows:
            if r.method == method:
                return r
        raise KeyError(method)


def _build(truth: np.ndarray, approx: np.ndarray, method: str, metadata: dict) -> CompareReport:
    rows = [
        CompareRow(s, float(t), float(a), float(t) - float(a), method)
        for s, (t, a) in enumerate(zip(truth, approx))
    ]
    return CompareReport(rows, {"method": method, **metadata})


def _approx(mix: BinomialMixture, stat: str) -> np.ndarray:
    if stat == "pdf":
        return np.array(pmf_table(mix).mass)
    if stat == "cdf":
        return cdf_at(mix, np.arange(mix.total + 1))
    raise ValueError(f"stat must be 'pdf' or 'cdf', got {stat!r}")


def compare_two_binomial(m: int, n: int, p: float, stat: str = "cdf") -> CompareReport:
    """Saddlepoint Bin(m,p) + Bin(n,p) against the closed form Bin(m+n, p)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    mix = new_mixture([m, n], [p])
    s = np.arange(m + n + 1)
    truth = binom.pmf(s, m + n, p) if stat == "pdf" else binom.cdf(s, m + n, p)
    approx = _approx(mix, stat)
    meta = {"mode": "two-binomial", "m": str(m), "n": str(n), "p": repr(p), "stat": stat,
            "truth": "closed-form"}
    return _build(truth, approx, "saddlepoint", meta)


def compare_mixture(
    mix: BinomialMixture,
    truth: str = "exact",
    trials: int | None = None,
    seed: int = 42,
    stat: str = "pdf",
) -> CompareReport:
    """Saddlepoint PMF or CDF against the exact oracle or a simulated estimate."""
    if truth == "exact":
        if trials is not None:
            raise ValueError("trials only applies to truth='simulation'")
        reference = exact_pmf(mix).mass
    elif truth == "simulation":
        if trials is None:
            raise ValueError("truth='simulation' needs a trial count")
        reference = empirical_pmf(sample(mix, trials, seed), mix.total)
    else:
        raise ValueError(f"truth must be 'exact' or 'simulation', got {truth!r}")
    if stat == "cdf":
        reference = np.minimum(np.cumsum(reference), 1.0)
        reference[-1] = 1.0
    approx = _approx(mix, stat)
    meta = {"mode": "mixture", "sizes": ",".join(map(str, mix.sizes)),
            "probs": ",".join(map(repr, mix.probs)), "stat": stat, "truth": truth}
    if truth == "simulation":
        meta.update(trials=str(trials), seed=str(seed))
    return _build(reference, approx, "saddlepoint", meta)


def simulation_pmf(mix: BinomialMixture, trials: int, seed: int = 42) -> np.ndarray:
    return empirical_pmf(sample(mix, trials, seed), mix.total)


def bench(mix: BinomialMixture, trials_list, seed: int = 42) -> BenchReport:
    """Time the full saddlepoint table against simulations of each size.

    Errors are measured against the exact oracle. The saddlepoint table is
    built from scratch (the per-mixture cache is bypassed).
    """
    trials_list = list(trials_list)
    if not trials_list:
        raise ValueError("bench needs at least one simulation size")
    exact = exact_pmf(mix).mass

    start = time.perf_counter()
    table = pmf_table.__wrapped__(mix).mass
    elapsed = time.perf_counter() - start
    rows = [BenchRow("saddlepoint", elapsed, float(np.abs(table - exact).max()))]

    for trials in trials_list:
        start = time.perf_counter()
        sim = simulation_pmf(mix, int(trials), seed)
        elapsed = time.perf_counter() - start
        rows.append(BenchRow(f"simulation_{int(trials)}", elapsed, float(np.abs(sim - exact).max())))
    meta = {"sizes": ",".join(map(str, mix.sizes)), "probs": ",".join(map(repr, mix.probs)),
            "trials": ",".join(str(int(t)) for t in trials_list), "seed": str(seed)}
    return BenchReport(rows, meta)


def fmt(x: float) -> str:
    """Shortest repr that round-trips the double exactly."""
    return repr(float(x))


def _write(handle, metadata: dict, header, rows) -> None:
    for key, value in metadata.items():
        handle.write(f"# {key}: {value}\n")
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def write_compare(report: CompareReport, handle) -> None:
    _write(handle, report.metadata, COMPARE_HEADER,
           ((r.s, fmt(r.truth), fmt(r.approx), fmt(r.diff)) for r in report.rows))


def write_bench(report: BenchReport, handle) -> None:
    _write(handle, report.metadata, BENCH_HEADER,
           ((r.method, fmt(r.wall_time), fmt(r.max_abs_error)) for r in report.rows))


def _split_metadata(text: str) -> tuple[dict[str, str], list[list[str]]]:
    metadata = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            metadata[key] = value
        elif line:
            body.append(line)
    return metadata, list(csv.reader(io.StringIO("\n".join(body))))


def read_compare(text: str) -> CompareReport:
    metadata, table = _split_metadata(text)
    if tuple(table[0]) != COMPARE_HEADER:
        raise ValueError(f"unexpected compare header {table[0]}")
    method = metadata.get("method", "saddlepoint")
    rows = [CompareRow(int(s), float(t), float(a), float(d), method) for s, t, a, d in table[1:]]
    return CompareReport(rows, metadata)


def read_bench(text: str) -> BenchReport:
    metadata, table = _split_metadata(text)
    if tuple(table[0]) != BENCH_HEADER:
        raise ValueError(f"unexpected bench header {table[0]}")
    rows = [BenchRow(m, float(t), float(e)) for m, t, e in table[1:]]
    return BenchReport(rows, metadata)
