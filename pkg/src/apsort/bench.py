"""Benchmark matrix: time each algorithm on identical copies of each dataset."""

from __future__ import annotations

import csv
import time
from dataclasses import astuple, dataclass, replace

import numpy as np

from apsort import baselines
from apsort.core import KeyedList, sort
from apsort.datasets import generate
from apsort.verification import verify

CSV_COLUMNS = ("algo", "n", "m", "dist", "trial", "seed", "millis", "iterations", "verified")
DEFAULT_ALGOS = ("apsort", "radix", "bucket", "comparison")


class VerificationFailed(RuntimeError):
    pass


@dataclass
class BenchRow:
    algo: str
    n: int
    m: int
    distribution: str
    trial: int
    seed: int
    millis: float
    iterations: int | None
    verified: bool

    def as_csv(self) -> list:
        row = list(astuple(self))
        row[6] = f"{self.millis:.3f}"
        row[7] = "" if self.iterations is None else self.iterations
        row[8] = "true" if self.verified else "false"
        return row


def _run_apsort(keys):
    report = sort(KeyedList(keys), record=False, verify=False)
    return report.elapsed, report.iterations


def _timed(fn):
    def run(keys):
        start = time.perf_counter()
        fn(keys)
        return time.perf_counter() - start, None

    return run


RUNNERS = {
    "apsort": _run_apsort,
    "radix": _timed(baselines.lsd_radix_sort),
    "bucket": _timed(baselines.bucket_sort),
    "comparison": _timed(baselines.comparison_sort),
    "platform": _timed(baselines.platform_sort),
}


def warm_up(algos) -> None:
    """Trigger JIT compilation so it stays out of the timings."""
    sample = np.array([5, 3, 9, 3, 1, 200], dtype=np.uint64)
    for algo in algos:
        RUNNERS[algo](sample.copy())
    baselines.oracle_sort(sample)


def key_range(keys: np.ndarray) -> int:
    return int(keys.max()) - int(keys.min()) + 1 if len(keys) else 0


def run_bench(specs, algos=DEFAULT_ALGOS, trials: int = 1):
    """Yield one verified BenchRow per (dataset, trial, algorithm).

    Trial ``t`` of a spec uses seed ``spec.seed + t``. Raises
    VerificationFailed on the first bad output, before its row is yielded.
    """
    unknown = set(algos) - RUNNERS.keys()
    if unknown:
        raise ValueError(f"unknown algorithms: {sorted(unknown)}")
    warm_up(algos)
    for spec in specs:
        for trial in range(trials):
            seed = spec.seed + trial
            original = generate(replace(spec, seed=seed))
            m = key_range(original)
            for algo in algos:
                keys = original.copy()
                seconds, iterations = RUNNERS[algo](keys)
                result = verify(original, keys)
                if not result.ok:
                    raise VerificationFailed(
                        f"{algo} on {spec.distribution} n={spec.n} seed={seed}: "
                        f"{result.first_failure()} check failed"
                    )
                yield BenchRow(algo, spec.n, m, spec.distribution, trial, seed,
                               seconds * 1e3, iterations, True)


def write_csv(rows, fh) -> list[BenchRow]:
    """Write rows as they arrive; returns them for summarising."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    kept = []
    for row in rows:
        writer.writerow(row.as_csv())
        fh.flush()
        kept.append(row)
    return kept


def summarize(rows) -> dict[str, float]:
    """Mean milliseconds per algorithm."""
    totals: dict[str, list[float]] = {}
    for row in rows:
        totals.setdefault(row.algo, []).append(row.millis)
    return {algo: sum(v) / len(v) for algo, v in totals.items()}


def ratio_lines(means: dict[str, float], reference: str = "apsort") -> list[str]:
    if reference not in means:
        return []
    ref = means[reference]
    lines = []
    for algo, ms in means.items():
        if algo == reference:
            continue
        ratio = ref / ms if ms > 0 else float("inf")
        lines.append(f"{reference}/{algo} time ratio: {ratio:.2f} ({ref:.3f} ms vs {ms:.3f} ms)")
    return lines
