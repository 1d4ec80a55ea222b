"""Seeded random instances and the projector timing harness.

Random numbers come from numpy's ``PCG64`` bit generator seeded with the
instance seed, so an instance is reproducible from ``(m, n, q, seed,
corruption_magnitude)`` alone.
"""
from __future__ import annotations

import csv
import logging
import statistics
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import BudgetTooLarge, ParseError
from .projector import ProblemSpec, robust_projector, subset_count

log = logging.getLogger(__name__)

BENCH_FIELDS = ("m", "n", "q", "subsets", "runs", "mean_ms", "std_ms", "seed")

# (m, n, q) sweep with the infeasible m=8, q=7 points left out
TABLE1_GRID = [
    (m, n, q)
    for m in (8, 16)
    for n in (8, 16, 32)
    for q in (1, 3, 7)
    if 2 * q < m
]


@dataclass(frozen=True)
class InstanceConfig:
    m: int
    n: int
    q: int
    seed: int = 0
    corruption_magnitude: float = 10.0
    distribution: str = "standard-normal"

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.q < 0:
            raise ValueError(f"invalid sizes m={self.m}, n={self.n}, q={self.q}")
        if 2 * self.q >= self.m:
            raise BudgetTooLarge(f"need 2q < m, got q={self.q}, m={self.m}")
        if self.distribution != "standard-normal":
            raise ValueError(f"unsupported distribution {self.distribution!r}")


@dataclass(frozen=True)
class BenchRecord:
    m: int
    n: int
    q: int
    mean_ms: float
    std_ms: float
    runs: int
    subsets: int
    seed: int


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def gen_instance(cfg: InstanceConfig):
    """Return ``(A, x_star, e, y)`` with ``y = A x_star + e`` and ``||e||_0 = q``.

    Draw order is fixed: A (row-major), x_star, support of e, signs of e.
    """
    rng = rng_for(cfg.seed)
    A = rng.standard_normal((cfg.m, cfg.n))
    x_star = rng.standard_normal(cfg.n)
    e = np.zeros(cfg.m)
    if cfg.q:
        supp = rng.choice(cfg.m, size=cfg.q, replace=False)
        signs = rng.choice([-1.0, 1.0], size=cfg.q)
        e[supp] = signs * cfg.corruption_magnitude
    return A, x_star, e, A @ x_star + e


def time_projector(A, q, runs=10, workers=1):
    """Wall-clock milliseconds of ``runs`` projector calls, after one warm-up call."""
    spec = ProblemSpec(A, q)
    robust_projector(spec, workers=workers)
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        robust_projector(spec, workers=workers)
        times.append((time.perf_counter() - t0) * 1e3)
    return times


def bench(grid, runs: int = 10, workers: int = 1, progress=None) -> list[BenchRecord]:
    """Time the projector on each grid point; one instance per point."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    records = []
    for cfg in grid:
        A, *_ = gen_instance(cfg)
        times = time_projector(A, cfg.q, runs=runs, workers=workers)
        rec = BenchRecord(
            m=cfg.m, n=cfg.n, q=cfg.q,
            mean_ms=statistics.fmean(times),
            std_ms=statistics.stdev(times) if runs > 1 else 0.0,
            runs=runs,
            subsets=subset_count(cfg.m, cfg.q),
            seed=cfg.seed,
        )
        records.append(rec)
        if progress is not None:
            progress(rec)
    return records


def table1_grid(seed: int = 0) -> list[InstanceConfig]:
    return [InstanceConfig(m, n, q, seed=seed) for m, n, q in TABLE1_GRID]


def read_grid(path, seed: int = 0) -> list[InstanceConfig]:
    """CSV with header containing m,n,q and optionally seed, corruption_magnitude.

    Rows with 2q >= m are skipped with a warning.
    """
    path = Path(path)
    grid = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(row for row in fh if not row.lstrip().startswith("#"))
        missing = {"m", "n", "q"} - set(reader.fieldnames or ())
        if missing:
            raise ParseError(f"grid header lacks columns {sorted(missing)}", path, 1)
        for lineno, row in enumerate(reader, start=2):
            try:
                grid.append(InstanceConfig(
                    m=int(row["m"]), n=int(row["n"]), q=int(row["q"]),
                    seed=int(row.get("seed") or seed),
                    corruption_magnitude=float(row.get("corruption_magnitude") or 10.0),
                ))
            except BudgetTooLarge as exc:
                log.warning("skipping grid row %d: %s", lineno, exc)
            except (TypeError, ValueError) as exc:
                raise ParseError(str(exc), path, lineno) from None
    return grid


def write_bench_csv(records, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
        writer.writeheader()
        for rec in records:
            row = asdict(rec)
            writer.writerow({k: row[k] for k in BENCH_FIELDS})
