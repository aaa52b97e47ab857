"""Bootstrap resampling: confidence intervals and two-population comparisons.

Each resample draws K members with replacement and recomputes the metric.
Per-resample RNG streams are keyed by (seed, resample index), so results are
bit-identical regardless of execution order or worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .distribution import Distribution
from .errors import AllResamplesDegenerateError, DegenerateMetricError

QUANTILE_PROBES = (5.0, 25.0, 50.0, 75.0, 95.0)


@dataclass(frozen=True)
class BootstrapConfig:
    n_resamples: int = 200
    confidence_level: float = 0.95
    seed: int = 0

    def __post_init__(self):
        if self.n_resamples < 2:
            raise ValueError(f"n_resamples must be >= 2, got {self.n_resamples}")
        if not 0.0 < self.confidence_level < 1.0:
            raise ValueError(
                f"confidence_level must be in (0, 1), got {self.confidence_level}"
            )


@dataclass(frozen=True)
class BootstrapResult:
    """Point estimate plus a percentile-method CI over the valid resamples."""

    point_estimate: float
    resample_mean: float
    std_error: float
    quantiles: tuple  # of (probe percent, value)
    ci_low: float
    ci_high: float
    confidence_level: float
    n_resamples: int
    degenerate_resamples: int
    seed: int
    distinguishable: Optional[bool] = None


def _stream(seed: int, index: int, side: int) -> np.random.Generator:
    key = np.random.SeedSequence(entropy=seed, spawn_key=(index, side))
    return np.random.Generator(np.random.PCG64(key))


def _resample(d: Distribution, rng: np.random.Generator) -> Distribution:
    idx = rng.integers(0, d.size, d.size)
    counts = np.bincount(idx, minlength=d.size)
    # Repeating the already-sorted values by their draw counts yields the
    # resample pre-sorted, skipping a per-resample sort.
    return Distribution._from_sorted(np.repeat(d.values, counts))


def _run_indexed(task, n: int, n_jobs: int) -> list:
    if n_jobs <= 1:
        return [task(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(task, range(n)))


def _summarize(
    point: float,
    raw: list,
    config: BootstrapConfig,
    distinguishable_flag: bool,
) -> BootstrapResult:
    valid = np.array([v for v in raw if v is not None], dtype=np.float64)
    degenerate = len(raw) - valid.size
    if valid.size == 0:
        raise AllResamplesDegenerateError(
            f"all {len(raw)} resamples hit a metric degeneracy"
        )
    alpha = 1.0 - config.confidence_level
    ci_low, ci_high = np.quantile(valid, [alpha / 2.0, 1.0 - alpha / 2.0])
    std_error = float(valid.std(ddof=1)) if valid.size > 1 else 0.0
    result = BootstrapResult(
        point_estimate=point,
        resample_mean=float(valid.mean()),
        std_error=std_error,
        quantiles=tuple((p, float(np.quantile(valid, p / 100.0))) for p in QUANTILE_PROBES),
        ci_low=float(ci_low),
        ci_high=float(ci_high),
        confidence_level=config.confidence_level,
        n_resamples=config.n_resamples,
        degenerate_resamples=int(degenerate),
        seed=config.seed,
    )
    if distinguishable_flag:
        result = replace(result, distinguishable=not result.ci_low <= 0.0 <= result.ci_high)
    return result


def bootstrap_metric(
    d: Distribution,
    metric: Callable[[Distribution], float],
    config: BootstrapConfig = BootstrapConfig(),
    n_jobs: int = 1,
) -> BootstrapResult:
    """Percentile-method bootstrap CI for ``metric`` over ``d``.

    Resamples whose metric is degenerate are counted and excluded from the
    quantiles. A metric degenerate on ``d`` itself propagates: there is no
    point estimate to bootstrap around.
    """
    point = metric(d)

    def one(i: int):
        try:
            return metric(_resample(d, _stream(config.seed, i, 0)))
        except DegenerateMetricError:
            return None

    raw = _run_indexed(one, config.n_resamples, n_jobs)
    return _summarize(point, raw, config, distinguishable_flag=False)


def bootstrap_difference(
    d1: Distribution,
    d2: Distribution,
    metric: Callable[[Distribution], float],
    config: BootstrapConfig = BootstrapConfig(),
    n_jobs: int = 1,
) -> BootstrapResult:
    """Bootstrap CI for metric(d1) - metric(d2) with independent resampling.

    ``distinguishable`` is set to whether the CI excludes 0 (the two
    populations show an effect larger than resampling noise).
    """
    point = metric(d1) - metric(d2)

    def one(i: int):
        try:
            left = metric(_resample(d1, _stream(config.seed, i, 1)))
            right = metric(_resample(d2, _stream(config.seed, i, 2)))
        except DegenerateMetricError:
            return None
        return left - right

    raw = _run_indexed(one, config.n_resamples, n_jobs)
    return _summarize(point, raw, config, distinguishable_flag=True)
