"""Inequality metrics over Distribution values.

All metrics share two conventions, fixed once here:

* nearest-rank percentiles: the p-th percentile boundary is the value at
  1-based rank ceil(p/100 * K) of the ascending-sorted values;
* equivalence metrics invert a piecewise-linear interpolation of the
  empirical Lorenz curve, giving continuous outputs.

Metrics that hit an undefined case raise DegenerateMetricError with a
machine-readable reason; ``full_report`` catches and records those instead
of failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import backend
from .distribution import Distribution
from .errors import NO_SOLUTION, ZERO_DENOMINATOR, ZERO_TOTAL, DegenerateMetricError

# Guard against p/100*K landing a float epsilon above an integer, which would
# push ceil() to the next rank.
_RANK_GUARD = 1e-9


def _require_total(d: Distribution, metric: str) -> None:
    if d.total == 0.0:
        raise DegenerateMetricError(metric, ZERO_TOTAL)


def _check_percentile(p: float) -> None:
    if not 0.0 < p < 100.0:
        raise ValueError(f"percentile must be in (0, 100), got {p}")


def _check_share_percent(x: float) -> None:
    if not 0.0 < x <= 100.0:
        raise ValueError(f"share percentage must be in (0, 100], got {x}")


def _rank(p: float, size: int) -> int:
    """1-based nearest-rank boundary ceil(p/100 * size), epsilon-guarded."""
    x = p * size / 100.0
    r = math.ceil(x - _RANK_GUARD * max(1.0, x))
    return min(max(r, 1), size)


def _clamp01(value: float) -> float:
    return min(max(value, 0.0), 1.0)


def gini(d: Distribution) -> float:
    """Gini index in [0, 1) via the sorted-rank identity.

    Equals the normalized mean absolute difference over all pairs:
    sum_{p,q} |V_p - V_q| / (2 K sum_i V_i).
    """
    _require_total(d, "gini")
    k = d.size
    weighted = backend.rank_weighted_sum(d.values)
    return _clamp01(2.0 * weighted / (k * d.total) - (k + 1) / k)


def atkinson(d: Distribution, epsilon: float = 0.5) -> float:
    """Atkinson index in [0, 1]: 1 - (generalized mean / arithmetic mean).

    ``epsilon`` >= 0 weights aversion to inequality; epsilon=1 uses the
    geometric mean (any zero value forces the index to 1), epsilon=0 is
    identically 0. Sums are accumulated as exp(log ...) on mean-normalized
    values, which stays stable when counts span many orders of magnitude.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    _require_total(d, "atkinson")
    if epsilon == 0.0:
        return 0.0
    mu = d.mean
    if epsilon == 1.0:
        log_sum, zeros = backend.scaled_log_sum(d.values, mu)
        if zeros:
            return 1.0
        return _clamp01(1.0 - math.exp(log_sum / d.size))
    exponent = 1.0 - epsilon
    power_sum, zeros = backend.scaled_power_sum(d.values, mu, exponent)
    if epsilon > 1.0 and zeros:
        # 0 ** (negative exponent) sends the generalized mean to 0.
        return 1.0
    return _clamp01(1.0 - (power_sum / d.size) ** (1.0 / exponent))


def percentile_value(d: Distribution, p: float) -> float:
    """Value at the p-th percentile under the nearest-rank rule."""
    _check_percentile(p)
    return float(d.values[_rank(p, d.size) - 1])


def percentile_ratio(d: Distribution, high: float, low: float) -> float:
    """Ratio of the values at two percentiles (e.g. 90/10).

    Degenerate (zero-denominator) whenever the low percentile value is 0,
    as happens at the 20th percentile of zero-heavy distributions.
    """
    _require_total(d, "percentile_ratio")
    high_value = percentile_value(d, high)
    low_value = percentile_value(d, low)
    if low_value == 0.0:
        raise DegenerateMetricError("percentile_ratio", ZERO_DENOMINATOR)
    return high_value / low_value


def _top_sum(d: Distribution, n_top: int) -> float:
    if n_top >= d.size:
        return d.total
    return d.total - float(d.prefix_sums[d.size - n_top - 1])


def share_ratio(d: Distribution, high: float, low: float) -> float:
    """Cumulative share above the high boundary over the share at or below the low one.

    Boundary ranks follow the nearest-rank rule; the boundary member itself
    counts toward the bottom sum. Degenerate when the bottom share is 0.
    """
    _require_total(d, "share_ratio")
    _check_percentile(high)
    _check_percentile(low)
    bottom = float(d.prefix_sums[_rank(low, d.size) - 1])
    if bottom == 0.0:
        raise DegenerateMetricError("share_ratio", ZERO_DENOMINATOR)
    top = d.total - float(d.prefix_sums[_rank(high, d.size) - 1])
    return top / bottom


def top_share(d: Distribution, x_percent: float) -> float:
    """Percentage of the total held by the top ceil(x/100 * K) members."""
    _check_share_percent(x_percent)
    _require_total(d, "top_share")
    return 100.0 * (_top_sum(d, _rank(x_percent, d.size)) / d.total)


def bottom_share(d: Distribution, x_percent: float) -> float:
    """Percentage of the total held by the bottom ceil(x/100 * K) members."""
    _check_share_percent(x_percent)
    _require_total(d, "bottom_share")
    return 100.0 * (float(d.prefix_sums[_rank(x_percent, d.size) - 1]) / d.total)


def _fraction_at_cumulative(d: Distribution, target: float) -> float:
    """Population fraction where the interpolated Lorenz curve reaches a cumulative value.

    ``target`` must be in (0, total]. Works directly off the prefix sums so
    no curve needs materializing.
    """
    idx = int(np.searchsorted(d.prefix_sums, target, side="left"))
    prev = float(d.prefix_sums[idx - 1]) if idx > 0 else 0.0
    segment = float(d.prefix_sums[idx]) - prev
    return (idx + (target - prev) / segment) / d.size


def percent_of_equal_share(d: Distribution) -> float:
    """Population percentage whose cumulative share is exactly half the total.

    The bottom p% and top (100-p)% then hold equal shares; p is read off the
    interpolated Lorenz curve, so the result is continuous in the data.
    """
    _require_total(d, "percent_of_equal_share")
    return 100.0 * _fraction_at_cumulative(d, 0.5 * d.total)


def equivalent_to_top(d: Distribution, x_percent: float) -> float:
    """Bottom population percentage holding the same share as the top x%.

    Degenerate (no solution) when the top x% holds everything and the rest
    of the population holds zero.
    """
    _check_share_percent(x_percent)
    _require_total(d, "equivalent_to_top")
    n_top = _rank(x_percent, d.size)
    if n_top >= d.size:
        return 100.0
    bottom = float(d.prefix_sums[d.size - n_top - 1])
    if bottom == 0.0:
        raise DegenerateMetricError("equivalent_to_top", NO_SOLUTION)
    return 100.0 * _fraction_at_cumulative(d, d.total - bottom)


@dataclass(frozen=True)
class MetricConfig:
    """Metric parameter set evaluated by ``full_report``."""

    epsilons: tuple = (0.5,)
    top_x: tuple = (1.0, 10.0)
    percentile_ratios: tuple = ((80.0, 20.0),)
    share_ratios: tuple = ((80.0, 20.0),)
    equivalence_x: tuple = (10.0,)


@dataclass(frozen=True)
class RatioResult:
    """One percentile or share ratio, or the reason it is undefined."""

    kind: str
    high: float
    low: float
    value: Optional[float]
    degenerate_reason: Optional[str] = None


@dataclass(frozen=True)
class MetricReport:
    """Every configured metric for one distribution, degeneracies included."""

    size: int
    total: float
    gini: Optional[float]
    atkinson: tuple  # of (epsilon, value-or-None)
    top_shares: tuple  # of (x_percent, share_percent)
    ratios: tuple  # of RatioResult
    equal_share_pct: Optional[float]
    equivalent_to_top: tuple  # of (x_percent, q_percent-or-None)
    degeneracies: tuple  # of (metric label, reason)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "total": self.total,
            "gini": self.gini,
            "atkinson": [{"epsilon": e, "value": v} for e, v in self.atkinson],
            "top_shares": [{"x": x, "share": s} for x, s in self.top_shares],
            "ratios": [
                {
                    "kind": r.kind,
                    "high": r.high,
                    "low": r.low,
                    "value": r.value,
                    "reason": r.degenerate_reason,
                }
                for r in self.ratios
            ],
            "equal_share_pct": self.equal_share_pct,
            "equivalent_to_top": [{"x": x, "q": q} for x, q in self.equivalent_to_top],
            "degeneracies": [list(item) for item in self.degeneracies],
        }


def full_report(d: Distribution, config: MetricConfig = MetricConfig()) -> MetricReport:
    """Evaluate every configured metric once; degenerate ratios are recorded, never dropped.

    Raises DegenerateMetricError only for a zero-total distribution, where no
    metric is defined at all.
    """
    _require_total(d, "full_report")
    degeneracies = []
    ratios = []
    for kind, fn in (("percentile", percentile_ratio), ("share", share_ratio)):
        pairs = config.percentile_ratios if kind == "percentile" else config.share_ratios
        for high, low in pairs:
            try:
                ratios.append(RatioResult(kind, high, low, fn(d, high, low)))
            except DegenerateMetricError as err:
                ratios.append(RatioResult(kind, high, low, None, err.reason))
                degeneracies.append((f"{kind}_ratio({high:g}/{low:g})", err.reason))
    equivalents = []
    for x in config.equivalence_x:
        try:
            equivalents.append((x, equivalent_to_top(d, x)))
        except DegenerateMetricError as err:
            equivalents.append((x, None))
            degeneracies.append((f"equivalent_to_top({x:g})", err.reason))
    return MetricReport(
        size=d.size,
        total=d.total,
        gini=gini(d),
        atkinson=tuple((e, atkinson(d, e)) for e in config.epsilons),
        top_shares=tuple((x, top_share(d, x)) for x in config.top_x),
        ratios=tuple(ratios),
        equal_share_pct=percent_of_equal_share(d),
        equivalent_to_top=tuple(equivalents),
        degeneracies=tuple(degeneracies),
    )


def degenerate_report(d: Distribution, config: MetricConfig = MetricConfig()) -> MetricReport:
    """Placeholder report for a zero-total distribution: all metrics undefined."""
    return MetricReport(
        size=d.size,
        total=d.total,
        gini=None,
        atkinson=tuple((e, None) for e in config.epsilons),
        top_shares=tuple((x, None) for x in config.top_x),
        ratios=tuple(
            RatioResult(kind, high, low, None, ZERO_TOTAL)
            for kind, pairs in (
                ("percentile", config.percentile_ratios),
                ("share", config.share_ratios),
            )
            for high, low in pairs
        ),
        equal_share_pct=None,
        equivalent_to_top=tuple((x, None) for x in config.equivalence_x),
        degeneracies=(("all", ZERO_TOTAL),),
    )


_METRIC_FACTORIES = {
    "gini": lambda: gini,
    "atkinson": lambda epsilon=0.5: (lambda d: atkinson(d, epsilon)),
    "top_share": lambda x=10.0: (lambda d: top_share(d, x)),
    "bottom_share": lambda x=10.0: (lambda d: bottom_share(d, x)),
    "percentile_ratio": lambda high=80.0, low=20.0: (lambda d: percentile_ratio(d, high, low)),
    "share_ratio": lambda high=80.0, low=20.0: (lambda d: share_ratio(d, high, low)),
    "percent_of_equal_share": lambda: percent_of_equal_share,
    "equivalent_to_top": lambda x=10.0: (lambda d: equivalent_to_top(d, x)),
}


def resolve_metric(name: str, **params) -> Callable[[Distribution], float]:
    """Look up a metric by name with its parameters bound, e.g. for bootstrapping."""
    try:
        factory = _METRIC_FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown metric {name!r}; choose from {sorted(_METRIC_FACTORIES)}")
    return factory(**params)
