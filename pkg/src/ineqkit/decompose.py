"""Subgroup and covariate-binned skew analysis.

Reconciliations compute both sides of the classical subgroup decompositions
and expose the residual instead of assuming an identity: pooled Gini is not
in general a population-weighted average of subgroup Ginis (overlap between
groups contributes), and the Atkinson within/between split closes exactly
only when the between term is taken over group EDEs rather than group means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .distribution import Distribution
from .errors import BinMismatchError, DegenerateMetricError
from .metrics import MetricConfig, MetricReport, atkinson, degenerate_report, full_report, gini, top_share


@dataclass(frozen=True)
class GroupedDistribution:
    """A partition of one population into named groups, plus the pooled view."""

    groups: Mapping[str, Distribution]
    pooled: Distribution

    def __post_init__(self):
        sizes = sum(d.size for d in self.groups.values())
        totals = sum(d.total for d in self.groups.values())
        if sizes != self.pooled.size:
            raise ValueError(f"group sizes sum to {sizes}, pooled has {self.pooled.size}")
        scale = max(abs(totals), abs(self.pooled.total), 1.0)
        if abs(totals - self.pooled.total) > 1e-9 * scale:
            raise ValueError(f"group totals sum to {totals}, pooled has {self.pooled.total}")

    @classmethod
    def from_values(cls, mapping: Mapping[str, "np.typing.ArrayLike"]) -> "GroupedDistribution":
        """Build groups and the pooled distribution from raw value arrays."""
        groups = {key: Distribution(vals) for key, vals in mapping.items()}
        pooled = Distribution(np.concatenate([d.values for d in groups.values()]))
        return cls(groups=groups, pooled=pooled)


@dataclass(frozen=True)
class SubgroupMetrics:
    groups: Mapping[str, MetricReport]
    pooled: MetricReport


def subgroup_metrics(
    g: GroupedDistribution, config: MetricConfig = MetricConfig()
) -> SubgroupMetrics:
    """Full metric report per group and pooled; zero-total groups come back flagged."""
    reports = {}
    for key, dist in g.groups.items():
        try:
            reports[key] = full_report(dist, config)
        except DegenerateMetricError:
            reports[key] = degenerate_report(dist, config)
    return SubgroupMetrics(groups=reports, pooled=full_report(g.pooled, config))


@dataclass(frozen=True)
class GiniReconciliation:
    pooled_gini: float
    weighted_subgroup_gini: float
    residual: float
    group_ginis: Mapping[str, Optional[float]]
    weights: Mapping[str, float]
    excluded_groups: tuple


def gini_reconcile(g: GroupedDistribution) -> GiniReconciliation:
    """Pooled Gini vs the population-weighted average of subgroup Ginis.

    The residual carries the between-group and overlap structure; it is
    reported, not asserted to be anything. Zero-total groups are excluded
    from the weighted term and flagged.
    """
    if len(g.groups) < 2:
        raise ValueError("gini_reconcile needs at least 2 groups")
    pooled_gini = gini(g.pooled)
    k = g.pooled.size
    weights = {key: dist.size / k for key, dist in g.groups.items()}
    group_ginis: dict = {}
    excluded = []
    weighted = 0.0
    for key, dist in g.groups.items():
        if dist.total == 0.0:
            group_ginis[key] = None
            excluded.append(key)
            continue
        value = gini(dist)
        group_ginis[key] = value
        weighted += weights[key] * value
    return GiniReconciliation(
        pooled_gini=pooled_gini,
        weighted_subgroup_gini=weighted,
        residual=pooled_gini - weighted,
        group_ginis=group_ginis,
        weights=weights,
        excluded_groups=tuple(excluded),
    )


@dataclass(frozen=True)
class AtkinsonReconciliation:
    epsilon: float
    pooled: float
    within: float
    between: float
    combined: float
    residual: float
    group_indices: Mapping[str, Optional[float]]
    excluded_groups: tuple


def atkinson_reconcile(g: GroupedDistribution, epsilon: float = 0.5) -> AtkinsonReconciliation:
    """Pooled Atkinson vs a within/between split, residual reported explicitly.

    within: 1 minus the income-share-weighted mean of the group equality
    factors (1 - A_g), i.e. the EDE aggregation of subgroup indices.
    between: Atkinson over group means replicated by group size.
    combined: within + between - within*between; residual = pooled - combined.
    """
    if len(g.groups) < 2:
        raise ValueError("atkinson_reconcile needs at least 2 groups")
    pooled_value = atkinson(g.pooled, epsilon)
    pooled_mean = g.pooled.mean
    group_indices: dict = {}
    excluded = []
    ede_mass = 0.0  # sum over groups of K_g * EDE_g
    for key, dist in g.groups.items():
        if dist.total == 0.0:
            group_indices[key] = None
            excluded.append(key)
            continue  # an all-zero group has EDE 0 and adds nothing
        value = atkinson(dist, epsilon)
        group_indices[key] = value
        ede_mass += dist.size * dist.mean * (1.0 - value)
    within = 1.0 - ede_mass / (g.pooled.size * pooled_mean)
    means = np.repeat(
        [dist.mean for dist in g.groups.values()],
        [dist.size for dist in g.groups.values()],
    )
    between = atkinson(Distribution(means), epsilon)
    combined = within + between - within * between
    return AtkinsonReconciliation(
        epsilon=epsilon,
        pooled=pooled_value,
        within=within,
        between=between,
        combined=combined,
        residual=pooled_value - combined,
        group_indices=group_indices,
        excluded_groups=tuple(excluded),
    )


EDGE_MODE = "edges"
EQUAL_COUNT_MODE = "equal-count"


@dataclass(frozen=True)
class BinSpec:
    """How to bin members by a covariate: explicit edges or equal-count quantiles.

    Explicit bins are half-open [low, high) with the last bin closed, so
    round covariate values are never double-counted.
    """

    mode: str
    covariate: str = "covariate"
    edges: Optional[tuple] = None
    n_bins: Optional[int] = None

    def __post_init__(self):
        if self.mode == EDGE_MODE:
            if self.edges is None or len(self.edges) < 2:
                raise ValueError("edges mode needs at least 2 edges")
            if any(a >= b for a, b in zip(self.edges, self.edges[1:])):
                raise ValueError("edges must be strictly increasing")
        elif self.mode == EQUAL_COUNT_MODE:
            if self.n_bins is None or self.n_bins < 2:
                raise ValueError("equal-count mode needs n_bins >= 2")
        else:
            raise ValueError(f"unknown bin mode {self.mode!r}")

    @classmethod
    def from_edges(cls, edges, covariate: str = "covariate") -> "BinSpec":
        return cls(mode=EDGE_MODE, covariate=covariate, edges=tuple(float(e) for e in edges))

    @classmethod
    def equal_count(cls, n_bins: int, covariate: str = "covariate") -> "BinSpec":
        return cls(mode=EQUAL_COUNT_MODE, covariate=covariate, n_bins=n_bins)


def log_edges(covariates, n_bins: int) -> tuple:
    """Geometric edge grid covering the data, for follower-style covariates.

    Interior edges are log-spaced from max(1, min) to just past the maximum;
    the first edge is lowered to the data minimum so every record lands in a
    bin.
    """
    cov = np.asarray(covariates, dtype=np.float64)
    if cov.size == 0:
        raise ValueError("cannot derive edges from no covariates")
    if n_bins < 2:
        raise ValueError(f"n_bins must be >= 2, got {n_bins}")
    lo = max(1.0, float(cov.min()))
    hi = float(cov.max()) + 1.0
    if hi <= lo:
        hi = lo + 1.0
    edges = np.geomspace(lo, hi, n_bins + 1)
    edges[0] = min(float(cov.min()), edges[0])
    return tuple(edges.tolist())


@dataclass(frozen=True)
class BinRow:
    """Per-bin membership and within-bin skew metrics."""

    low: float
    high: float
    count: int
    mean_covariate: Optional[float]
    mean_outcome: Optional[float]
    gini: Optional[float]
    atkinson: Optional[float]
    top1_share: Optional[float]
    empty: bool = False
    degenerate: bool = False


@dataclass(frozen=True)
class BinSummary:
    covariate: str
    epsilon: float
    rows: tuple  # of BinRow


def _assign_edges(cov: np.ndarray, edges: tuple) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.float64)
    idx = np.searchsorted(arr, cov, side="right") - 1
    idx[cov == arr[-1]] = arr.size - 2  # last bin is closed on the right
    if np.any((idx < 0) | (idx > arr.size - 2)):
        bad = cov[(idx < 0) | (idx > arr.size - 2)][0]
        raise ValueError(f"covariate value {bad} falls outside the bin edges")
    return idx


def binned_analysis(covariates, outcomes, spec: BinSpec, epsilon: float = 0.5) -> BinSummary:
    """Within-bin inequality metrics for members binned by a covariate."""
    cov = np.asarray(covariates, dtype=np.float64)
    out = np.asarray(outcomes, dtype=np.float64)
    if cov.shape != out.shape or cov.ndim != 1:
        raise ValueError("covariates and outcomes must be 1-D arrays of equal length")
    rows = []
    if spec.mode == EDGE_MODE:
        idx = _assign_edges(cov, spec.edges)
        bounds = [(spec.edges[i], spec.edges[i + 1]) for i in range(len(spec.edges) - 1)]
        membership = [np.flatnonzero(idx == i) for i in range(len(bounds))]
    else:
        order = np.argsort(cov, kind="stable")
        membership = [m for m in np.array_split(order, spec.n_bins)]
        bounds = [
            (float(cov[m].min()), float(cov[m].max())) if m.size else (np.nan, np.nan)
            for m in membership
        ]
    for (low, high), members in zip(bounds, membership):
        if members.size == 0:
            rows.append(
                BinRow(low, high, 0, None, None, None, None, None, empty=True)
            )
            continue
        dist = Distribution(out[members])
        mean_cov = float(cov[members].mean())
        mean_out = float(out[members].mean())
        if dist.total == 0.0:
            rows.append(
                BinRow(low, high, int(members.size), mean_cov, mean_out, None, None, None, degenerate=True)
            )
            continue
        rows.append(
            BinRow(
                low=float(low),
                high=float(high),
                count=int(members.size),
                mean_covariate=mean_cov,
                mean_outcome=mean_out,
                gini=gini(dist),
                atkinson=atkinson(dist, epsilon),
                top1_share=top_share(dist, 1.0),
            )
        )
    return BinSummary(covariate=spec.covariate, epsilon=epsilon, rows=tuple(rows))


@dataclass(frozen=True)
class BinComparisonRow:
    low: float
    high: float
    gini: Mapping[str, Optional[float]]
    mean_outcome: Mapping[str, Optional[float]]
    gini_delta: Mapping[str, Optional[float]]  # vs the first channel


@dataclass(frozen=True)
class SkewComparison:
    channels: tuple
    rows: tuple  # of BinComparisonRow


def skew_vs_covariate(summaries: Mapping[str, BinSummary]) -> SkewComparison:
    """Align per-channel bin summaries into one table of per-bin Gini deltas.

    All channels must share identical bin edges.
    """
    if len(summaries) < 2:
        raise ValueError("need at least 2 channels to compare")
    channels = tuple(summaries)
    first = summaries[channels[0]]
    for name in channels[1:]:
        other = summaries[name]
        if len(other.rows) != len(first.rows) or any(
            (a.low, a.high) != (b.low, b.high) for a, b in zip(first.rows, other.rows)
        ):
            raise BinMismatchError(f"channel {name!r} does not share bin edges with {channels[0]!r}")
    rows = []
    for i, base in enumerate(first.rows):
        ginis = {name: summaries[name].rows[i].gini for name in channels}
        outcomes = {name: summaries[name].rows[i].mean_outcome for name in channels}
        deltas = {}
        for name in channels[1:]:
            a, b = ginis[channels[0]], ginis[name]
            deltas[name] = None if a is None or b is None else b - a
        rows.append(
            BinComparisonRow(
                low=base.low, high=base.high, gini=ginis, mean_outcome=outcomes, gini_delta=deltas
            )
        )
    return SkewComparison(channels=channels, rows=tuple(rows))
