"""Validated outcome distributions and Lorenz curve geometry."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import (
    ZERO_TOTAL,
    DegenerateMetricError,
    EmptyInputError,
    NegativeValueError,
    NonFiniteValueError,
)


class Distribution:
    """Ascending-sorted, non-negative per-member outcome values.

    Prefix sums are computed once at construction (smallest values first, to
    limit cancellation on heavy-tailed data) and reused by every metric.
    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("values", "prefix_sums", "size", "total")

    def __init__(self, raw_values):
        values = np.asarray(raw_values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError(f"expected a 1-D sequence of values, got shape {values.shape}")
        if values.size == 0:
            raise EmptyInputError("a distribution needs at least one value")
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise NonFiniteValueError(int(bad[0]))
        negative = np.flatnonzero(values < 0)
        if negative.size:
            raise NegativeValueError(int(negative[0]))
        self._finish(np.sort(values))

    @classmethod
    def _from_sorted(cls, sorted_values):
        """Trusted fast path: caller guarantees ascending-sorted, validated float64."""
        self = object.__new__(cls)
        self._finish(sorted_values)
        return self

    def _finish(self, values):
        values = np.ascontiguousarray(values, dtype=np.float64)
        prefix = backend.prefix_sums(values)
        values.flags.writeable = False
        prefix.flags.writeable = False
        self.values = values
        self.prefix_sums = prefix
        self.size = int(values.size)
        self.total = float(prefix[-1])

    @property
    def mean(self) -> float:
        return self.total / self.size

    @property
    def is_degenerate(self) -> bool:
        """True when the total is zero: no outcome to distribute."""
        return self.total == 0.0

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Distribution(size={self.size}, total={self.total})"


def make_distribution(raw_values) -> Distribution:
    """Validate, ascending-sort, and wrap raw outcome values."""
    return Distribution(raw_values)


@dataclass(frozen=True)
class LorenzCurve:
    """Piecewise-linear cumulative-share curve.

    ``shares[i]`` is the fraction of the total held by the poorest
    ``fractions[i]`` of the population; both arrays have length K+1 and run
    from (0, 0) to (1, 1).
    """

    fractions: np.ndarray
    shares: np.ndarray

    def __post_init__(self):
        self.fractions.flags.writeable = False
        self.shares.flags.writeable = False

    def __len__(self) -> int:
        return int(self.fractions.size)

    @property
    def points(self):
        """Curve vertices as (population_fraction, cumulative_share) pairs."""
        return list(zip(self.fractions.tolist(), self.shares.tolist()))

    def share_at(self, fraction: float) -> float:
        """Cumulative share held by the bottom ``fraction``, interpolated."""
        return float(np.interp(fraction, self.fractions, self.shares))

    def fraction_at_share(self, share: float) -> float:
        """Leftmost population fraction whose cumulative share reaches ``share``."""
        if not 0.0 <= share <= 1.0:
            raise ValueError(f"share must be in [0, 1], got {share}")
        idx = int(np.searchsorted(self.shares, share, side="left"))
        if idx == 0:
            return float(self.fractions[0])
        if idx == self.shares.size:
            raise ValueError(f"curve never reaches share {share}")
        s0, s1 = float(self.shares[idx - 1]), float(self.shares[idx])
        f0, f1 = float(self.fractions[idx - 1]), float(self.fractions[idx])
        if s1 == s0:
            return f1
        return f0 + (f1 - f0) * (share - s0) / (s1 - s0)


def lorenz_curve(d: Distribution) -> LorenzCurve:
    """Full-resolution Lorenz curve: vertex i is (i/K, prefix_sums[i-1]/total)."""
    if d.total == 0.0:
        raise DegenerateMetricError("lorenz_curve", ZERO_TOTAL)
    fractions = np.arange(d.size + 1, dtype=np.float64) / d.size
    shares = np.empty(d.size + 1, dtype=np.float64)
    shares[0] = 0.0
    np.divide(d.prefix_sums, d.total, out=shares[1:])
    return LorenzCurve(fractions, shares)


def lorenz_downsample(curve: LorenzCurve, n_points: int) -> LorenzCurve:
    """Thin a Lorenz curve to roughly ``n_points`` of its own vertices.

    Endpoints, monotonicity, and convexity are preserved, and the thinned
    polyline never sits more than 1/n_points above the full curve. When
    ``n_points`` >= len(curve) the curve is returned unchanged.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    k = len(curve)
    if n_points >= k:
        return curve

    # Candidate vertices bracket every share level on a grid half as fine as
    # the deviation budget, so the gap between consecutive non-adjacent
    # candidates is at most `budget` in share.
    budget = 0.5 / n_points
    levels = np.arange(1, int(np.ceil(1.0 / budget))) * budget
    right = np.searchsorted(curve.shares, levels, side="left")
    cand = np.unique(np.clip(np.concatenate([[0, k - 1], right, right - 1]), 0, k - 1))
    xs = curve.fractions[cand]
    ys = curve.shares[cand]

    # Greedy chord walk: extend each chord while it stays within the budget
    # above the interior candidates (the curve is convex, so chords lie above
    # it and the worst gap is at a vertex).
    keep = [0]
    anchor = 0
    m = cand.size
    while anchor < m - 1:
        end = anchor + 1
        while end + 1 < m:
            nxt = end + 1
            x0, y0 = xs[anchor], ys[anchor]
            slope = (ys[nxt] - y0) / (xs[nxt] - x0)
            gap = y0 + slope * (xs[anchor + 1 : nxt] - x0) - ys[anchor + 1 : nxt]
            if gap.size and gap.max() > budget:
                break
            end = nxt
        keep.append(end)
        anchor = end
    sel = cand[keep]
    return LorenzCurve(curve.fractions[sel], curve.shares[sel])
