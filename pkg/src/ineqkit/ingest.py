"""Delimited outcome-table ingestion with per-member aggregation.

Input files are header-declared delimited text (comma or tab, auto-detected
from the header line), 8-bit clean UTF-8, no quoting. Required columns:
``member_id`` and ``count``; optional dimension columns (categorical, e.g.
``engagement_type``, ``suggestion_type``) and covariate columns (non-negative
integers, e.g. ``follower_count``).

Parsing streams line by line; memory scales with the number of distinct
(member, dimension-combination) pairs, not with row count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .distribution import Distribution
from .errors import (
    ConflictingCovariateError,
    EmptyAfterFilterError,
    MalformedRowError,
    NegativeCountError,
)

REQUIRED_COLUMNS = ("member_id", "count")
DEFAULT_DIMENSION_COLUMNS = ("engagement_type", "suggestion_type")
DEFAULT_COVARIATE_COLUMNS = ("follower_count",)


@dataclass(frozen=True)
class AggregationPolicy:
    """Which members enter a distribution and whether absent ones count as zero.

    The default keeps members with at least one follower and zero-fills
    members that have no rows in the selected dimension.
    """

    include_zero_members: bool = True
    min_covariates: Mapping[str, int] = field(
        default_factory=lambda: {"follower_count": 1}
    )


@dataclass
class RecordTable:
    """Aggregated (member, dimension-combination) -> count rows plus member covariates."""

    dimension_columns: tuple
    covariate_columns: tuple
    counts: dict  # (member_id, dims tuple) -> int
    covariates: dict  # member_id -> {covariate: int}
    members: set

    def dimension_values(self, column: str) -> list:
        """Sorted distinct values observed for one dimension column."""
        idx = self._dim_index(column)
        return sorted({dims[idx] for (_, dims) in self.counts})

    def _dim_index(self, column: str) -> int:
        try:
            return self.dimension_columns.index(column)
        except ValueError:
            raise ValueError(
                f"unknown dimension column {column!r}; table has {self.dimension_columns}"
            ) from None


def _detect_delimiter(header_line: str) -> str:
    return "\t" if "\t" in header_line else ","


def load_table(
    path,
    dimension_columns: Optional[tuple] = None,
    covariate_columns: Optional[tuple] = None,
) -> RecordTable:
    """Stream a delimited file into an aggregated RecordTable.

    Counts for repeated (member, dimensions) rows are summed. Column roles
    default to the well-known names; pass explicit tuples when using others.
    """
    with open(path, "r", encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line:
            raise MalformedRowError(1, "empty file: missing header")
        delim = _detect_delimiter(header_line)
        names = header_line.rstrip("\r\n").split(delim)
        for required in REQUIRED_COLUMNS:
            if required not in names:
                raise MalformedRowError(1, f"header is missing required column {required!r}")
        dims = []
        covs = []
        for name in names:
            if name in REQUIRED_COLUMNS:
                continue
            if dimension_columns is not None or covariate_columns is not None:
                if name in (dimension_columns or ()):
                    dims.append(name)
                elif name in (covariate_columns or ()):
                    covs.append(name)
                else:
                    raise MalformedRowError(1, f"column {name!r} not declared as dimension or covariate")
            elif name in DEFAULT_DIMENSION_COLUMNS:
                dims.append(name)
            elif name in DEFAULT_COVARIATE_COLUMNS:
                covs.append(name)
            else:
                raise MalformedRowError(
                    1,
                    f"unknown column {name!r}; pass dimension_columns/covariate_columns",
                )
        member_idx = names.index("member_id")
        count_idx = names.index("count")
        dim_idx = [names.index(n) for n in dims]
        cov_idx = [names.index(n) for n in covs]
        n_cols = len(names)

        counts: dict = {}
        covariates: dict = {}
        members: set = set()
        for line_no, line in enumerate(fh, start=2):
            line = line.rstrip("\r\n")
            if not line:
                continue
            fields = line.split(delim)
            if len(fields) != n_cols:
                raise MalformedRowError(line_no, f"expected {n_cols} fields, got {len(fields)}")
            member = fields[member_idx]
            if not member:
                raise MalformedRowError(line_no, "empty member_id")
            try:
                count = int(fields[count_idx])
            except ValueError:
                raise MalformedRowError(
                    line_no, f"count {fields[count_idx]!r} is not an integer"
                ) from None
            if count < 0:
                raise NegativeCountError(line_no)
            for name, idx in zip(covs, cov_idx):
                try:
                    value = int(fields[idx])
                except ValueError:
                    raise MalformedRowError(
                        line_no, f"covariate {name!r} value {fields[idx]!r} is not an integer"
                    ) from None
                if value < 0:
                    raise MalformedRowError(line_no, f"covariate {name!r} is negative")
                known = covariates.setdefault(member, {})
                if name in known and known[name] != value:
                    raise ConflictingCovariateError(member, name)
                known[name] = value
            key = (member, tuple(fields[i] for i in dim_idx))
            counts[key] = counts.get(key, 0) + count
            members.add(member)

    return RecordTable(
        dimension_columns=tuple(dims),
        covariate_columns=tuple(covs),
        counts=counts,
        covariates=covariates,
        members=members,
    )


def _passes_filter(table: RecordTable, member: str, min_covariates: Mapping[str, int]) -> bool:
    for name, threshold in min_covariates.items():
        if name not in table.covariate_columns:
            continue  # filters on covariates the table lacks are inert
        if table.covariates.get(member, {}).get(name, 0) < threshold:
            return False
    return True


def _matches(dims: tuple, selectors: list) -> bool:
    return all(dims[idx] == value for idx, value in selectors)


def member_values(
    table: RecordTable,
    policy: Optional[AggregationPolicy] = None,
    dimension: Optional[Mapping[str, str]] = None,
):
    """Aggregate one value per member under the policy, zero-filling when configured.

    ``dimension`` optionally restricts to rows matching {column: value}.
    Returns (member ids, values) sorted by member id, so the result is
    independent of input row order.
    """
    policy = policy or AggregationPolicy()
    universe = {m for m in table.members if _passes_filter(table, m, policy.min_covariates)}
    selectors = []
    if dimension:
        selectors = [(table._dim_index(col), value) for col, value in dimension.items()]
    totals: dict = dict.fromkeys(universe, 0) if policy.include_zero_members else {}
    for (member, dims), count in table.counts.items():
        if member not in universe or not _matches(dims, selectors):
            continue
        if policy.include_zero_members:
            totals[member] += count
        else:
            totals[member] = totals.get(member, 0) + count
    if not totals:
        raise EmptyAfterFilterError("no members left after policy and dimension filters")
    ordered = sorted(totals)
    values = np.array([float(totals[m]) for m in ordered], dtype=np.float64)
    return ordered, values


def to_distribution(
    table: RecordTable,
    policy: Optional[AggregationPolicy] = None,
    dimension: Optional[Mapping[str, str]] = None,
) -> Distribution:
    """Distribution over per-member aggregated counts for one dimension slice."""
    _, values = member_values(table, policy, dimension)
    return Distribution(values)


def covariate_values(table: RecordTable, members, name: str) -> np.ndarray:
    """Covariate values aligned to a member list (missing members get 0)."""
    if name not in table.covariate_columns:
        raise ValueError(f"unknown covariate column {name!r}; table has {table.covariate_columns}")
    return np.array(
        [float(table.covariates.get(m, {}).get(name, 0)) for m in members], dtype=np.float64
    )


def write_table(table: RecordTable, path, delimiter: str = ",") -> None:
    """Write a RecordTable back to delimited text; reloading reproduces it."""
    names = ["member_id", *table.dimension_columns, *table.covariate_columns, "count"]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(delimiter.join(names) + "\n")
        for (member, dims), count in sorted(table.counts.items()):
            covs = [str(table.covariates.get(member, {}).get(n, 0)) for n in table.covariate_columns]
            fh.write(delimiter.join([member, *dims, *covs, str(count)]) + "\n")
