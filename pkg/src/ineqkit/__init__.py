"""Distributional inequality metrics toolkit.

Computes Gini, Atkinson, percentile/share ratios, tail shares, and
Lorenz-curve equivalence metrics over large per-member outcome datasets,
with bootstrap confidence intervals, subgroup decomposition, covariate
binning, and a CLI front end.
"""

from .backend import BACKEND
from .bootstrap import (
    BootstrapConfig,
    BootstrapResult,
    bootstrap_difference,
    bootstrap_metric,
)
from .decompose import (
    AtkinsonReconciliation,
    BinSpec,
    BinSummary,
    GiniReconciliation,
    GroupedDistribution,
    SkewComparison,
    atkinson_reconcile,
    binned_analysis,
    gini_reconcile,
    log_edges,
    skew_vs_covariate,
    subgroup_metrics,
)
from .distribution import (
    Distribution,
    LorenzCurve,
    lorenz_curve,
    lorenz_downsample,
    make_distribution,
)
from .ingest import (
    AggregationPolicy,
    RecordTable,
    covariate_values,
    load_table,
    member_values,
    to_distribution,
    write_table,
)
from .metrics import (
    MetricConfig,
    MetricReport,
    atkinson,
    bottom_share,
    equivalent_to_top,
    full_report,
    gini,
    percent_of_equal_share,
    percentile_ratio,
    percentile_value,
    resolve_metric,
    share_ratio,
    top_share,
)
from .synth import (
    POISSON_MIXTURE,
    ZERO_INFLATED_LOGNORMAL,
    PoissonComponent,
    SyntheticSpec,
    generate_synthetic,
    generate_values,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AggregationPolicy",
    "AtkinsonReconciliation",
    "BinSpec",
    "BinSummary",
    "BootstrapConfig",
    "BootstrapResult",
    "Distribution",
    "GiniReconciliation",
    "GroupedDistribution",
    "LorenzCurve",
    "MetricConfig",
    "MetricReport",
    "POISSON_MIXTURE",
    "PoissonComponent",
    "RecordTable",
    "SkewComparison",
    "SyntheticSpec",
    "ZERO_INFLATED_LOGNORMAL",
    "atkinson",
    "atkinson_reconcile",
    "binned_analysis",
    "bootstrap_difference",
    "bootstrap_metric",
    "bottom_share",
    "covariate_values",
    "equivalent_to_top",
    "full_report",
    "generate_synthetic",
    "generate_values",
    "gini",
    "gini_reconcile",
    "load_table",
    "log_edges",
    "lorenz_curve",
    "lorenz_downsample",
    "make_distribution",
    "member_values",
    "percent_of_equal_share",
    "percentile_ratio",
    "percentile_value",
    "resolve_metric",
    "share_ratio",
    "skew_vs_covariate",
    "subgroup_metrics",
    "to_distribution",
    "top_share",
    "write_table",
]
