"""Command-line front end: ingest, slice, compute, report.

Degenerate metrics are report content, not process failures: the exit code
is nonzero only for ingest/IO errors. Identical invocations (flags, files,
seed) produce byte-identical output.
"""

from __future__ import annotations

import sys

import click
import numpy as np

from . import report as rendering
from .bootstrap import BootstrapConfig, bootstrap_difference, bootstrap_metric
from .decompose import BinSpec, binned_analysis, log_edges, skew_vs_covariate
from .distribution import Distribution, lorenz_curve, lorenz_downsample
from .errors import DegenerateMetricError, EmptyAfterFilterError, IneqKitError
from .ingest import AggregationPolicy, covariate_values, load_table, member_values
from .metrics import MetricConfig, degenerate_report, full_report, resolve_metric
from .synth import (
    POISSON_MIXTURE,
    ZERO_INFLATED_LOGNORMAL,
    PoissonComponent,
    SyntheticSpec,
    generate_values,
)


def _parse_float_list(text: str) -> tuple:
    try:
        return tuple(float(part) for part in text.split(",") if part != "")
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated number list, got {text!r}")


def _parse_ratio(text: str) -> tuple:
    try:
        high, low = text.split("/")
        return float(high), float(low)
    except ValueError:
        raise click.BadParameter(f"expected HI/LO, got {text!r}")


def _parse_dimensions(specs) -> tuple:
    """Split --dimension flags into a filter dict and at most one fan-out column."""
    filters = {}
    fan_out = None
    for spec in specs:
        if "=" in spec:
            key, value = spec.split("=", 1)
            filters[key] = value
        elif fan_out is None:
            fan_out = spec
        else:
            raise click.BadParameter("at most one bare --dimension KEY may be given")
    return filters, fan_out


def _write_out(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _policy(include_zeros: bool, min_followers: int) -> AggregationPolicy:
    return AggregationPolicy(
        include_zero_members=include_zeros,
        min_covariates={"follower_count": min_followers},
    )


def _metric_config(epsilon: str, top_x: str, ratio) -> MetricConfig:
    epsilons = _parse_float_list(epsilon)
    tops = _parse_float_list(top_x)
    ratios = tuple(_parse_ratio(r) for r in ratio)
    return MetricConfig(
        epsilons=epsilons,
        top_x=tops,
        percentile_ratios=ratios,
        share_ratios=ratios,
        equivalence_x=tops,
    )


def _slices(table, policy, filters, fan_out):
    """Yield (label, Distribution) per requested slice, skipping empty fan-out slices."""
    if fan_out is None:
        label = ",".join(f"{k}={v}" for k, v in filters.items()) or "all"
        _, values = member_values(table, policy, filters or None)
        yield label, values
        return
    for value in table.dimension_values(fan_out):
        dimension = {**filters, fan_out: value}
        try:
            _, values = member_values(table, policy, dimension)
        except EmptyAfterFilterError:
            click.echo(f"note: slice {fan_out}={value} has no members, skipped", err=True)
            continue
        yield value, values


input_option = click.option(
    "--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False)
)
dimension_option = click.option(
    "--dimension", "dimensions", multiple=True, help="KEY=VALUE filter, or bare KEY to fan out."
)
zeros_option = click.option("--include-zeros/--no-include-zeros", default=True, show_default=True)
followers_option = click.option("--min-followers", default=1, show_default=True, type=int)
epsilon_option = click.option("--epsilon", default="0.5", show_default=True)
topx_option = click.option("--top-x", default="1,10", show_default=True)
ratio_option = click.option("--ratio", multiple=True, default=("80/20",), show_default=True)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table", show_default=True
)
out_option = click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
seed_option = click.option("--seed", default=0, show_default=True, type=int)
resamples_option = click.option("--resamples", default=200, show_default=True, type=int)
confidence_option = click.option("--confidence", default=0.95, show_default=True, type=float)
jobs_option = click.option("--jobs", default=1, show_default=True, type=int)


@click.group()
def main():
    """Distributional inequality metrics over per-member outcome tables."""


@main.command()
@input_option
@dimension_option
@zeros_option
@followers_option
@epsilon_option
@topx_option
@ratio_option
@format_option
@click.option("--inverted", is_flag=True, help="Display equivalence metrics as 100 - value.")
@out_option
def compute(input_path, dimensions, include_zeros, min_followers, epsilon, top_x, ratio, fmt, inverted, out_path):
    """Metric report per dimension slice, sorted by ascending Gini."""
    try:
        table = load_table(input_path)
        policy = _policy(include_zeros, min_followers)
        config = _metric_config(epsilon, top_x, ratio)
        filters, fan_out = _parse_dimensions(dimensions)
        rows = []
        for label, values in _slices(table, policy, filters, fan_out):
            dist = Distribution(values)
            try:
                rows.append((label, full_report(dist, config)))
            except DegenerateMetricError:
                rows.append((label, degenerate_report(dist, config)))
        rows.sort(key=lambda item: (item[1].gini is None, item[1].gini, item[0]))
        _write_out(rendering.render_reports(rows, config, fmt, inverted=inverted), out_path)
    except IneqKitError as err:
        raise click.ClickException(str(err))


@main.command()
@input_option
@dimension_option
@zeros_option
@followers_option
@click.option("--points", default=512, show_default=True, type=int, help="Downsample target.")
@click.option("--log-y", is_flag=True, help="Log-scale shares in the SVG, linear below 1e-6.")
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), default=None)
@out_option
def lorenz(input_path, dimensions, include_zeros, min_followers, points, log_y, svg_path, out_path):
    """Emit downsampled Lorenz curve points (CSV), optionally an SVG rendering."""
    try:
        table = load_table(input_path)
        policy = _policy(include_zeros, min_followers)
        filters, fan_out = _parse_dimensions(dimensions)
        curves = []
        for label, values in _slices(table, policy, filters, fan_out):
            dist = Distribution(values)
            if dist.total == 0.0:
                click.echo(f"note: slice {label} has zero total, no curve", err=True)
                continue
            curves.append((label, lorenz_downsample(lorenz_curve(dist), points)))
        _write_out(rendering.lorenz_csv(curves), out_path)
        if svg_path is not None:
            with open(svg_path, "w", encoding="utf-8") as fh:
                fh.write(rendering.lorenz_svg(curves, log_y=log_y))
    except IneqKitError as err:
        raise click.ClickException(str(err))


def _selected_metrics(config: MetricConfig):
    """Named metric callables matching the report configuration."""
    selected = [("gini", resolve_metric("gini"))]
    for eps in config.epsilons:
        selected.append((f"atkinson(e={eps:g})", resolve_metric("atkinson", epsilon=eps)))
    for x in config.top_x:
        selected.append((f"top_{x:g}%_share", resolve_metric("top_share", x=x)))
    for high, low in config.percentile_ratios:
        selected.append(
            (f"p{high:g}/p{low:g}_ratio", resolve_metric("percentile_ratio", high=high, low=low))
        )
    for high, low in config.share_ratios:
        selected.append(
            (f"share_{high:g}/{low:g}_ratio", resolve_metric("share_ratio", high=high, low=low))
        )
    selected.append(("equal_share%", resolve_metric("percent_of_equal_share")))
    for x in config.equivalence_x:
        selected.append((f"equiv_top_{x:g}%", resolve_metric("equivalent_to_top", x=x)))
    return selected


@main.command()
@input_option
@dimension_option
@zeros_option
@followers_option
@epsilon_option
@topx_option
@ratio_option
@seed_option
@resamples_option
@confidence_option
@jobs_option
@format_option
@out_option
def bootstrap(input_path, dimensions, include_zeros, min_followers, epsilon, top_x, ratio, seed, resamples, confidence, jobs, fmt, out_path):
    """Bootstrap confidence intervals for every configured metric."""
    try:
        table = load_table(input_path)
        policy = _policy(include_zeros, min_followers)
        config = _metric_config(epsilon, top_x, ratio)
        boot_config = BootstrapConfig(n_resamples=resamples, confidence_level=confidence, seed=seed)
        filters, fan_out = _parse_dimensions(dimensions)
        rows = []
        for label, values in _slices(table, policy, filters, fan_out):
            dist = Distribution(values)
            for name, metric in _selected_metrics(config):
                try:
                    rows.append((label, name, bootstrap_metric(dist, metric, boot_config, n_jobs=jobs)))
                except DegenerateMetricError:
                    rows.append((label, name, None))
        _write_out(rendering.render_bootstrap_rows(rows, fmt), out_path)
    except IneqKitError as err:
        raise click.ClickException(str(err))


@main.command()
@input_option
@click.option(
    "--dimension",
    "dimensions",
    multiple=True,
    required=True,
    help="Exactly two KEY=VALUE slices to compare.",
)
@zeros_option
@followers_option
@epsilon_option
@topx_option
@ratio_option
@seed_option
@resamples_option
@confidence_option
@jobs_option
@format_option
@out_option
def compare(input_path, dimensions, include_zeros, min_followers, epsilon, top_x, ratio, seed, resamples, confidence, jobs, fmt, out_path):
    """Bootstrap the metric differences between two dimension slices."""
    try:
        if len(dimensions) != 2 or any("=" not in d for d in dimensions):
            raise click.BadParameter("compare needs exactly two --dimension KEY=VALUE flags")
        table = load_table(input_path)
        policy = _policy(include_zeros, min_followers)
        config = _metric_config(epsilon, top_x, ratio)
        boot_config = BootstrapConfig(n_resamples=resamples, confidence_level=confidence, seed=seed)
        dists = []
        for spec in dimensions:
            key, value = spec.split("=", 1)
            dists.append(Distribution(member_values(table, policy, {key: value})[1]))
        rows = []
        for name, metric in _selected_metrics(config):
            try:
                rows.append((name, bootstrap_difference(dists[0], dists[1], metric, boot_config, n_jobs=jobs)))
            except DegenerateMetricError:
                rows.append((name, None))
        _write_out(rendering.render_compare_rows(rows, fmt), out_path)
    except IneqKitError as err:
        raise click.ClickException(str(err))


def _parse_bins(text: str, covariates: np.ndarray, covariate_name: str) -> BinSpec:
    if text.startswith("edges:"):
        edges = _parse_float_list(text[len("edges:") :])
        if len(edges) < 2:
            raise click.BadParameter("edges:... needs at least two edges")
        return BinSpec.from_edges(edges, covariate=covariate_name)
    if text.startswith("log"):
        try:
            n_bins = int(text[3:])
        except ValueError:
            raise click.BadParameter(f"expected logN or edges:..., got {text!r}")
        return BinSpec.from_edges(log_edges(covariates, n_bins), covariate=covariate_name)
    raise click.BadParameter(f"expected logN or edges:..., got {text!r}")


@main.command()
@input_option
@click.option("--covariate", default="follower_count", show_default=True)
@click.option("--bins", "bins_text", default="log6", show_default=True, help="logN or edges:A,B,...")
@click.option(
    "--channel",
    "channels",
    multiple=True,
    help="KEY=VALUE dimension slice per channel; omit for one whole-table channel.",
)
@zeros_option
@followers_option
@epsilon_option
@format_option
@out_option
def bins(input_path, covariate, bins_text, channels, include_zeros, min_followers, epsilon, fmt, out_path):
    """Within-bin skew metrics by covariate, with cross-channel Gini deltas."""
    try:
        table = load_table(input_path)
        policy = _policy(include_zeros, min_followers)
        eps = _parse_float_list(epsilon)[0]
        channel_specs = []
        if channels:
            for spec in channels:
                if "=" not in spec:
                    raise click.BadParameter("--channel takes KEY=VALUE")
                key, value = spec.split("=", 1)
                channel_specs.append((f"{key}={value}", {key: value}))
        else:
            channel_specs.append(("all", None))
        summaries = {}
        spec_obj = None
        for label, dimension in channel_specs:
            members, values = member_values(table, policy, dimension)
            covs = covariate_values(table, members, covariate)
            if spec_obj is None:
                spec_obj = _parse_bins(bins_text, covs, covariate)
            summaries[label] = binned_analysis(covs, values, spec_obj, epsilon=eps)
        text = rendering.render_bins(summaries, fmt)
        if len(summaries) >= 2:
            text += rendering.render_skew_comparison(skew_vs_covariate(summaries), fmt)
        _write_out(text, out_path)
    except IneqKitError as err:
        raise click.ClickException(str(err))


@main.command()
@click.option(
    "--generator",
    type=click.Choice([POISSON_MIXTURE, ZERO_INFLATED_LOGNORMAL]),
    default=POISSON_MIXTURE,
    show_default=True,
)
@click.option("--size", default=1000, show_default=True, type=int)
@seed_option
@click.option(
    "--component",
    "components",
    multiple=True,
    help="WEIGHT:RATE Poisson mixture component; repeatable.",
)
@click.option("--zero-fraction", default=0.0, show_default=True, type=float)
@click.option("--log-mean", default=0.0, show_default=True, type=float)
@click.option("--log-sigma", default=1.0, show_default=True, type=float)
@click.option(
    "--spec",
    "spec_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="JSON spec file; overrides the generator flags.",
)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def synth(generator, size, seed, components, zero_fraction, log_mean, log_sigma, spec_path, out_path):
    """Write a synthetic member_id,count table. Lognormal draws are rounded to counts."""
    try:
        if spec_path is not None:
            spec = SyntheticSpec.from_json(spec_path)
        elif generator == POISSON_MIXTURE:
            parsed = []
            for text in components or ("1:1",):
                try:
                    weight, rate = text.split(":")
                    parsed.append(PoissonComponent(weight=float(weight), rate=float(rate)))
                except ValueError:
                    raise click.BadParameter(f"expected WEIGHT:RATE, got {text!r}")
            spec = SyntheticSpec(generator=generator, size=size, seed=seed, components=tuple(parsed))
        else:
            spec = SyntheticSpec(
                generator=generator,
                size=size,
                seed=seed,
                zero_fraction=zero_fraction,
                log_mean=log_mean,
                log_sigma=log_sigma,
            )
        values = generate_values(spec)
        counts = np.rint(values).astype(np.int64)
        width = len(str(spec.size))
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("member_id,count\n")
            for i, count in enumerate(counts.tolist()):
                fh.write(f"m{i:0{width}d},{count}\n")
        click.echo(f"wrote {spec.size} members to {out_path}")
    except (IneqKitError, ValueError) as err:
        raise click.ClickException(str(err))


if __name__ == "__main__":
    main()
