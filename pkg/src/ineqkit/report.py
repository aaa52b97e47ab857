"""Report rendering: human tables, JSON, CSV, and Lorenz plot emission.

All three formats carry the same numeric values, formatted to 9 significant
digits with a period decimal separator regardless of locale. Degenerate
metrics render as ``undefined (...)`` text cells; they are findings, not
errors.
"""

from __future__ import annotations

import json
import math
from typing import Mapping, Optional

from .decompose import BinSummary, SkewComparison
from .errors import NO_SOLUTION, ZERO_DENOMINATOR, ZERO_TOTAL
from .metrics import MetricConfig, MetricReport

_REASON_TEXT = {
    ZERO_DENOMINATOR: "undefined (zero bottom share)",
    NO_SOLUTION: "undefined (no solution)",
    ZERO_TOTAL: "undefined (zero total)",
}


def fmt_num(value) -> str:
    """Locale-independent numeric formatting shared by every output format."""
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(value)
    return f"{value:.9g}"


def _round9(value: Optional[float]) -> Optional[float]:
    return None if value is None else float(f"{value:.9g}")


def _reason_text(reason: Optional[str]) -> str:
    return _REASON_TEXT.get(reason, "undefined")


def _invert(value: Optional[float]) -> Optional[float]:
    return None if value is None else 100.0 - value


def report_columns(config: MetricConfig, inverted: bool) -> list:
    """Ordered (header, extractor) pairs for one MetricReport row."""
    cols = [("members", lambda r: r.size), ("total", lambda r: r.total)]
    cols.append(("gini", lambda r: r.gini))
    for i, eps in enumerate(config.epsilons):
        cols.append((f"atkinson(e={eps:g})", lambda r, i=i: r.atkinson[i][1]))
    for i, x in enumerate(config.top_x):
        cols.append((f"top_{x:g}%_share", lambda r, i=i: r.top_shares[i][1]))

    def ratio_cell(r, idx):
        entry = r.ratios[idx]
        return entry.value if entry.value is not None else _reason_text(entry.degenerate_reason)

    n_pct = len(config.percentile_ratios)
    for i, (hi, lo) in enumerate(config.percentile_ratios):
        cols.append((f"p{hi:g}/p{lo:g}_ratio", lambda r, i=i: ratio_cell(r, i)))
    for i, (hi, lo) in enumerate(config.share_ratios):
        cols.append((f"share_{hi:g}/{lo:g}_ratio", lambda r, i=i: ratio_cell(r, n_pct + i)))

    if inverted:
        cols.append(("100-equal_share%", lambda r: _invert(r.equal_share_pct)))
        for i, x in enumerate(config.equivalence_x):
            cols.append(
                (f"100-equiv_top_{x:g}%", lambda r, i=i: _invert(r.equivalent_to_top[i][1]))
            )
    else:
        cols.append(("equal_share%", lambda r: r.equal_share_pct))
        for i, x in enumerate(config.equivalence_x):
            cols.append((f"equiv_top_{x:g}%", lambda r, i=i: r.equivalent_to_top[i][1]))
    return cols


def _cell(value) -> str:
    return value if isinstance(value, str) else fmt_num(value)


def render_table(rows, config: MetricConfig, inverted: bool = False, label: str = "dimension") -> str:
    """Fixed-width table, one row per (label, MetricReport)."""
    cols = report_columns(config, inverted)
    header = [label] + [name for name, _ in cols]
    body = [[str(name)] + [_cell(fn(report)) for _, fn in cols] for name, report in rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(header)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_csv(rows, config: MetricConfig, inverted: bool = False, label: str = "dimension") -> str:
    cols = report_columns(config, inverted)
    lines = [",".join([label] + [name for name, _ in cols])]
    for name, report in rows:
        lines.append(",".join([str(name)] + [_cell(fn(report)) for _, fn in cols]))
    return "\n".join(lines) + "\n"


def render_json(rows, config: MetricConfig, inverted: bool = False, label: str = "dimension") -> str:
    payload = []
    for name, report in rows:
        entry = report.to_dict()
        entry = _round_tree(entry)
        if inverted:
            entry["equal_share_pct"] = _round9(_invert(report.equal_share_pct))
            entry["equivalent_to_top"] = [
                {"x": x, "q": _round9(_invert(q))} for x, q in report.equivalent_to_top
            ]
            entry["inverted_display"] = True
        payload.append({label: name, "metrics": entry})
    return json.dumps({"reports": payload}, indent=2) + "\n"


def _round_tree(node):
    if isinstance(node, float):
        return _round9(node)
    if isinstance(node, list):
        return [_round_tree(v) for v in node]
    if isinstance(node, dict):
        return {k: _round_tree(v) for k, v in node.items()}
    return node


def render_reports(
    rows, config: MetricConfig, fmt: str, inverted: bool = False, label: str = "dimension"
) -> str:
    renderers = {"table": render_table, "csv": render_csv, "json": render_json}
    try:
        renderer = renderers[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; choose from {sorted(renderers)}")
    return renderer(rows, config, inverted=inverted, label=label)


def render_bootstrap_rows(rows, fmt: str) -> str:
    """Rows of (dimension, metric, BootstrapResult-or-None). None means undefined."""
    header = [
        "dimension",
        "metric",
        "value",
        "ci_low",
        "ci_high",
        "std_error",
        "degenerate_resamples",
    ]
    flat = []
    for dim, metric, result in rows:
        if result is None:
            flat.append([str(dim), metric, "undefined", "", "", "", ""])
        else:
            flat.append(
                [
                    str(dim),
                    metric,
                    fmt_num(result.point_estimate),
                    fmt_num(result.ci_low),
                    fmt_num(result.ci_high),
                    fmt_num(result.std_error),
                    str(result.degenerate_resamples),
                ]
            )
    return _render_grid(header, flat, fmt, json_name="bootstrap")


def render_compare_rows(rows, fmt: str) -> str:
    """Rows of (metric, BootstrapResult-or-None) for a two-population difference."""
    header = [
        "metric",
        "difference",
        "ci_low",
        "ci_high",
        "std_error",
        "distinguishable",
        "degenerate_resamples",
    ]
    flat = []
    for metric, result in rows:
        if result is None:
            flat.append([metric, "undefined", "", "", "", "", ""])
        else:
            flat.append(
                [
                    metric,
                    fmt_num(result.point_estimate),
                    fmt_num(result.ci_low),
                    fmt_num(result.ci_high),
                    fmt_num(result.std_error),
                    fmt_num(result.distinguishable),
                    str(result.degenerate_resamples),
                ]
            )
    return _render_grid(header, flat, fmt, json_name="comparison")


def render_bins(summaries: Mapping[str, BinSummary], fmt: str) -> str:
    header = [
        "channel",
        "bin_low",
        "bin_high",
        "members",
        "mean_covariate",
        "mean_outcome",
        "gini",
        "atkinson",
        "top_1%_share",
        "flag",
    ]
    flat = []
    for channel, summary in summaries.items():
        for row in summary.rows:
            flag = "empty" if row.empty else ("zero-total" if row.degenerate else "")
            flat.append(
                [
                    str(channel),
                    fmt_num(row.low),
                    fmt_num(row.high),
                    str(row.count),
                    fmt_num(row.mean_covariate) if row.mean_covariate is not None else "",
                    fmt_num(row.mean_outcome) if row.mean_outcome is not None else "",
                    fmt_num(row.gini) if row.gini is not None else "undefined",
                    fmt_num(row.atkinson) if row.atkinson is not None else "undefined",
                    fmt_num(row.top1_share) if row.top1_share is not None else "undefined",
                    flag,
                ]
            )
    return _render_grid(header, flat, fmt, json_name="bins")


def render_skew_comparison(comparison: SkewComparison, fmt: str) -> str:
    base = comparison.channels[0]
    header = ["bin_low", "bin_high"]
    for name in comparison.channels:
        header += [f"gini[{name}]", f"mean_outcome[{name}]"]
    for name in comparison.channels[1:]:
        header.append(f"gini_delta[{name}-{base}]")
    flat = []
    for row in comparison.rows:
        cells = [fmt_num(row.low), fmt_num(row.high)]
        for name in comparison.channels:
            g = row.gini[name]
            o = row.mean_outcome[name]
            cells += [fmt_num(g) if g is not None else "undefined", fmt_num(o) if o is not None else ""]
        for name in comparison.channels[1:]:
            delta = row.gini_delta[name]
            cells.append(fmt_num(delta) if delta is not None else "undefined")
        flat.append(cells)
    return _render_grid(header, flat, fmt, json_name="skew_comparison")


def _render_grid(header, rows, fmt: str, json_name: str) -> str:
    if fmt == "csv":
        return "\n".join([",".join(header)] + [",".join(r) for r in rows]) + "\n"
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        return json.dumps({json_name: payload}, indent=2) + "\n"
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def lorenz_csv(curves) -> str:
    """CSV of (label, population_fraction, cumulative_share) curve points."""
    lines = ["dimension,population_fraction,cumulative_share"]
    for label, curve in curves:
        for f, s in zip(curve.fractions.tolist(), curve.shares.tolist()):
            lines.append(f"{label},{fmt_num(f)},{fmt_num(s)}")
    return "\n".join(lines) + "\n"


_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2")

# Log-scale rendering floor: shares in [0, floor] map to a small linear band
# so the zero-to-nonzero transition stays visible.
_LOG_FLOOR = 1e-6
_LINEAR_BAND = 0.12


def _y_transform(share: float, log_y: bool) -> float:
    if not log_y:
        return share
    if share <= _LOG_FLOOR:
        return (share / _LOG_FLOOR) * _LINEAR_BAND
    decades = -math.log10(_LOG_FLOOR)
    return _LINEAR_BAND + (1.0 - _LINEAR_BAND) * (math.log10(share / _LOG_FLOOR) / decades)


def lorenz_svg(curves, log_y: bool = False) -> str:
    """Minimal static SVG: axes, equality diagonal, one polyline per curve."""
    width, height, margin = 720, 540, 70
    plot_w, plot_h = width - 2 * margin, height - 2 * margin

    def px(f: float) -> float:
        return margin + f * plot_w

    def py(s: float) -> float:
        return height - margin - _y_transform(s, log_y) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>',
        f'<polyline fill="none" stroke="#555" stroke-dasharray="6,4" points="'
        + " ".join(
            f"{px(t):.2f},{py(t):.2f}" for t in [i / 64 for i in range(65)]
        )
        + '"/>',
        f'<text x="{width / 2:.0f}" y="{height - margin / 3:.0f}" text-anchor="middle" '
        f'font-size="14">cumulative population fraction</text>',
        f'<text x="{margin / 3:.0f}" y="{height / 2:.0f}" text-anchor="middle" '
        f'font-size="14" transform="rotate(-90 {margin / 3:.0f} {height / 2:.0f})">'
        f'cumulative share{" (log scale)" if log_y else ""}</text>',
    ]
    for i, (label, curve) in enumerate(curves):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{px(f):.2f},{py(s):.2f}"
            for f, s in zip(curve.fractions.tolist(), curve.shares.tolist())
        )
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(
            f'<text x="{width - margin + 6}" y="{margin + 18 * i + 12}" font-size="12" '
            f'fill="{color}">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
