import json

import pytest
from click.testing import CliRunner

from ineqkit.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, text, name="table.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _equal_fixture(tmp_path):
    rows = "\n".join(f"m{i:03d},5" for i in range(100))
    return _write(tmp_path, "member_id,count\n" + rows + "\n")


def _zero_heavy_fixture(tmp_path):
    rows = "\n".join(f"m{i:03d},0" for i in range(99)) + "\nm099,50"
    return _write(tmp_path, "member_id,count\n" + rows + "\n", "zeros.csv")


def _multi_engagement_fixture(tmp_path):
    # likes perfectly equal, retweets mildly skewed, quotes fully concentrated
    lines = ["member_id,engagement_type,count"]
    for i in range(10):
        lines.append(f"m{i},likes,4")
        lines.append(f"m{i},retweets,{i}")
        lines.append(f"m{i},quotes,{100 if i == 9 else 0}")
    return _write(tmp_path, "\n".join(lines) + "\n", "multi.csv")


def test_compute_equal_distribution(runner, tmp_path):
    result = runner.invoke(main, ["compute", "--input", _equal_fixture(tmp_path)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].split()[:2] == ["dimension", "members"]
    row = lines[2].split()
    assert row[0] == "all"
    gini_col = lines[0].split().index("gini")
    assert row[gini_col] == "0"
    top1_col = lines[0].split().index("top_1%_share")
    assert row[top1_col] == "1"


def test_compute_zero_heavy_renders_undefined(runner, tmp_path):
    result = runner.invoke(main, ["compute", "--input", _zero_heavy_fixture(tmp_path)])
    assert result.exit_code == 0
    assert "undefined (zero bottom share)" in result.output


def test_compute_rows_sorted_by_gini(runner, tmp_path):
    result = runner.invoke(
        main,
        [
            "compute",
            "--input",
            _multi_engagement_fixture(tmp_path),
            "--dimension",
            "engagement_type",
            "--format",
            "csv",
        ],
    )
    assert result.exit_code == 0
    rows = [line.split(",") for line in result.output.strip().splitlines()]
    labels = [r[0] for r in rows[1:]]
    assert labels == ["likes", "retweets", "quotes"]
    gini_idx = rows[0].index("gini")
    ginis = [float(r[gini_idx]) for r in rows[1:]]
    assert ginis == sorted(ginis)


def test_cross_format_numeric_consistency(runner, tmp_path):
    path = _multi_engagement_fixture(tmp_path)
    args = ["compute", "--input", path, "--dimension", "engagement_type=retweets"]
    table = runner.invoke(main, args).output
    csv_text = runner.invoke(main, args + ["--format", "csv"]).output
    json_text = runner.invoke(main, args + ["--format", "json"]).output

    csv_rows = [line.split(",") for line in csv_text.strip().splitlines()]
    csv_map = dict(zip(csv_rows[0], csv_rows[1]))
    payload = json.loads(json_text)["reports"][0]["metrics"]
    assert float(csv_map["gini"]) == payload["gini"]
    assert float(csv_map["atkinson(e=0.5)"]) == payload["atkinson"][0]["value"]
    assert float(csv_map["top_1%_share"]) == payload["top_shares"][0]["share"]
    assert float(csv_map["equal_share%"]) == payload["equal_share_pct"]
    # the table shows the same formatted numbers
    for cell in (csv_map["gini"], csv_map["top_1%_share"], csv_map["equal_share%"]):
        assert cell in table


def test_inverted_display(runner, tmp_path):
    path = _equal_fixture(tmp_path)
    result = runner.invoke(
        main, ["compute", "--input", path, "--inverted", "--format", "csv"]
    )
    assert result.exit_code == 0
    rows = [line.split(",") for line in result.output.strip().splitlines()]
    row = dict(zip(rows[0], rows[1]))
    assert float(row["100-equal_share%"]) == pytest.approx(50.0)
    assert float(row["100-equiv_top_10%"]) == pytest.approx(90.0)


def test_exit_codes(runner, tmp_path):
    missing = runner.invoke(main, ["compute", "--input", str(tmp_path / "nope.csv")])
    assert missing.exit_code != 0
    malformed = runner.invoke(
        main, ["compute", "--input", _write(tmp_path, "member_id,count\na,-3\n", "bad.csv")]
    )
    assert malformed.exit_code != 0
    assert "negative count" in malformed.output
    degenerate = runner.invoke(main, ["compute", "--input", _zero_heavy_fixture(tmp_path)])
    assert degenerate.exit_code == 0


def test_all_zero_slice_reports_undefined_not_error(runner, tmp_path):
    path = _write(tmp_path, "member_id,count\na,0\nb,0\n", "allzero.csv")
    result = runner.invoke(main, ["compute", "--input", path])
    assert result.exit_code == 0
    assert "undefined (zero total)" in result.output


def test_lorenz_csv_and_svg(runner, tmp_path):
    path = _multi_engagement_fixture(tmp_path)
    svg_path = tmp_path / "curves.svg"
    out_path = tmp_path / "curves.csv"
    result = runner.invoke(
        main,
        [
            "lorenz",
            "--input",
            path,
            "--dimension",
            "engagement_type",
            "--points",
            "16",
            "--svg",
            str(svg_path),
            "--log-y",
            "--out",
            str(out_path),
        ],
    )
    assert result.exit_code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "dimension,population_fraction,cumulative_share"
    assert any(line.startswith("likes,") for line in lines[1:])
    first_likes = next(line for line in lines[1:] if line.startswith("likes,"))
    assert first_likes == "likes,0,0"
    svg = svg_path.read_text()
    assert svg.startswith("<svg")
    assert "polyline" in svg and "log scale" in svg


def test_bootstrap_cli_deterministic(runner, tmp_path):
    path = _multi_engagement_fixture(tmp_path)
    args = [
        "bootstrap",
        "--input",
        path,
        "--dimension",
        "engagement_type=retweets",
        "--seed",
        "42",
        "--resamples",
        "50",
        "--format",
        "csv",
    ]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert first.output == second.output
    header = first.output.splitlines()[0].split(",")
    assert header[:4] == ["dimension", "metric", "value", "ci_low"]
    assert any(line.startswith("engagement_type=retweets,gini,") for line in first.output.splitlines())


def test_bootstrap_degenerate_metric_rendered_undefined(runner, tmp_path):
    result = runner.invoke(
        main,
        [
            "bootstrap",
            "--input",
            _zero_heavy_fixture(tmp_path),
            "--seed",
            "1",
            "--resamples",
            "20",
            "--format",
            "csv",
        ],
    )
    assert result.exit_code == 0
    assert ",undefined," in result.output


def test_compare_cli(runner, tmp_path):
    path = _multi_engagement_fixture(tmp_path)
    result = runner.invoke(
        main,
        [
            "compare",
            "--input",
            path,
            "--dimension",
            "engagement_type=likes",
            "--dimension",
            "engagement_type=quotes",
            "--seed",
            "3",
            "--resamples",
            "50",
            "--format",
            "csv",
        ],
    )
    assert result.exit_code == 0
    rows = [line.split(",") for line in result.output.strip().splitlines()]
    header = rows[0]
    by_metric = {r[0]: dict(zip(header, r)) for r in rows[1:]}
    assert by_metric["top_1%_share"]["distinguishable"] == "yes"
    wrong = runner.invoke(
        main, ["compare", "--input", path, "--dimension", "engagement_type=likes"]
    )
    assert wrong.exit_code != 0


def test_bins_cli_two_channels(runner, tmp_path):
    lines = ["member_id,suggestion_type,follower_count,count"]
    import numpy as np

    rng = np.random.default_rng(71)
    for i in range(300):
        followers = int(rng.integers(1, 10_000))
        ranking = int(rng.integers(1, 20))
        oon = 0 if (followers < 100 and rng.random() < 0.9) else int(rng.integers(1, 20))
        lines.append(f"m{i:04d},ranking,{followers},{ranking}")
        lines.append(f"m{i:04d},oon,{followers},{oon}")
    path = _write(tmp_path, "\n".join(lines) + "\n", "bins.csv")
    result = runner.invoke(
        main,
        [
            "bins",
            "--input",
            path,
            "--bins",
            "edges:1,100,10000",
            "--channel",
            "suggestion_type=ranking",
            "--channel",
            "suggestion_type=oon",
            "--format",
            "csv",
        ],
    )
    assert result.exit_code == 0
    assert "gini_delta[suggestion_type=oon-suggestion_type=ranking]" in result.output
    bad = runner.invoke(main, ["bins", "--input", path, "--bins", "nonsense"])
    assert bad.exit_code != 0


def test_synth_cli_round_trip(runner, tmp_path):
    out = tmp_path / "synthetic.csv"
    result = runner.invoke(
        main,
        [
            "synth",
            "--generator",
            "poisson-mixture",
            "--component",
            "0.9:1",
            "--component",
            "0.1:50",
            "--size",
            "500",
            "--seed",
            "13",
            "--out",
            str(out),
        ],
    )
    assert result.exit_code == 0
    again = tmp_path / "again.csv"
    runner.invoke(
        main,
        [
            "synth",
            "--generator",
            "poisson-mixture",
            "--component",
            "0.9:1",
            "--component",
            "0.1:50",
            "--size",
            "500",
            "--seed",
            "13",
            "--out",
            str(again),
        ],
    )
    assert out.read_text() == again.read_text()
    compute = runner.invoke(main, ["compute", "--input", str(out)])
    assert compute.exit_code == 0


def test_synth_cli_spec_file(runner, tmp_path):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(
        json.dumps(
            {
                "generator": "zero-inflated-lognormal",
                "size": 200,
                "seed": 5,
                "zero_fraction": 0.5,
                "log_mean": 1.0,
                "log_sigma": 2.0,
            }
        ),
        encoding="utf-8",
    )
    out = tmp_path / "zil.csv"
    result = runner.invoke(main, ["synth", "--spec", str(spec_path), "--out", str(out)])
    assert result.exit_code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "member_id,count"
    assert len(lines) == 201
