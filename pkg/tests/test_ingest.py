import numpy as np
import pytest

from ineqkit import (
    AggregationPolicy,
    covariate_values,
    load_table,
    member_values,
    to_distribution,
    write_table,
)
from ineqkit.errors import (
    ConflictingCovariateError,
    EmptyAfterFilterError,
    MalformedRowError,
    NegativeCountError,
)


def _write(tmp_path, text, name="table.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


BASIC = """member_id,engagement_type,follower_count,count
a,likes,10,3
a,likes,10,2
b,retweets,5,7
a,retweets,10,1
"""


def test_repeated_rows_are_summed(tmp_path):
    table = load_table(_write(tmp_path, BASIC))
    assert table.counts[("a", ("likes",))] == 5
    assert table.counts[("a", ("retweets",))] == 1
    assert table.counts[("b", ("retweets",))] == 7
    assert table.members == {"a", "b"}


def test_tab_delimiter_autodetected(tmp_path):
    text = BASIC.replace(",", "\t")
    table = load_table(_write(tmp_path, text, "table.tsv"))
    assert table.counts[("a", ("likes",))] == 5


def test_negative_count_reports_line(tmp_path):
    text = "member_id,count\na,1\nb,-2\n"
    with pytest.raises(NegativeCountError) as exc:
        load_table(_write(tmp_path, text))
    assert exc.value.line_no == 3


def test_malformed_row_reports_line(tmp_path):
    text = "member_id,count\na,1\nb\n"
    with pytest.raises(MalformedRowError) as exc:
        load_table(_write(tmp_path, text))
    assert exc.value.line_no == 3


def test_non_integer_count_rejected(tmp_path):
    text = "member_id,count\na,1.5\n"
    with pytest.raises(MalformedRowError):
        load_table(_write(tmp_path, text))


def test_missing_required_column(tmp_path):
    with pytest.raises(MalformedRowError):
        load_table(_write(tmp_path, "member_id,value\na,1\n"))


def test_unknown_column_needs_declaration(tmp_path):
    text = "member_id,channel,count\na,x,1\n"
    with pytest.raises(MalformedRowError):
        load_table(_write(tmp_path, text))
    table = load_table(_write(tmp_path, text), dimension_columns=("channel",))
    assert table.dimension_columns == ("channel",)


def test_conflicting_covariate(tmp_path):
    text = "member_id,follower_count,count\na,10,1\na,11,2\n"
    with pytest.raises(ConflictingCovariateError):
        load_table(_write(tmp_path, text))


def test_zero_fill_for_members_absent_from_slice(tmp_path):
    text = "member_id,engagement_type,count\na,likes,5\nb,retweets,2\n"
    table = load_table(_write(tmp_path, text))
    d = to_distribution(table, dimension={"engagement_type": "likes"})
    assert d.values.tolist() == [0.0, 5.0]
    policy = AggregationPolicy(include_zero_members=False)
    d = to_distribution(table, policy, dimension={"engagement_type": "likes"})
    assert d.values.tolist() == [5.0]


def test_follower_threshold_excludes_members(tmp_path):
    text = "member_id,follower_count,count\na,0,9\nb,1,2\nc,5,3\n"
    table = load_table(_write(tmp_path, text))
    d = to_distribution(table)  # default policy: follower_count >= 1
    assert d.values.tolist() == [2.0, 3.0]
    relaxed = AggregationPolicy(min_covariates={"follower_count": 0})
    assert to_distribution(table, relaxed).size == 3


def test_filter_on_missing_covariate_is_inert(tmp_path):
    text = "member_id,count\na,1\nb,0\n"
    table = load_table(_write(tmp_path, text))
    d = to_distribution(table)
    assert d.size == 2


def test_empty_after_filter(tmp_path):
    text = "member_id,follower_count,count\na,0,9\n"
    table = load_table(_write(tmp_path, text))
    with pytest.raises(EmptyAfterFilterError):
        to_distribution(table)


def test_order_independence(tmp_path):
    rng = np.random.default_rng(61)
    rows = [
        f"m{rng.integers(0, 50)},{kind},{rng.integers(0, 9)}"
        for kind in ("likes", "retweets")
        for _ in range(300)
    ]
    header = "member_id,engagement_type,count\n"
    t1 = load_table(_write(tmp_path, header + "\n".join(rows) + "\n", "a.csv"))
    shuffled = rows[:]
    rng.shuffle(shuffled)
    t2 = load_table(_write(tmp_path, header + "\n".join(shuffled) + "\n", "b.csv"))
    for dim in (None, {"engagement_type": "likes"}):
        d1 = to_distribution(t1, dimension=dim)
        d2 = to_distribution(t2, dimension=dim)
        assert d1.values.tolist() == d2.values.tolist()


def test_zero_fill_conservation_across_slices(tmp_path):
    table = load_table(_write(tmp_path, BASIC))
    sizes = {
        value: to_distribution(table, dimension={"engagement_type": value}).size
        for value in table.dimension_values("engagement_type")
    }
    assert set(sizes.values()) == {2}


def test_round_trip(tmp_path):
    table = load_table(_write(tmp_path, BASIC))
    out = tmp_path / "rewritten.csv"
    write_table(table, out)
    reloaded = load_table(out)
    assert reloaded.counts == table.counts
    assert reloaded.covariates == table.covariates
    for dim in (None, {"engagement_type": "likes"}):
        assert (
            to_distribution(table, dimension=dim).values.tolist()
            == to_distribution(reloaded, dimension=dim).values.tolist()
        )


def test_member_values_sorted_and_aligned_covariates(tmp_path):
    text = "member_id,follower_count,count\nzed,7,1\nann,3,5\n"
    table = load_table(_write(tmp_path, text))
    members, values = member_values(table)
    assert members == ["ann", "zed"]
    assert values.tolist() == [5.0, 1.0]
    assert covariate_values(table, members, "follower_count").tolist() == [3.0, 7.0]


def test_unknown_dimension_column_rejected(tmp_path):
    table = load_table(_write(tmp_path, BASIC))
    with pytest.raises(ValueError):
        to_distribution(table, dimension={"suggestion_type": "x"})


def test_blank_lines_skipped(tmp_path):
    text = "member_id,count\na,1\n\nb,2\n"
    table = load_table(_write(tmp_path, text))
    assert table.members == {"a", "b"}
