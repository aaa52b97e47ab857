import numpy as np
import pytest

from ineqkit import Distribution, make_distribution
from ineqkit.errors import (
    DegenerateMetricError,
    EmptyInputError,
    NegativeValueError,
    NonFiniteValueError,
)


def test_construction_sorts_and_sums():
    d = make_distribution([3, 1, 2])
    assert d.values.tolist() == [1.0, 2.0, 3.0]
    assert d.total == 6.0
    assert d.prefix_sums.tolist() == [1.0, 3.0, 6.0]
    assert d.size == 3
    assert len(d) == 3
    assert not d.is_degenerate


def test_all_zero_is_degenerate_but_representable():
    d = make_distribution([0, 0, 0])
    assert d.total == 0.0
    assert d.is_degenerate


def test_negative_value_reports_original_index():
    with pytest.raises(NegativeValueError) as exc:
        make_distribution([1, -1])
    assert exc.value.index == 1


def test_empty_input_rejected():
    with pytest.raises(EmptyInputError):
        make_distribution([])


def test_non_finite_rejected():
    with pytest.raises(NonFiniteValueError):
        make_distribution([1.0, float("nan")])
    with pytest.raises(NonFiniteValueError):
        make_distribution([float("inf")])


def test_multidimensional_rejected():
    with pytest.raises(ValueError):
        make_distribution([[1.0, 2.0]])


def test_prefix_consistency_on_random_data():
    rng = np.random.default_rng(11)
    for _ in range(50):
        values = rng.lognormal(0, 2, int(rng.integers(1, 500)))
        d = Distribution(values)
        assert abs(d.prefix_sums[-1] - d.total) <= 1e-9 * max(d.total, 1.0)
        assert np.all(np.diff(d.values) >= 0)
        assert np.all(np.diff(d.prefix_sums) >= 0)


def test_arrays_are_immutable():
    d = make_distribution([1, 2, 3])
    with pytest.raises(ValueError):
        d.values[0] = 5.0
    with pytest.raises(ValueError):
        d.prefix_sums[0] = 5.0


def test_from_sorted_fast_path_matches():
    rng = np.random.default_rng(7)
    values = np.sort(rng.lognormal(0, 1, 100))
    fast = Distribution._from_sorted(values.copy())
    slow = Distribution(values)
    assert fast.total == slow.total
    assert np.array_equal(fast.values, slow.values)
    assert np.array_equal(fast.prefix_sums, slow.prefix_sums)


def test_input_array_is_not_aliased():
    raw = np.array([3.0, 1.0, 2.0])
    d = Distribution(raw)
    raw[0] = 99.0
    assert d.values.tolist() == [1.0, 2.0, 3.0]
