import json

import numpy as np
import pytest

from ineqkit import (
    POISSON_MIXTURE,
    ZERO_INFLATED_LOGNORMAL,
    PoissonComponent,
    SyntheticSpec,
    generate_synthetic,
    generate_values,
)


def test_zero_rate_poisson_is_all_zeros():
    spec = SyntheticSpec(
        generator=POISSON_MIXTURE,
        size=500,
        seed=1,
        components=(PoissonComponent(weight=1.0, rate=0.0),),
    )
    d = generate_synthetic(spec)
    assert d.total == 0.0
    assert d.is_degenerate


def test_full_zero_inflation_is_all_zeros():
    spec = SyntheticSpec(
        generator=ZERO_INFLATED_LOGNORMAL, size=500, seed=1, zero_fraction=1.0
    )
    assert generate_synthetic(spec).total == 0.0


def test_determinism():
    spec = SyntheticSpec(
        generator=POISSON_MIXTURE,
        size=2000,
        seed=99,
        components=(PoissonComponent(0.9, 1.0), PoissonComponent(0.1, 100.0)),
    )
    a = generate_values(spec)
    b = generate_values(spec)
    assert np.array_equal(a, b)
    other = SyntheticSpec(
        generator=POISSON_MIXTURE,
        size=2000,
        seed=100,
        components=spec.components,
    )
    assert not np.array_equal(a, generate_values(other))


def test_mixture_mean_within_three_sigma():
    # analytic mixture mean 10.9; variance 10.9 + 0.9*9.9^2 + 0.1*89.1^2
    spec = SyntheticSpec(
        generator=POISSON_MIXTURE,
        size=100_000,
        seed=7,
        components=(PoissonComponent(0.9, 1.0), PoissonComponent(0.1, 100.0)),
    )
    values = generate_values(spec)
    mixture_var = 10.9 + 0.9 * (1.0 - 10.9) ** 2 + 0.1 * (100.0 - 10.9) ** 2
    three_sigma = 3.0 * np.sqrt(mixture_var / spec.size)
    assert abs(values.mean() - 10.9) < three_sigma


def test_weights_must_sum_to_one():
    with pytest.raises(ValueError):
        SyntheticSpec(
            generator=POISSON_MIXTURE,
            size=10,
            components=(PoissonComponent(0.5, 1.0), PoissonComponent(0.4, 2.0)),
        )


def test_parameter_validation():
    with pytest.raises(ValueError):
        SyntheticSpec(generator="mystery", size=10)
    with pytest.raises(ValueError):
        SyntheticSpec(generator=ZERO_INFLATED_LOGNORMAL, size=0)
    with pytest.raises(ValueError):
        SyntheticSpec(generator=ZERO_INFLATED_LOGNORMAL, size=10, zero_fraction=1.5)
    with pytest.raises(ValueError):
        SyntheticSpec(generator=ZERO_INFLATED_LOGNORMAL, size=10, log_sigma=0.0)
    with pytest.raises(ValueError):
        PoissonComponent(weight=-0.1, rate=1.0)


def test_dict_round_trip(tmp_path):
    spec = SyntheticSpec(
        generator=ZERO_INFLATED_LOGNORMAL,
        size=123,
        seed=4,
        zero_fraction=0.85,
        log_mean=0.0,
        log_sigma=3.0,
    )
    assert SyntheticSpec.from_dict(spec.to_dict()) == spec
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec.to_dict()), encoding="utf-8")
    assert SyntheticSpec.from_json(path) == spec

    mixture = SyntheticSpec(
        generator=POISSON_MIXTURE,
        size=10,
        components=(PoissonComponent(1.0, 2.0),),
    )
    assert SyntheticSpec.from_dict(mixture.to_dict()) == mixture


def test_zero_inflated_lognormal_hits_extreme_skew_regime():
    from ineqkit import gini, top_share

    spec = SyntheticSpec(
        generator=ZERO_INFLATED_LOGNORMAL,
        size=50_000,
        seed=11,
        zero_fraction=0.85,
        log_sigma=3.0,
    )
    d = generate_synthetic(spec)
    assert gini(d) > 0.95
    assert top_share(d, 1.0) > 70.0
