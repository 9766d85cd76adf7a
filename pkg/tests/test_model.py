import pytest

from lossnet.distributions import (
    HoldingDistribution,
    build_deterministic_demand,
    build_truncated_power_law,
)
from lossnet.model import (
    ArrivalSpec,
    NetworkModel,
    RequestClass,
    offered_load,
    validate,
)


def single_pool_model(capacity=500):
    demand = build_truncated_power_law(0.3, 1.5, 2000)
    cls = RequestClass(1.0, [demand], HoldingDistribution.exponential(1.0))
    return NetworkModel(ArrivalSpec.poisson(1.0), [cls], [capacity])


def test_reference_model_validates_clean():
    assert validate(single_pool_model()) == []


def test_probability_mass_deficit_reported():
    d = build_deterministic_demand(1)
    h = HoldingDistribution.exponential(1.0)
    m = NetworkModel(
        ArrivalSpec.poisson(1.0),
        [RequestClass(0.5, [d], h), RequestClass(0.4, [d], h)],
        [10],
    )
    violations = validate(m)
    assert any("sum to 0.9" in v for v in violations)


def test_demand_vector_shape_mismatch_names_the_class():
    d = build_deterministic_demand(1)
    h = HoldingDistribution.exponential(1.0)
    m = NetworkModel(
        ArrivalSpec.poisson(1.0),
        [RequestClass(1.0, [d], h)],
        [10, 10],
    )
    violations = validate(m)
    assert any("classes[0].demands" in v for v in violations)


def test_nonpositive_capacity_reported():
    m = single_pool_model(capacity=0)
    assert any("capacities[0]" in v for v in validate(m))


def test_probability_outside_unit_interval_reported():
    d = build_deterministic_demand(1)
    h = HoldingDistribution.exponential(1.0)
    m = NetworkModel(ArrivalSpec.poisson(1.0), [RequestClass(1.2, [d], h)], [10])
    assert any("probability" in v for v in validate(m))


def test_offered_load_single_pool():
    loads = offered_load(single_pool_model())
    assert len(loads) == 1
    assert abs(loads[0] - 485.8) < 0.5


def test_offered_load_zero_demand_everywhere():
    cls = RequestClass(
        1.0, [build_deterministic_demand(0)], HoldingDistribution.exponential(1.0)
    )
    m = NetworkModel(ArrivalSpec.poisson(2.0), [cls], [10])
    assert offered_load(m) == [0.0]


def example2_classes():
    from lossnet.distributions import (
        build_atom_plus_stretched_exp,
        build_truncated_geometric,
    )

    b11 = build_atom_plus_stretched_exp(0.8, 1, 0.15, 2000)
    b12 = build_deterministic_demand(50)
    b21 = build_truncated_geometric(0.6, 2000)
    b22 = build_truncated_power_law(0.3, 1.5, 2000)
    return [
        RequestClass(0.3, [b11, b12], HoldingDistribution.exponential(4.0)),
        RequestClass(0.7, [b21, b22], HoldingDistribution.uniform(0.0, 40.0)),
    ]


def test_offered_load_two_resource_instance():
    m = NetworkModel(ArrivalSpec.fixed_interval(1.0), example2_classes(), [500, 500])
    assert validate(m) == []
    loads = offered_load(m)
    # recorded from direct evaluation of rate * sum_l p_l E[theta_l] E[B_li]
    assert loads[0] == pytest.approx(49.13331381540131, rel=1e-12)
    assert loads[1] == pytest.approx(6861.2324264579465, rel=1e-12)


def test_offered_load_linear_in_rate():
    base = single_pool_model()
    doubled = NetworkModel(ArrivalSpec.poisson(2.0), base.classes, base.capacities)
    l1 = offered_load(base)
    l2 = offered_load(doubled)
    assert l2[0] == 2.0 * l1[0]


def test_offered_load_drops_when_demand_zeroed():
    m = NetworkModel(ArrivalSpec.fixed_interval(1.0), example2_classes(), [500, 500])
    before = offered_load(m)
    classes = list(m.classes)
    zeroed = RequestClass(
        classes[1].probability,
        [classes[1].demands[0], build_deterministic_demand(0)],
        classes[1].holding,
    )
    after = offered_load(NetworkModel(m.arrival, [classes[0], zeroed], m.capacities))
    assert after[1] < before[1]
    assert after[0] == before[0]


def test_fixed_interval_and_renewal_rates():
    assert ArrivalSpec.fixed_interval(0.5).rate == 2.0
    r = ArrivalSpec.renewal(HoldingDistribution.uniform(1.0, 3.0))
    assert r.rate == 0.5
    assert not r.is_poisson
    assert ArrivalSpec.poisson(3.0).is_poisson


def test_arrival_spec_rejects_bad_parameters():
    with pytest.raises(ValueError):
        ArrivalSpec.poisson(0.0)
    with pytest.raises(ValueError):
        ArrivalSpec.fixed_interval(-1.0)
