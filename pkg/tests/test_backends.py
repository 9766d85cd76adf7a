"""Cross-checks the compiled kernel against the pure-Python one.

Every case demands exact equality of counters and per-arrival decisions,
not statistical agreement: the two kernels must walk the same event
sequence and round every float the same way.
"""

import numpy as np
import pytest

from lossnet.distributions import (
    HoldingDistribution,
    build_atom_plus_stretched_exp,
    build_deterministic_demand,
    build_truncated_geometric,
    build_truncated_power_law,
)
from lossnet.engine import SimConfig, estimate, run_replication
from lossnet.model import ArrivalSpec, NetworkModel, RequestClass

pytest.importorskip(
    "lossnet.engine._kernel_c", reason="compiled kernel not built"
)


def both(model, cfg, rep=0):
    a = run_replication(model, cfg, rep, record_decisions=True, backend="python")
    b = run_replication(model, cfg, rep, record_decisions=True, backend="compiled")
    return a, b


def assert_identical(a, b):
    assert a == b
    assert np.array_equal(a.decisions, b.decisions)


def test_single_resource_immediate():
    cls = RequestClass(
        1.0,
        [build_truncated_power_law(0.3, 1.5, 2000)],
        HoldingDistribution.exponential(1.0),
    )
    m = NetworkModel(ArrivalSpec.poisson(1.0), [cls], [600])
    assert_identical(*both(m, SimConfig(1000, 100000, seed=20240517)))


def test_multi_resource_multi_class_immediate():
    classes = [
        RequestClass(
            0.3,
            [build_atom_plus_stretched_exp(0.5, 1, 0.3, 1500), build_deterministic_demand(50)],
            HoldingDistribution.exponential(4.0),
        ),
        RequestClass(
            0.7,
            [build_truncated_geometric(0.6, 40), build_truncated_power_law(0.3, 1.5, 2000)],
            HoldingDistribution.uniform(0.0, 40.0),
        ),
    ]
    m = NetworkModel(ArrivalSpec.fixed_interval(1.0), classes, [900, 900])
    assert_identical(*both(m, SimConfig(2000, 100000, seed=77)))


def test_reserved_mode_all_holding_kinds():
    for holding in (
        HoldingDistribution.exponential(2.0),
        HoldingDistribution.deterministic(2.0),
        HoldingDistribution.uniform(1.0, 3.0),
    ):
        classes = [
            RequestClass(
                0.5,
                [build_truncated_geometric(0.5, 30)],
                holding,
                HoldingDistribution.uniform(0.0, 4.0),
            ),
            RequestClass(
                0.5,
                [build_truncated_power_law(0.4, 1.6, 80)],
                holding,
                HoldingDistribution.deterministic(1.5),
            ),
        ]
        m = NetworkModel(ArrivalSpec.poisson(2.0), classes, [20])
        assert_identical(*both(m, SimConfig(500, 40000, seed=5150)))


def test_renewal_arrivals():
    cls = RequestClass(
        1.0,
        [build_truncated_geometric(0.7, 25)],
        HoldingDistribution.exponential(3.0),
    )
    m = NetworkModel(
        ArrivalSpec.renewal(HoldingDistribution.uniform(0.2, 1.8)), [cls], [12]
    )
    assert_identical(*both(m, SimConfig(1000, 80000, seed=31337)))


def test_deterministic_tie_storm():
    # fixed spacing with deterministic holding lands every departure exactly
    # on an arrival instant; both kernels must order those events alike
    cls = RequestClass(
        1.0, [build_deterministic_demand(1)], HoldingDistribution.deterministic(3.0)
    )
    m = NetworkModel(ArrivalSpec.fixed_interval(1.0), [cls], [2])
    assert_identical(*both(m, SimConfig(0, 20000, seed=8)))


def test_replications_agree_individually():
    cls = RequestClass(
        1.0,
        [build_truncated_power_law(0.3, 1.5, 2000)],
        HoldingDistribution.exponential(1.0),
    )
    m = NetworkModel(ArrivalSpec.poisson(1.0), [cls], [700])
    cfg = SimConfig(500, 30000, seed=404, replications=3)
    for rep in range(3):
        assert_identical(*both(m, cfg, rep))
    ep = estimate(m, cfg, backend="python")
    ec = estimate(m, cfg, backend="compiled")
    assert ep.p_hat == ec.p_hat
    assert ep.std_err == ec.std_err
    assert np.array_equal(ep.p_hat_class, ec.p_hat_class)
