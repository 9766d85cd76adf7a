import math
import random

import pytest

from lossnet.exact import (
    EnumerationLimitExceeded,
    ErlangInstance,
    erlang_b,
    kaufman_roberts,
    normalization_constant,
    per_class_blocking,
)


class TestErlangB:
    def test_zero_capacity_blocks_everything(self):
        assert erlang_b(1.0, 0) == 1.0

    def test_unit_case(self):
        assert erlang_b(1.0, 1) == pytest.approx(0.5, abs=1e-15)

    def test_rho_1_c_5(self):
        # value frozen from running the recursion by hand
        assert erlang_b(1.0, 5) == pytest.approx(0.003067484662576687, abs=1e-15)

    def test_strictly_decreasing_in_capacity(self):
        vals = [erlang_b(2.5, c) for c in range(0, 30)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_strictly_increasing_in_intensity(self):
        vals = [erlang_b(rho, 8) for rho in (0.5, 1.0, 2.0, 4.0, 8.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_rejects_nonpositive_intensity(self):
        with pytest.raises(ValueError):
            erlang_b(0.0, 5)


def tiny_instance():
    return ErlangInstance([[1, 2]], [2], [1.0, 1.0])


class TestNormalizationConstant:
    def test_zero_capacity_single_state(self):
        inst = ErlangInstance([[1]], [1], [1.0])
        assert normalization_constant(inst, [0]) == 1.0

    def test_hand_enumerated_sum(self):
        # states (0,0),(1,0),(2,0),(0,1): 1 + 1 + 1/2 + 1
        assert normalization_constant(tiny_instance(), [2]) == pytest.approx(3.5, abs=1e-15)

    def test_negative_capacity_is_zero(self):
        assert normalization_constant(tiny_instance(), [-1]) == 0.0

    def test_monotone_in_capacity(self):
        inst = ErlangInstance([[1, 3], [2, 1]], [12, 12], [1.5, 0.7])
        prev = 0.0
        for c in range(0, 13, 2):
            g = normalization_constant(inst, [c, c])
            assert g >= prev
            prev = g

    def test_limit_refusal(self):
        inst = ErlangInstance([[1]], [100], [1.0])
        with pytest.raises(EnumerationLimitExceeded) as err:
            normalization_constant(inst, [100], limit=10)
        assert err.value.limit == 10

    def test_matches_direct_double_loop(self):
        inst = tiny_instance()
        total = 0.0
        for n1 in range(0, 7):
            for n2 in range(0, 4):
                if n1 + 2 * n2 <= 6:
                    total += (1.0**n1 / math.factorial(n1)) * (
                        1.0**n2 / math.factorial(n2)
                    )
        assert normalization_constant(inst, [6]) == pytest.approx(total, rel=1e-14)


class TestPerClassBlocking:
    def test_hand_enumerated_instance(self):
        b = per_class_blocking(tiny_instance())
        assert b[0] == pytest.approx(3.0 / 7.0, abs=1e-14)
        assert b[1] == pytest.approx(5.0 / 7.0, abs=1e-14)

    def test_single_class_equals_stable_recursion(self):
        for c in (1, 5, 12, 25, 50):
            b = per_class_blocking(ErlangInstance([[1]], [c], [1.0]))
            assert abs(b[0] - erlang_b(1.0, c)) < 1e-12

    def test_oversized_class_fully_blocked(self):
        inst = ErlangInstance([[1, 5]], [3], [1.0, 1.0])
        b = per_class_blocking(inst)
        assert b[1] == 1.0
        assert 0.0 < b[0] < 1.0

    def test_outputs_are_probabilities(self):
        inst = ErlangInstance([[1, 2], [3, 1]], [9, 9], [2.0, 0.5])
        for x in per_class_blocking(inst):
            assert 0.0 <= x <= 1.0


class TestKaufmanRoberts:
    def test_degenerates_to_single_class_recursion(self):
        for rho, c in ((0.5, 3), (1.0, 5), (2.0, 10), (7.5, 20)):
            kr = kaufman_roberts(c, [1], [rho])
            assert kr[0] == pytest.approx(erlang_b(rho, c), abs=1e-12)

    def test_matches_enumeration_on_tiny_instance(self):
        kr = kaufman_roberts(2, [1, 2], [1.0, 1.0])
        assert kr[0] == pytest.approx(3.0 / 7.0, abs=1e-12)
        assert kr[1] == pytest.approx(5.0 / 7.0, abs=1e-12)

    def test_oversized_demand_blocked_with_certainty(self):
        kr = kaufman_roberts(3, [1, 5], [1.0, 1.0])
        assert kr[1] == 1.0

    def test_randomized_equivalence_with_enumeration(self):
        rng = random.Random(20240517)
        for _ in range(200):
            m = rng.randint(1, 4)
            c = rng.randint(1, 30)
            a = [rng.randint(1, 5) for _ in range(m)]
            rho = [rng.uniform(0.05, 5.0) for _ in range(m)]
            kr = kaufman_roberts(c, a, rho)
            en = per_class_blocking(ErlangInstance([a], [c], rho))
            for x, y in zip(kr, en):
                assert abs(x - y) < 1e-10

    def test_large_capacity_stays_finite(self):
        # weights span hundreds of orders of magnitude; rescaling must hold
        kr = kaufman_roberts(5000, [1, 10], [2000.0, 150.0])
        assert all(0.0 <= x <= 1.0 for x in kr)
        assert not any(math.isnan(x) for x in kr)


class TestInstanceValidation:
    def test_rejects_inconsistent_shapes(self):
        with pytest.raises(ValueError):
            ErlangInstance([[1, 2]], [2, 2], [1.0, 1.0])

    def test_rejects_unused_class(self):
        with pytest.raises(ValueError):
            ErlangInstance([[1, 0]], [2], [1.0, 1.0])

    def test_rejects_nonpositive_intensity(self):
        with pytest.raises(ValueError):
            ErlangInstance([[1]], [2], [0.0])
