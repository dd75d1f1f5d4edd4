"""Lattice sweeps and partition enumeration against the fast paths."""

import math

import numpy as np
import pytest

from macfeedback import (ConditionalPmf, GridSpec, InputError, blahut_arimoto,
                         brute_force_condition2, channel_given_sum,
                         cl_grid_gap_bound, cover_leung_frontier,
                         equivalence_classes, grid_capacity, grid_cl_point,
                         induced_channel, single_rate_capacity)
from macfeedback import catalog

from _gen import random_conditional, random_mac


class TestGridCapacity:
    def test_noiseless_bsc_exact_on_lattice(self):
        ch = ConditionalPmf(("0", "1"), ("0", "1"), np.eye(2))
        value, gap = grid_capacity(ch, GridSpec(resolution=64))
        assert value == pytest.approx(1.0, abs=1e-12)
        assert gap > 0.0

    def test_bec_half_uniform_on_lattice(self):
        ch = ConditionalPmf(("0", "1"), ("0", "1", "e"),
                            np.array([[0.5, 0.0, 0.5], [0.0, 0.5, 0.5]]))
        value, _ = grid_capacity(ch, GridSpec(resolution=64))
        assert value == pytest.approx(0.5, abs=1e-12)

    def test_grid_is_a_restriction(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            ch = random_conditional(rng, 2, 3)
            value, _ = grid_capacity(ch, GridSpec(resolution=64))
            assert value <= blahut_arimoto(ch, tol=1e-10).value + 1e-6

    def test_sandwich_random(self):
        rng = np.random.default_rng(1)
        grid = GridSpec(resolution=64, max_dims=3)
        for _ in range(50):
            ch = random_conditional(rng, 2, int(rng.integers(2, 5)))
            oracle, gap = grid_capacity(ch, grid)
            ba = blahut_arimoto(ch, tol=1e-10).value
            assert oracle - 1e-9 <= ba <= oracle + gap

    def test_dimension_cap(self):
        rng = np.random.default_rng(2)
        ch = random_conditional(rng, 4, 3)
        with pytest.raises(InputError):
            grid_capacity(ch, GridSpec(resolution=16, max_dims=3))

    def test_default_grid_by_input_size(self):
        rng = np.random.default_rng(6)
        from macfeedback.oracle import default_grid

        assert default_grid(random_conditional(rng, 2, 3)).resolution == 64
        assert default_grid(random_conditional(rng, 3, 3)).resolution == 24
        value, gap = grid_capacity(random_conditional(rng, 3, 3))
        assert 0.0 <= value <= math.log2(3) and gap > 0


class TestGridClPoint:
    def test_single_user_weight_noiseless_adder(self):
        rp = grid_cl_point(catalog.adder_mac(), (1.0, 0.0),
                           GridSpec(resolution=32), u_card=1)
        assert rp.r1 == pytest.approx(1.0, abs=1e-12)

    def test_fully_erased_zero(self):
        rp = grid_cl_point(catalog.erasure_adder_mac(1.0), (1.0, 1.0),
                           GridSpec(resolution=8), u_card=1)
        assert rp.r1 + rp.r2 < 1e-9

    def test_oracle_vs_optimizer_sum_weight(self):
        mac = catalog.adder_mac()
        grid = GridSpec(resolution=16)
        rp = grid_cl_point(mac, (1.0, 1.0), grid, u_card=2)
        oracle_value = rp.r1 + rp.r2
        f = cover_leung_frontier(mac, weights=[(1.0, 1.0)], restarts=8, seed=0)
        opt_value = f.points[0].value
        gap = cl_grid_gap_bound(mac, (1.0, 1.0), grid, u_card=2)
        assert abs(oracle_value - opt_value) <= gap
        # The ascent should not fall behind an N=16 lattice by more than
        # optimizer noise.
        assert opt_value >= oracle_value - 5e-3

    def test_caps_enforced(self):
        rng = np.random.default_rng(3)
        with pytest.raises(InputError):
            grid_cl_point(random_mac(rng, n1=3), (1.0, 1.0), GridSpec(resolution=8))
        with pytest.raises(InputError):
            grid_cl_point(catalog.adder_mac(), (1.0, 1.0), GridSpec(resolution=8),
                          u_card=3)
        with pytest.raises(InputError):
            grid_cl_point(catalog.adder_mac(), (0.0, 0.0), GridSpec(resolution=8))


class TestBruteForceCondition2:
    def test_identity_channel(self):
        ch = ConditionalPmf(("a", "b", "c"), ("0", "1", "2"), np.eye(3))
        assert brute_force_condition2(ch)

    def test_half_erased_adder_support(self):
        ch = channel_given_sum(catalog.erasure_adder_mac(0.5),
                               catalog.erasure_adder_group())
        assert not brute_force_condition2(ch, support=("0", "1"))

    def test_fully_erased(self):
        ch = channel_given_sum(catalog.erasure_adder_mac(1.0),
                               catalog.erasure_adder_group())
        assert brute_force_condition2(ch, support=("0", "1"))

    def test_agreement_with_partition(self):
        # The component partition decides existence: exact agreement on
        # randomly sparsified channels.
        rng = np.random.default_rng(4)
        disagreements = 0
        for _ in range(300):
            n_in = int(rng.integers(2, 5))
            n_out = int(rng.integers(2, 6))
            ch = random_conditional(rng, n_in, n_out,
                                    sparsity=float(rng.uniform(0.0, 0.7)))
            lhs = brute_force_condition2(ch)
            rhs = equivalence_classes(ch).markov_ok
            disagreements += int(lhs != rhs)
        assert disagreements == 0

    def test_caps_enforced(self):
        rng = np.random.default_rng(5)
        with pytest.raises(InputError):
            brute_force_condition2(random_conditional(rng, 6, 3))
        with pytest.raises(InputError):
            brute_force_condition2(random_conditional(rng, 3, 7))


class TestOracleAgainstCheckers:
    def test_single_rate_within_grid_gap(self):
        mac = catalog.erasure_adder_mac(0.5)
        sr = single_rate_capacity(mac, 1)
        ch = induced_channel(mac, 2, sr.xk_star)
        oracle, gap = grid_capacity(ch, GridSpec(resolution=64))
        assert oracle - 1e-9 <= sr.value <= oracle + gap
