"""Modulus/argument reduction: records, words, shifts, zeros, round trips."""

import cmath
import math

import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from conftest import random_point, random_tau
from oracles import slow_theta
from thetakit import (
    HalfPeriod,
    ModularParameter,
    ModularStep,
    apply_modular_step,
    eval_reduced,
    full_reduction,
    half_period_shift,
    reduce_tau,
    reduce_u,
    theta,
    zeros_of,
)
from thetakit.reduction import (
    apply_word_to_tau,
    eval_reduced_product,
    identity_record,
    in_fundamental_domain,
)

PI = math.pi


class TestReduceTau:
    def test_pure_imaginary_below_unit_circle(self):
        reduced, word = reduce_tau(ModularParameter(0.5j))
        assert reduced.tau == 2j
        assert word == (ModularStep.S,)

    def test_single_translation(self):
        reduced, word = reduce_tau(ModularParameter(1 + 1j))
        assert reduced.tau == 1j
        assert word == (ModularStep.T_INV,)

    def test_already_reduced_is_identity_word(self):
        reduced, word = reduce_tau(ModularParameter(0.25 + 1.5j))
        assert word == ()
        assert reduced.tau == 0.25 + 1.5j

    def test_random_round_trip(self, rng):
        for _ in range(200):
            tau = ModularParameter(complex(rng.uniform(-5, 5), rng.uniform(1e-3, 10)))
            reduced, word = reduce_tau(tau)
            assert in_fundamental_domain(reduced.tau)
            forward = apply_word_to_tau(word, tau.tau)
            assert abs(forward - reduced.tau) <= 1e-14 * (1.0 + abs(reduced.tau))

    def test_word_example_deep(self):
        tau = ModularParameter(0.3 + 0.4j)
        reduced, word = reduce_tau(tau)
        assert in_fundamental_domain(reduced.tau)
        assert ModularStep.S in word
        assert abs(apply_word_to_tau(word, tau.tau) - reduced.tau) < 1e-14


class TestModularStep:
    def test_s_fixed_point(self):
        record = apply_modular_step(ModularStep.S, 3, 0.0, ModularParameter(1j))
        assert record.new_tau.tau == 1j
        assert record.multiplier() == pytest.approx(1.0, abs=1e-15)

    def test_t_swaps_three_and_four(self):
        record = apply_modular_step(ModularStep.T, 3, 0.37, ModularParameter(0.9j))
        assert record.map_index(3) == 4
        assert record.multiplier() == 1.0

    def test_s_step_spot_check(self):
        # theta_2(0.2|2i) = exp(mu) * theta_4(0.1/i | i/2) with u' = u/tau
        tau = ModularParameter(2j)
        record = apply_modular_step(ModularStep.S, 2, 0.2, tau)
        assert record.map_index(2) == 4
        assert record.new_u == pytest.approx(0.2 / 2j)
        lhs = theta(2, 0.2, tau)
        rhs = record.multiplier() * theta(record.map_index(2), record.new_u, record.new_tau)
        assert lhs == pytest.approx(rhs, rel=1e-11)

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    @pytest.mark.parametrize("step", [ModularStep.T, ModularStep.T_INV, ModularStep.S])
    def test_all_steps_pointwise(self, r, step, rng):
        for _ in range(25):
            tau = random_tau(rng)
            u = random_point(rng)
            record = apply_modular_step(step, r, u, tau)
            lhs = theta(r, u, tau)
            rhs = record.multiplier() * theta(record.map_index(r), record.new_u, record.new_tau)
            assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(lhs))

    def test_mod2_relations_explicitly(self, rng):
        # forward form: theta_r(u/tau | -1/tau) = c_r * sqrt(-i*tau) * exp(pi*i*u^2/tau) * theta_{s}(u|tau)
        swaps = {1: (1, -1j), 2: (4, 1.0), 3: (3, 1.0), 4: (2, 1.0)}
        for _ in range(25):
            tau = random_tau(rng)
            u = random_point(rng)
            tv = tau.tau
            root = cmath.sqrt(-1j * tv)
            assert root.real > 0  # branch convention
            for r, (s, pref) in swaps.items():
                lhs = eval_reduced(r, u / tv, ModularParameter(-1 / tv))
                rhs = pref * root * cmath.exp(1j * PI * u * u / tv) * eval_reduced(s, u, tau)
                assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(lhs))

    def test_mod1_relations_explicitly(self, rng):
        # theta_{1,2}(u|tau+1) = e^{i*pi/4} theta_{1,2}(u|tau); theta_3 <-> theta_4
        phase = cmath.exp(0.25j * PI)
        for _ in range(25):
            tau = random_tau(rng)
            u = random_point(rng)
            shifted = ModularParameter(tau.tau + 1)
            expected = {
                1: phase * theta(1, u, tau),
                2: phase * theta(2, u, tau),
                3: theta(4, u, tau),
                4: theta(3, u, tau),
            }
            for r, want in expected.items():
                got = theta(r, u, shifted)
                assert abs(got - want) <= 1e-10 * (1.0 + abs(want))


class TestReduceU:
    def test_unit_shift_sign(self):
        tau = ModularParameter(0.9j)
        _, record = reduce_u(1, 0.1 + 1.0, tau)
        assert record.multiplier() == pytest.approx(-1.0)
        assert record.new_u == pytest.approx(0.1)

    def test_tau_shift_multiplier(self):
        tau = ModularParameter(0.2 + 0.9j)
        u0 = 0.11 + 0.05j
        dec, record = reduce_u(3, u0 + tau.tau, tau)
        assert (dec.n, dec.m) == (0, 1)
        want = -1j * PI * (2 * dec.u0 + tau.tau)
        assert record.log_multiplier == pytest.approx(want, rel=1e-12)

    def test_deep_lattice_point(self):
        tau = ModularParameter(0.9j)
        u = 0.1 + 3 + 2 * tau.tau
        dec, record = reduce_u(4, u, tau)
        assert (dec.n, dec.m) == (3, 2)
        slow = slow_theta(4, u, tau.tau)
        assert slow is not None and slow.trustworthy()
        reconstructed = record.multiplier() * theta(4, dec.u0, tau)
        assert abs(reconstructed - slow.value) <= 1e-10 * abs(slow.value)

    def test_center_cell_invariant(self, rng):
        for _ in range(100):
            tau = random_tau(rng)
            u = complex(rng.uniform(-6, 6), rng.uniform(-6, 6))
            dec, _ = reduce_u(rng.choice([1, 2, 3, 4]), u, tau)
            assert abs(dec.u0.real) <= 0.5 + 1e-12
            assert abs(dec.u0.imag) <= tau.tau.imag / 2 + 1e-12
            rebuilt = dec.u0 + dec.n + dec.m * tau.tau
            assert rebuilt == pytest.approx(u, abs=1e-12)

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_period_shift_rules_pointwise(self, r, rng):
        # the twelve one-period rules: shift by 1, by tau, and by tau+1
        sign_one = -1.0 if r in (1, 2) else 1.0
        sign_tau = -1.0 if r in (1, 4) else 1.0
        for _ in range(100):
            tau = random_tau(rng)
            u = random_point(rng)
            tv = tau.tau
            base = theta(r, u, tau)
            quasi = cmath.exp(-1j * PI * (2 * u + tv))
            scale = 1.0 + abs(base)
            assert abs(theta(r, u + 1, tau) - sign_one * base) <= 1e-11 * scale
            got_tau = theta(r, u + tv, tau)
            assert abs(got_tau - sign_tau * quasi * base) <= 1e-11 * (1.0 + abs(got_tau))
            got_both = theta(r, u + tv + 1, tau)
            assert abs(got_both - sign_one * sign_tau * quasi * base) <= 1e-11 * (1.0 + abs(got_both))


class TestHalfPeriodShift:
    def test_half_shift_to_theta1(self):
        tau = ModularParameter(1.3j)
        record = half_period_shift(2, HalfPeriod.HALF, 0.3, tau)
        assert record.map_index(2) == 1
        assert record.multiplier() == pytest.approx(-1.0)

    def test_tau_half_shift_of_theta1(self):
        tau = ModularParameter(0.1 + 1.2j)
        u = 0.2 - 0.1j
        record = half_period_shift(1, HalfPeriod.TAU_HALF, u, tau)
        assert record.map_index(1) == 4
        want = 0.5j * PI - 1j * PI * (u + tau.tau / 4)
        assert record.log_multiplier == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("which", list(HalfPeriod))
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_rules_pointwise(self, which, r, rng):
        offset = {
            HalfPeriod.HALF: lambda tv: 0.5,
            HalfPeriod.TAU_HALF: lambda tv: tv / 2,
            HalfPeriod.TAU_PLUS_ONE_HALF: lambda tv: (tv + 1) / 2,
        }[which]
        for _ in range(100):
            tau = random_tau(rng)
            u = random_point(rng)
            record = half_period_shift(r, which, u, tau)
            lhs = theta(r, u + offset(tau.tau), tau)
            rhs = record.multiplier() * theta(record.map_index(r), u, tau)
            assert abs(lhs - rhs) <= 1e-11 * (1.0 + abs(lhs))

    def test_two_half_shifts_compose_to_one_period(self, rng):
        for r in (1, 2, 3, 4):
            tau = random_tau(rng)
            u = random_point(rng)
            first = half_period_shift(r, HalfPeriod.HALF, u + 0.5, tau)
            second = half_period_shift(first.map_index(r), HalfPeriod.HALF, u, tau)
            combined = first.then(second)
            assert combined.map_index(r) == r
            sign = -1.0 if r in (1, 2) else 1.0
            assert combined.multiplier() == pytest.approx(sign)


class TestRecordAlgebra:
    def test_identity_record_is_neutral(self):
        tau = ModularParameter(1.1j)
        ident = identity_record(0.3, tau)
        step = apply_modular_step(ModularStep.T, 2, 0.3, tau)
        assert ident.then(step) == step

    @hsettings(max_examples=30, deadline=None)
    @given(st.integers(1, 4), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
    def test_composition_associative(self, r, i1, i2, i3):
        steps = [ModularStep.T, ModularStep.T_INV, ModularStep.S]
        tau = ModularParameter(0.3 + 1.4j)
        u = 0.21 - 0.14j
        records = []
        cur_r, cur_u, cur_tau = r, u, tau
        for idx in (i1, i2, i3):
            rec = apply_modular_step(steps[idx], cur_r, cur_u, cur_tau)
            records.append(rec)
            cur_r, cur_u, cur_tau = rec.map_index(cur_r), rec.new_u, rec.new_tau
        a, b, c = records
        left = a.then(b).then(c)
        right = a.then(b.then(c))
        assert left.index_map == right.index_map
        assert left.log_multiplier == pytest.approx(right.log_multiplier, rel=1e-12, abs=1e-12)
        assert left.new_u == right.new_u and left.new_tau == right.new_tau


class TestEvalReduced:
    def test_theta1_odd_at_any_tau(self):
        for tau in (ModularParameter(1e-3j), ModularParameter(0.49 + 2e-3j)):
            assert abs(eval_reduced(1, 0.0, tau)) < 1e-12

    def test_tiny_im_tau_is_finite_and_fast(self):
        tau = ModularParameter(0.001 + 0.002j)
        value = eval_reduced(3, 0.3, tau)
        assert cmath.isfinite(value)
        # the reduced evaluation needs only a handful of series terms
        record = full_reduction(3, 0.3, tau)
        from thetakit import truncation_index

        assert truncation_index(record.new_tau, record.new_u, 0.0, 1e-15) <= 8
        # value is genuinely minuscule there; the product route confirms it
        product = eval_reduced_product(3, 0.3, tau)
        assert value == pytest.approx(product, rel=1e-10)
        # direct summation converges but cancels catastrophically: its own
        # noise floor sits far above the true value
        slow = slow_theta(3, 0.3, tau.tau)
        assert slow is not None and not slow.trustworthy()
        assert abs(value) < 1e-12 * slow.abs_sum
        # on the imaginary axis with Re tau = 0 the direct terms are all
        # positive, so the wide-window characteristic sum is a valid slow
        # oracle (hundreds of terms where the reduced path needs a handful)
        from thetakit import Characteristics, EvalSettings, theta_char

        upright = ModularParameter(0.002j)
        wide = EvalSettings(max_terms=100000)
        got = eval_reduced(3, 0.3j, upright)
        want = theta_char(Characteristics(0.0, 0.0), 0.3j, upright, wide)
        assert abs(got - want) <= 1e-10 * abs(want)

    def test_matches_trustworthy_direct_summation(self, rng):
        compared = 0
        for _ in range(500):
            r = rng.choice([1, 2, 3, 4])
            tau = ModularParameter(complex(rng.uniform(-5, 5), rng.uniform(1e-3, 10)))
            u = random_point(rng)
            slow = slow_theta(r, u, tau.tau)
            if slow is None or not slow.trustworthy(1e-11):
                continue
            compared += 1
            got = eval_reduced(r, u, tau)
            assert abs(got - slow.value) <= 1e-9 * abs(slow.value)
        assert compared > 200  # the guard must not hollow out the test

    def test_zero_location_on_lattice(self):
        tau = ModularParameter(0.7j)
        z = (1 + 0.5) * tau.tau  # m = 1 in the theta_4 zero family
        scale = abs(eval_reduced(4, z + 0.1, tau))
        assert abs(eval_reduced(4, z, tau)) < 1e-10 * scale

    def test_product_route_matches_series_route(self, rng):
        for _ in range(30):
            tau = ModularParameter(complex(rng.uniform(-2, 2), rng.uniform(5e-3, 3)))
            u = random_point(rng)
            r = rng.choice([1, 2, 3, 4])
            a = eval_reduced(r, u, tau)
            b = eval_reduced_product(r, u, tau)
            assert abs(a - b) <= 1e-10 * (1.0 + abs(a))


class TestZeros:
    def test_theta1_zero_at_origin(self):
        assert zeros_of(1, ModularParameter(0.6 + 0.9j), [0], [0]) == [0j]

    def test_theta3_zero_at_center(self):
        (z,) = zeros_of(3, ModularParameter(1j), [0], [0])
        assert z == pytest.approx((1 + 1j) / 2)

    def test_theta2_row(self):
        zs = zeros_of(2, ModularParameter(1.3j), [-1, 0, 1], [0])
        assert zs == [-0.5, 0.5, 1.5]

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    @pytest.mark.parametrize("tau_value", [1j, 0.3 + 0.8j])
    def test_all_zeros_evaluate_small(self, r, tau_value):
        tau = ModularParameter(tau_value)
        nm = range(-2, 3)
        for z in zeros_of(r, tau, nm, nm):
            scale = abs(eval_reduced(r, z + 0.1, tau))
            assert abs(eval_reduced(r, z, tau)) < 1e-9 * scale


def test_full_reduction_lands_in_fast_cell(rng):
    for _ in range(100):
        tau = ModularParameter(complex(rng.uniform(-5, 5), rng.uniform(1e-3, 10)))
        u = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        record = full_reduction(rng.choice([1, 2, 3, 4]), u, tau)
        assert in_fundamental_domain(record.new_tau.tau)
        assert abs(record.new_u.real) <= 0.5 + 1e-9
        assert abs(record.new_u.imag) <= record.new_tau.tau.imag / 2 + 1e-9
