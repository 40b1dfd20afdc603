import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohstate import (
    CoherentLabel,
    ExpectationPair,
    FockVector,
    GridCoverageError,
    PhysicalParams,
    analytic_evolved_wavefunction,
    coherent_wavefunction,
    evolve_label,
    expectation_xp,
    fidelity,
    fock_coefficients,
    fock_synthesize,
    hermite_functions,
    inner_product,
    label_from_expectation,
    make_grid,
    norm,
    orbit_radius,
    oscillating_packet,
    phase_phi,
    phaseless_gaussian,
)
from helpers import (
    peak_relative_diff,
    random_disc,
    wavefunction_direct_exponential,
    wavefunction_phase_split,
)

finite_floats = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


def _grid_for(alpha, params, n=1024, margin=8.0):
    return make_grid(params, orbit_radius(CoherentLabel(alpha), params), margin, n)


class TestLabel:
    def test_magnitude_cap(self):
        CoherentLabel(49 + 0j)
        with pytest.raises(ValueError):
            CoherentLabel(36 + 36j)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            CoherentLabel(complex(float("inf"), 0.0))


class TestPhasePhi:
    @pytest.mark.parametrize(
        "alpha,expected",
        [(2.5 + 0j, 0.0), (1 + 1j, 1.0), (1j, 0.0), (1.5 - 0.5j, -0.75)],
    )
    def test_values(self, alpha, expected):
        assert phase_phi(CoherentLabel(alpha)) == pytest.approx(expected, abs=1e-15)

    @given(finite_floats, finite_floats)
    @settings(max_examples=100, deadline=None)
    def test_equals_half_imaginary_part_of_alpha_squared(self, re, im):
        alpha = complex(re, im)
        assert phase_phi(CoherentLabel(alpha)) == pytest.approx(
            (alpha**2).imag / 2.0, abs=1e-12
        )


class TestCoherentWavefunction:
    def test_alpha_zero_is_ground_state(self, any_units):
        p = any_units
        grid = make_grid(p, 0.0, 8.0, 512)
        psi = coherent_wavefunction(CoherentLabel(0.0), p, grid)
        x = grid.points
        expected = (p.m * p.omega / (math.pi * p.hbar)) ** 0.25 * np.exp(
            -p.m * p.omega * x**2 / (2.0 * p.hbar)
        )
        assert np.array_equal(psi.values.imag, np.zeros(grid.n))
        assert np.max(np.abs(psi.values.real - expected)) < 1e-15

    def test_real_alpha_is_real_positive(self, osc):
        grid = _grid_for(1.2, osc)
        psi = coherent_wavefunction(CoherentLabel(1.2), osc, grid)
        assert np.array_equal(psi.values.imag, np.zeros(grid.n))
        assert np.all(psi.values.real > 0.0)

    def test_normalized(self, any_units):
        grid = _grid_for(1 + 2j, any_units)
        psi = coherent_wavefunction(CoherentLabel(1 + 2j), any_units, grid)
        assert abs(norm(psi) - 1.0) < 1e-8

    def test_coverage_enforced(self, osc):
        grid = make_grid(osc, 0.0, 8.0, 64)  # holds only the origin's packet
        with pytest.raises(GridCoverageError):
            coherent_wavefunction(CoherentLabel(8.0), osc, grid)

    def test_three_groupings_agree(self, any_units):
        rng = np.random.default_rng(11)
        grid = make_grid(any_units, orbit_radius(CoherentLabel(3.0), any_units), 8.0, 1024)
        for alpha in random_disc(rng, 30, 3.0):
            label = CoherentLabel(alpha)
            canonical = coherent_wavefunction(label, any_units, grid)
            assert peak_relative_diff(
                canonical, wavefunction_direct_exponential(label, any_units, grid)
            ) < 1e-12
            assert peak_relative_diff(
                canonical, wavefunction_phase_split(label, any_units, grid)
            ) < 1e-12


class TestPhaselessGaussian:
    def test_real_alpha_identical_to_phased_form(self, osc):
        grid = _grid_for(1.2, osc)
        label = CoherentLabel(1.2)
        assert np.array_equal(
            phaseless_gaussian(label, osc, grid).values,
            coherent_wavefunction(label, osc, grid).values,
        )

    def test_differs_by_constant_unimodular_factor(self, osc):
        label = CoherentLabel(1 + 1j)
        grid = _grid_for(1 + 1j, osc)
        correct = coherent_wavefunction(label, osc, grid)
        deficient = phaseless_gaussian(label, osc, grid)
        pair = expectation_xp(label, osc)
        expected_factor = cmath.exp(1j * pair.x_mean * pair.p_mean / (2.0 * osc.hbar))
        core = np.abs(correct.values) > 1e-8
        ratios = deficient.values[core] / correct.values[core]
        assert np.max(np.abs(ratios - expected_factor)) < 1e-10
        assert fidelity(deficient, correct) == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(deficient.values - correct.values)) > 0.1

    @pytest.mark.parametrize("alpha", [0.5j, 2 - 0.5j, 1 + 1j])
    def test_normalized(self, osc, alpha):
        grid = _grid_for(alpha, osc)
        assert abs(norm(phaseless_gaussian(CoherentLabel(alpha), osc, grid)) - 1.0) < 1e-8


class TestFockCoefficients:
    def test_vacuum(self):
        vec = fock_coefficients(CoherentLabel(0.0), 5)
        assert vec.coeffs[0] == 1.0
        assert np.array_equal(vec.coeffs[1:], np.zeros(5))

    def test_leading_coefficient_real_positive(self):
        for alpha in (1 + 1j, -2j, 0.3 - 1.7j):
            c0 = fock_coefficients(CoherentLabel(alpha), 10).coeffs[0]
            assert c0.imag == 0.0
            assert c0.real == pytest.approx(math.exp(-0.5 * abs(alpha) ** 2), rel=1e-15)

    def test_partial_norm_saturates(self):
        vec = fock_coefficients(CoherentLabel(2.0), 60)
        assert abs(np.sum(np.abs(vec.coeffs) ** 2) - 1.0) < 1e-12

    def test_matches_direct_formula(self):
        alpha = 1.3 - 0.4j
        vec = fock_coefficients(CoherentLabel(alpha), 20)
        for n in range(21):
            direct = (
                math.exp(-0.5 * abs(alpha) ** 2)
                * alpha**n
                / math.sqrt(math.factorial(n))
            )
            assert abs(vec.coeffs[n] - direct) < 1e-14


class TestFockSynthesize:
    def test_basis_states(self, osc):
        grid = make_grid(osc, 0.0, 8.0, 512)
        ground = fock_synthesize(FockVector([1.0]), osc, grid)
        assert np.max(np.abs(ground.values - hermite_functions(grid.points, 0, osc)[0])) < 1e-15
        excited = fock_synthesize(FockVector([0.0, 1.0]), osc, grid)
        # odd function: exact zero at the origin sample; the mirror of grid
        # point j is point n - j (x_max itself is excluded)
        assert excited.values[grid.n // 2] == 0.0
        assert np.max(np.abs(excited.values[1:] + excited.values[1:][::-1])) < 1e-12

    def test_reproduces_closed_form_including_phase(self, any_units):
        label = CoherentLabel(1.5 - 0.5j)
        grid = _grid_for(1.5 - 0.5j, any_units)
        synthesized = fock_synthesize(fock_coefficients(label, 60), any_units, grid)
        closed = coherent_wavefunction(label, any_units, grid)
        assert peak_relative_diff(closed, synthesized) < 1e-8


class TestExpectation:
    def test_vacuum(self, osc):
        pair = expectation_xp(CoherentLabel(0.0), osc)
        assert (pair.x_mean, pair.p_mean) == (0.0, 0.0)

    def test_reference_point(self, osc):
        pair = expectation_xp(CoherentLabel(1 + 2j), osc)
        assert pair.x_mean == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert pair.p_mean == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-15)

    def test_inverse_reference_points(self, osc):
        assert label_from_expectation(ExpectationPair(0.0, 0.0), osc).alpha == 0.0
        back = label_from_expectation(
            ExpectationPair(math.sqrt(2.0), 2.0 * math.sqrt(2.0)), osc
        )
        assert abs(back.alpha - (1 + 2j)) < 1e-15

    def test_round_trip_many_pairs(self, any_units):
        rng = np.random.default_rng(5)
        worst = 0.0
        for _ in range(1000):
            x = rng.uniform(-10, 10) * any_units.length_scale
            p = rng.uniform(-10, 10) * any_units.momentum_scale
            pair = ExpectationPair(x, p)
            back = expectation_xp(label_from_expectation(pair, any_units), any_units)
            worst = max(
                worst,
                abs(back.x_mean - x) / any_units.length_scale,
                abs(back.p_mean - p) / any_units.momentum_scale,
            )
        assert worst < 1e-13

    @given(finite_floats, finite_floats)
    @settings(max_examples=100, deadline=None)
    def test_label_round_trip(self, re, im):
        p = PhysicalParams()
        label = CoherentLabel(complex(re, im))
        back = label_from_expectation(expectation_xp(label, p), p)
        assert abs(back.alpha - label.alpha) < 1e-13


class TestEvolveLabel:
    def test_identity_at_zero(self, osc):
        ev = evolve_label(CoherentLabel(1 + 1j), 0.0, osc)
        assert ev.label.alpha == 1 + 1j
        assert ev.global_phase == 1.0

    def test_one_period_antiperiodic(self, any_units):
        p = any_units
        alpha = 0.8 - 0.6j
        ev = evolve_label(CoherentLabel(alpha), p.period, p)
        assert abs(ev.label.alpha - alpha) < 1e-14
        assert abs(ev.global_phase + 1.0) < 1e-14

    def test_half_period(self, any_units):
        p = any_units
        alpha = 0.8 - 0.6j
        ev = evolve_label(CoherentLabel(alpha), 0.5 * p.period, p)
        assert abs(ev.label.alpha + alpha) < 1e-14
        assert abs(ev.global_phase + 1j) < 1e-14

    @given(st.floats(min_value=-50.0, max_value=50.0, allow_nan=False))
    @settings(max_examples=100, deadline=None)
    def test_modulus_preserved(self, t):
        p = PhysicalParams()
        label = CoherentLabel(1.7 - 2.2j)
        ev = evolve_label(label, t, p)
        assert abs(abs(ev.label.alpha) - abs(label.alpha)) < 1e-14
        assert abs(abs(ev.global_phase) - 1.0) < 1e-14


class TestAnalyticEvolution:
    def test_t_zero_is_initial_state(self, osc):
        label = CoherentLabel(1 - 0.3j)
        grid = _grid_for(1 - 0.3j, osc)
        assert np.array_equal(
            analytic_evolved_wavefunction(label, 0.0, osc, grid).values,
            coherent_wavefunction(label, osc, grid).values,
        )

    def test_orbit_coverage_enforced(self, osc):
        # the initial packet fits (centered at 0) but its orbit does not
        grid = make_grid(osc, 0.0, 8.0, 512)
        coherent_wavefunction(CoherentLabel(3j), osc, grid)
        with pytest.raises(GridCoverageError):
            analytic_evolved_wavefunction(CoherentLabel(3j), 1.0, osc, grid)

    def test_matches_oscillating_packet_for_real_label(self, any_units):
        p = any_units
        x0 = 2.0 * p.length_scale
        alpha = x0 * math.sqrt(p.m * p.omega / (2.0 * p.hbar))
        label = CoherentLabel(alpha)
        grid = _grid_for(alpha, p)
        for t in (0.0, 0.23 * p.period, p.period / 3.0, 0.5 * p.period, 0.9 * p.period):
            evolved = analytic_evolved_wavefunction(label, t, p, grid)
            packet = oscillating_packet(x0, t, p, grid)
            assert peak_relative_diff(evolved, packet) < 1e-12


class TestOscillatingPacket:
    def test_initial_state(self, osc):
        grid = make_grid(osc, 2.0, 8.0, 1024)
        packet = oscillating_packet(2.0, 0.0, osc, grid)
        label = CoherentLabel(2.0 * math.sqrt(0.5))
        assert peak_relative_diff(packet, coherent_wavefunction(label, osc, grid)) < 1e-12
        assert np.array_equal(packet.values.imag, np.zeros(grid.n))

    def test_antiperiodic_over_one_period(self, any_units):
        p = any_units
        x0 = 2.0 * p.length_scale
        grid = make_grid(p, x0, 8.0, 1024)
        start = oscillating_packet(x0, 0.0, p, grid)
        looped = oscillating_packet(x0, p.period, p, grid)
        assert np.max(np.abs(looped.values + start.values)) < 1e-12 * np.max(
            np.abs(start.values)
        )

    def test_density_translates_without_deformation(self, any_units):
        p = any_units
        x0 = 2.0 * p.length_scale
        grid = make_grid(p, x0, 8.0, 1024)
        x = grid.points
        scale = p.m * p.omega / p.hbar
        reference_density = lambda y: math.sqrt(scale / math.pi) * np.exp(-scale * y**2)
        for t in (0.17 * p.period, 0.4 * p.period, 0.77 * p.period):
            packet = oscillating_packet(x0, t, p, grid)
            center = x0 * math.cos(p.omega * t)
            translated = reference_density(x - center)
            assert np.max(np.abs(packet.density - translated)) < 1e-12 * np.max(translated)

    def test_coverage(self, osc):
        grid = make_grid(osc, 0.0, 8.0, 64)
        with pytest.raises(GridCoverageError):
            oscillating_packet(6.0, 0.0, osc, grid)
