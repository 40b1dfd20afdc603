import math

import numpy as np
import pytest

from cohstate import (
    CoherentLabel,
    GridCoverageError,
    PhysicalParams,
    PropagationPlan,
    analytic_evolved_wavefunction,
    coherent_wavefunction,
    evolve_label,
    expectation_xp,
    fidelity,
    fock_coefficients,
    fock_evolve,
    fourier_transform,
    inverse_fourier_transform,
    make_grid,
    norm,
    orbit_radius,
    packet_moments,
    split_step_evolve,
    wavenumbers,
)


class TestFourierTransform:
    def test_power_of_two_required(self):
        with pytest.raises(ValueError):
            fourier_transform(np.zeros(12, dtype=complex))

    def test_short_vector_allowed(self):
        # the transform is not tied to Grid's minimum size
        out = fourier_transform([1.0, 0.0, 0.0, 0.0])
        assert np.max(np.abs(out - 0.5)) < 1e-15

    def test_round_trip(self):
        rng = np.random.default_rng(1)
        v = rng.normal(size=1024) + 1j * rng.normal(size=1024)
        assert np.max(np.abs(inverse_fourier_transform(fourier_transform(v)) - v)) < 1e-13


def test_wavenumbers_wrap_around_layout(osc):
    grid = make_grid(osc, 0.0, 8.0, 64)
    expected = 2.0 * np.pi * np.fft.fftfreq(grid.n, d=grid.dx)
    assert np.max(np.abs(wavenumbers(grid) - expected)) < 1e-12


class TestPlan:
    def test_validation(self, osc):
        grid = make_grid(osc, 0.0, 8.0, 64)
        with pytest.raises(ValueError):
            PropagationPlan(1.0, 0, grid, osc)
        with pytest.raises(ValueError):
            PropagationPlan(-1.0, 16, grid, osc)
        plan = PropagationPlan(2.0, 64, grid, osc)
        assert plan.dt == pytest.approx(0.03125)


class TestSplitStep:
    def test_ground_state_acquires_zero_point_phase(self, any_units):
        p = any_units
        grid = make_grid(p, 0.0, 8.0, 512)
        psi0 = coherent_wavefunction(CoherentLabel(0.0), p, grid)
        t = 1.3 / p.omega
        out = split_step_evolve(psi0, PropagationPlan(t, 2048, grid, p))
        target = psi0.with_values(np.exp(-0.5j * p.omega * t) * psi0.values)
        assert fidelity(out, target) >= 1.0 - 1e-8
        # the zero-point phase itself is reproduced, not just the ray
        assert np.max(np.abs(out.values - target.values)) < 1e-5

    def test_oracle_agreement_over_one_period(self, osc):
        label = CoherentLabel(1.5 - 0.8j)
        grid = make_grid(osc, orbit_radius(label, osc), 12.0, 1024)
        psi0 = coherent_wavefunction(label, osc, grid)
        out = split_step_evolve(psi0, PropagationPlan(osc.period, 4096, grid, osc))
        reference = analytic_evolved_wavefunction(label, osc.period, osc, grid)
        assert fidelity(out, reference) >= 1.0 - 1e-6

    def test_norm_preserved(self, osc):
        label = CoherentLabel(1 + 1j)
        grid = make_grid(osc, orbit_radius(label, osc), 12.0, 1024)
        psi0 = coherent_wavefunction(label, osc, grid)
        out = split_step_evolve(psi0, PropagationPlan(osc.period, 4096, grid, osc))
        assert abs(norm(out) - 1.0) < 1e-10

    def test_grid_and_params_must_match(self, osc):
        grid = make_grid(osc, 0.0, 8.0, 512)
        other = make_grid(osc, 0.0, 8.0, 256)
        psi0 = coherent_wavefunction(CoherentLabel(0.0), osc, grid)
        with pytest.raises(ValueError):
            split_step_evolve(psi0, PropagationPlan(1.0, 16, other, osc))

    def test_orbit_coverage_checked_up_front(self, osc):
        # packet fits at t=0 (centered), but its classical swing does not
        grid = make_grid(osc, 0.0, 8.0, 64)
        psi0 = coherent_wavefunction(CoherentLabel(0.0), osc, grid)
        boosted = psi0.with_values(psi0.values * np.exp(4j * grid.points))
        with pytest.raises(GridCoverageError):
            split_step_evolve(boosted, PropagationPlan(1.0, 64, grid, osc))

    def test_second_order_convergence(self, osc):
        # halving dt shrinks the phase-inclusive L2 error ~4x (Strang)
        label = CoherentLabel(1 + 1j)
        grid = make_grid(osc, orbit_radius(label, osc), 12.0, 512)
        psi0 = coherent_wavefunction(label, osc, grid)
        reference = analytic_evolved_wavefunction(label, osc.period, osc, grid)
        errors = []
        for n_steps in (512, 1024):
            out = split_step_evolve(psi0, PropagationPlan(osc.period, n_steps, grid, osc))
            errors.append(
                np.linalg.norm(out.values - reference.values)
                / np.linalg.norm(reference.values)
            )
        assert 3.5 <= errors[0] / errors[1] <= 4.5


class TestPacketMoments:
    def test_coherent_state_moments(self, any_units):
        p = any_units
        label = CoherentLabel(1.5 - 0.5j)
        grid = make_grid(p, orbit_radius(label, p), 12.0, 1024)
        psi = coherent_wavefunction(label, p, grid)
        x_mean, x_var, p_mean, p_var = packet_moments(psi)
        pair = expectation_xp(label, p)
        assert abs(x_mean - pair.x_mean) / p.length_scale < 1e-10
        assert abs(p_mean - pair.p_mean) / p.momentum_scale < 1e-10
        assert x_var * p_var == pytest.approx(p.hbar**2 / 4.0, rel=1e-10)


class TestFockEvolve:
    def test_identity_at_zero(self):
        vec = fock_coefficients(CoherentLabel(1 + 1j))
        evolved = fock_evolve(vec, 0.0, PhysicalParams())
        assert np.array_equal(evolved.coeffs, vec.coeffs)

    def test_one_period_gives_global_minus_one(self, any_units):
        p = any_units
        vec = fock_coefficients(CoherentLabel(0.7 + 0.2j))
        evolved = fock_evolve(vec, p.period, p)
        assert np.max(np.abs(evolved.coeffs + vec.coeffs)) < 1e-14

    def test_matches_rotated_label_coefficients(self, any_units):
        # e^{-i(n+1/2) omega t} c_n(alpha) = e^{-i omega t/2} c_n(alpha e^{-i omega t})
        p = any_units
        label = CoherentLabel(1.1 - 0.6j)
        t = 0.37 * p.period
        evolved = fock_evolve(fock_coefficients(label, 50), t, p)
        ev = evolve_label(label, t, p)
        target = ev.global_phase * fock_coefficients(ev.label, 50).coeffs
        assert np.max(np.abs(evolved.coeffs - target)) < 1e-12
