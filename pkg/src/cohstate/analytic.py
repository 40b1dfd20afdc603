"""Closed-form coherent-state quantities: labels, phases, wave functions,
Fock coefficients, expectation values, the evolution law, and the
oscillating packet.

The canonical wave-function formula used here is the expectation-value
grouping: a real Gaussian envelope times explicit unimodular phase factors.
It is the numerically safest of the equivalent algebraic forms because it
never exponentiates a large complex argument that later cancels (the
"direct" grouping contains exp(alpha^2/2), which overflows for large real
alpha before cancellation).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    FockVector,
    Grid,
    GridCoverageError,
    PhysicalParams,
    WaveFunction,
    hermite_functions,
)

__all__ = [
    "MAX_LABEL_MAGNITUDE",
    "CoherentLabel",
    "ExpectationPair",
    "EvolvedLabel",
    "phase_phi",
    "coherent_wavefunction",
    "phaseless_gaussian",
    "unnormalized_coherent_packet",
    "fock_coefficients",
    "default_fock_truncation",
    "fock_synthesize",
    "expectation_xp",
    "label_from_expectation",
    "evolve_label",
    "analytic_evolved_wavefunction",
    "oscillating_packet",
    "orbit_radius",
]

# Beyond this the default Fock truncations and grid sizes silently degrade.
MAX_LABEL_MAGNITUDE = 50.0


@dataclass(frozen=True)
class CoherentLabel:
    """Complex eigenvalue alpha = alpha1 + i alpha2 labeling a coherent state."""

    alpha: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
            raise ValueError(f"alpha must be finite, got {alpha!r}")
        if abs(alpha) > MAX_LABEL_MAGNITUDE:
            raise ValueError(
                f"|alpha| = {abs(alpha):.4g} exceeds the supported cap "
                f"{MAX_LABEL_MAGNITUDE:g}"
            )
        object.__setattr__(self, "alpha", alpha)

    @property
    def a1(self) -> float:
        return self.alpha.real

    @property
    def a2(self) -> float:
        return self.alpha.imag


@dataclass(frozen=True)
class ExpectationPair:
    """Position and momentum means (<x>, <p>) of a coherent state."""

    x_mean: float
    p_mean: float


@dataclass(frozen=True)
class EvolvedLabel:
    """Rotated label alpha e^{-i omega t} plus the zero-point phase e^{-i omega t / 2}."""

    label: CoherentLabel
    global_phase: complex
    t: float


def phase_phi(label: CoherentLabel) -> float:
    """Phase angle phi = alpha1 * alpha2 fixing the state's overall phase.

    This is the real number with i phi = (alpha^2 - conj(alpha)^2) / 4; the
    wave function carries the associated constant factor e^{-i alpha1 alpha2}
    (equivalently e^{-i <x><p> / 2 hbar}).
    """
    return label.a1 * label.a2


def expectation_xp(label: CoherentLabel, params: PhysicalParams) -> ExpectationPair:
    """<x> = sqrt(2 hbar / m omega) alpha1, <p> = sqrt(2 hbar m omega) alpha2."""
    return ExpectationPair(
        x_mean=math.sqrt(2.0) * params.length_scale * label.a1,
        p_mean=math.sqrt(2.0) * params.momentum_scale * label.a2,
    )


def label_from_expectation(
    pair: ExpectationPair, params: PhysicalParams
) -> CoherentLabel:
    """Exact inverse of expectation_xp."""
    a1 = pair.x_mean / (math.sqrt(2.0) * params.length_scale)
    a2 = pair.p_mean / (math.sqrt(2.0) * params.momentum_scale)
    return CoherentLabel(complex(a1, a2))


def orbit_radius(label: CoherentLabel, params: PhysicalParams) -> float:
    """Largest |<x>(t)| over the classical orbit: sqrt(2 hbar / m omega) |alpha|."""
    return math.sqrt(2.0) * params.length_scale * abs(label.alpha)


def _require_center_coverage(grid: Grid, center: float, params: PhysicalParams):
    reach = 6.0 * params.sigma
    if not grid.covers(center - reach, center + reach):
        raise GridCoverageError(
            f"grid [{grid.x_min:.6g}, {grid.x_max:.6g}] does not cover the packet "
            f"center {center:.6g} +- 6 sigma ({reach:.6g})"
        )


def _require_orbit_coverage(label: CoherentLabel, params: PhysicalParams, grid: Grid):
    reach = orbit_radius(label, params) + 6.0 * params.sigma
    if not grid.covers(-reach, reach):
        raise GridCoverageError(
            f"grid [{grid.x_min:.6g}, {grid.x_max:.6g}] does not cover the classical "
            f"orbit +- 6 sigma (needs +-{reach:.6g})"
        )


def _gaussian_packet(
    x_mean: float,
    p_mean: float,
    constant_phase: float,
    params: PhysicalParams,
    grid: Grid,
) -> WaveFunction:
    """Normalized Gaussian with mean position/momentum and an extra constant phase.

    (m omega / pi hbar)^(1/4) e^{-m omega (x - <x>)^2 / 2 hbar}
        * e^{i (<p> x / hbar + constant_phase)}

    built from a real envelope and a real phase angle, so no complex
    exponential of a large argument ever appears.
    """
    x = grid.points
    amplitude = (params.m * params.omega / (math.pi * params.hbar)) ** 0.25
    envelope = np.exp(
        -params.m * params.omega * (x - x_mean) ** 2 / (2.0 * params.hbar)
    )
    phase = p_mean * x / params.hbar + constant_phase
    return WaveFunction(amplitude * envelope * np.exp(1j * phase), grid, params)


def coherent_wavefunction(
    label: CoherentLabel, params: PhysicalParams, grid: Grid
) -> WaveFunction:
    """Normalized coherent-state wave function including its phase factor.

    psi_alpha(x) = (m omega / pi hbar)^(1/4) e^{-i <x><p> / 2 hbar}
                   e^{-m omega (x - <x>)^2 / 2 hbar} e^{i <p> x / hbar}

    The constant factor e^{-i <x><p> / 2 hbar} = e^{-i alpha1 alpha2} is what
    makes the overlap with the ground state real and positive, and it is the
    part that becomes time dependent under evolution; dropping it produces
    phaseless_gaussian below.
    """
    pair = expectation_xp(label, params)
    _require_center_coverage(grid, pair.x_mean, params)
    constant_phase = -pair.x_mean * pair.p_mean / (2.0 * params.hbar)
    return _gaussian_packet(pair.x_mean, pair.p_mean, constant_phase, params, grid)


def phaseless_gaussian(
    label: CoherentLabel, params: PhysicalParams, grid: Grid
) -> WaveFunction:
    """The deficient form: same Gaussian packet with the constant phase dropped.

    Identical to coherent_wavefunction in density, norm, and every static
    moment; it differs by the constant unimodular factor e^{+i <x><p> / 2 hbar},
    which is exactly what breaks its naive time evolution.
    """
    pair = expectation_xp(label, params)
    _require_center_coverage(grid, pair.x_mean, params)
    return _gaussian_packet(pair.x_mean, pair.p_mean, 0.0, params, grid)


def unnormalized_coherent_packet(
    label: CoherentLabel, params: PhysicalParams, grid: Grid
) -> WaveFunction:
    """Gaussian eigenpacket with a bare constant prefactor (m omega/pi hbar)^(1/4).

    This drops the normalization exponential e^{(alpha - conj(alpha))^2 / 4}
    together with the phase, as some published forms do; the quadrature norm
    is e^{alpha2^2}, not 1.
    """
    pair = expectation_xp(label, params)
    _require_center_coverage(grid, pair.x_mean, params)
    # |e^{-(xi - alpha)^2}| = e^{-(xi - a1)^2 + a2^2}, arg = 2 a2 xi - 2 a1 a2
    xi = grid.points * math.sqrt(params.m * params.omega / (2.0 * params.hbar))
    amplitude = (params.m * params.omega / (math.pi * params.hbar)) ** 0.25
    magnitude = amplitude * np.exp(-((xi - label.a1) ** 2) + label.a2**2)
    phase = 2.0 * label.a2 * xi - 2.0 * label.a1 * label.a2
    return WaveFunction(magnitude * np.exp(1j * phase), grid, params)


def default_fock_truncation(label: CoherentLabel) -> int:
    """ceil(|alpha|^2 + 10 |alpha| + 20), from Poisson tail decay of |c_n|^2.

    Leaves tail mass below 1e-16 for |alpha| <= 3.
    """
    a = abs(label.alpha)
    return math.ceil(a * a + 10.0 * a + 20.0)


def fock_coefficients(label: CoherentLabel, n_max: int | None = None) -> FockVector:
    """Occupation-number coefficients c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!).

    Computed by the stable ratio recurrence c_{n+1} = c_n alpha / sqrt(n+1)
    from the real, positive c_0 = e^{-|alpha|^2/2} (this sign/phase choice is
    the convention the whole package shares).  The recurrence underflows for
    |alpha| >~ 37 where c_0 is subnormal; default truncations keep practical
    use far below that.
    """
    if n_max is None:
        n_max = default_fock_truncation(label)
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    coeffs = np.empty(n_max + 1, dtype=np.complex128)
    coeffs[0] = math.exp(-0.5 * abs(label.alpha) ** 2)
    for n in range(n_max):
        coeffs[n + 1] = coeffs[n] * label.alpha / math.sqrt(n + 1.0)
    return FockVector(coeffs)


def fock_synthesize(
    coeffs: FockVector, params: PhysicalParams, grid: Grid
) -> WaveFunction:
    """Coordinate representation sum_n c_n phi_n(x) of a Fock vector.

    Strict pointwise comparisons against closed forms need a truncation
    deficit below ~1e-14; default_fock_truncation guarantees that.
    """
    basis = hermite_functions(grid.points, coeffs.n_max, params)
    return WaveFunction(coeffs.coeffs @ basis, grid, params)


def evolve_label(
    label: CoherentLabel, t: float, params: PhysicalParams
) -> EvolvedLabel:
    """Closed-form evolution: the label rotates, a zero-point phase accumulates.

    alpha -> alpha e^{-i omega t}, with the global factor e^{-i omega t / 2};
    the state stays coherent for all t, and |alpha| is preserved exactly.
    """
    rotation = cmath.exp(-1j * params.omega * t)
    return EvolvedLabel(
        label=CoherentLabel(label.alpha * rotation),
        global_phase=cmath.exp(-0.5j * params.omega * t),
        t=float(t),
    )


def analytic_evolved_wavefunction(
    label: CoherentLabel, t: float, params: PhysicalParams, grid: Grid
) -> WaveFunction:
    """Exact solution with initial condition psi(0) = coherent_wavefunction(label).

    e^{-i omega t / 2} times the coherent wave function of the rotated label;
    satisfies the time-dependent Schroedinger equation for the harmonic
    Hamiltonian up to discretization error.  The grid must cover the whole
    classical orbit, not just the initial packet.
    """
    _require_orbit_coverage(label, params, grid)
    evolved = evolve_label(label, t, params)
    base = coherent_wavefunction(evolved.label, params, grid)
    return base.with_values(evolved.global_phase * base.values)


def oscillating_packet(
    x0: float, t: float, params: PhysicalParams, grid: Grid
) -> WaveFunction:
    """Gaussian packet oscillating without change of shape, evaluated literally.

    psi(x, t) = (m omega / pi hbar)^(1/4) e^{-m omega (x - x0 cos omega t)^2 / 2 hbar}
        * exp[-i (omega t / 2 + (m omega / hbar) x0 x sin omega t
                  - (m omega / 4 hbar) x0^2 sin 2 omega t)]

    Equals analytic_evolved_wavefunction with the real label
    alpha = x0 sqrt(m omega / 2 hbar); antiperiodic over one period because
    of the zero-point term.
    """
    reach = abs(x0) + 6.0 * params.sigma
    if not grid.covers(-reach, reach):
        raise GridCoverageError(
            f"grid [{grid.x_min:.6g}, {grid.x_max:.6g}] does not cover the "
            f"oscillation range +-{reach:.6g}"
        )
    x = grid.points
    mw_over_h = params.m * params.omega / params.hbar
    amplitude = (params.m * params.omega / (math.pi * params.hbar)) ** 0.25
    envelope = np.exp(-0.5 * mw_over_h * (x - x0 * math.cos(params.omega * t)) ** 2)
    phase = -(
        0.5 * params.omega * t
        + mw_over_h * x0 * math.sin(params.omega * t) * x
        - 0.25 * mw_over_h * x0**2 * math.sin(2.0 * params.omega * t)
    )
    return WaveFunction(amplitude * envelope * np.exp(1j * phase), grid, params)
