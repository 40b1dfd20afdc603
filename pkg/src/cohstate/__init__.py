"""Coherent states of the harmonic oscillator with the exact overall phase.

The package provides the closed-form coherent-state wave function including
its constant phase factor e^{-i <x><p> / 2 hbar}, the closed-form time
evolution (label rotation plus zero-point phase), two independent numerical
propagators to check it against (a split-step spectral integrator and an
exact Fock-phase evolver), and a verification suite that quantifies why the
phase factor matters: without it the evolving Gaussian has the right
density, norm, and uncertainties at every instant, yet fails the
Schroedinger equation by an O(1) residual.
"""

from .analytic import (
    CoherentLabel,
    EvolvedLabel,
    ExpectationPair,
    analytic_evolved_wavefunction,
    coherent_wavefunction,
    default_fock_truncation,
    evolve_label,
    expectation_xp,
    fock_coefficients,
    fock_synthesize,
    label_from_expectation,
    orbit_radius,
    oscillating_packet,
    phase_phi,
    phaseless_gaussian,
    unnormalized_coherent_packet,
)
from .core import (
    FockVector,
    Grid,
    GridCoverageError,
    PhysicalParams,
    WaveFunction,
    fidelity,
    hermite_functions,
    inner_product,
    make_grid,
    norm,
)
from .propagator import (
    PropagationPlan,
    fock_evolve,
    fourier_transform,
    inverse_fourier_transform,
    packet_moments,
    split_step_evolve,
    wavenumbers,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CoherentLabel",
    "EvolvedLabel",
    "ExpectationPair",
    "FockVector",
    "Grid",
    "GridCoverageError",
    "PhysicalParams",
    "PropagationPlan",
    "WaveFunction",
    "analytic_evolved_wavefunction",
    "coherent_wavefunction",
    "default_fock_truncation",
    "evolve_label",
    "expectation_xp",
    "fidelity",
    "fock_coefficients",
    "fock_evolve",
    "fock_synthesize",
    "fourier_transform",
    "hermite_functions",
    "inner_product",
    "inverse_fourier_transform",
    "label_from_expectation",
    "make_grid",
    "norm",
    "orbit_radius",
    "oscillating_packet",
    "packet_moments",
    "phase_phi",
    "phaseless_gaussian",
    "split_step_evolve",
    "unnormalized_coherent_packet",
    "wavenumbers",
]
