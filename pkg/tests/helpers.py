"""Shared test oracles: brute-force transforms, alternative closed-form
groupings of the coherent-state wave function, and label samplers."""

import numpy as np

from cohstate import WaveFunction


def dft_brute_force(values, inverse=False):
    """O(n^2) unitary DFT straight from the definition."""
    v = np.asarray(values, dtype=complex)
    n = v.shape[0]
    sign = 1j if inverse else -1j
    j = np.arange(n)
    matrix = np.exp(sign * 2.0 * np.pi * np.outer(j, j) / n)
    return matrix @ v / np.sqrt(n)


def wavefunction_direct_exponential(label, params, grid):
    """Grouping N exp(alpha^2/2 - |alpha|^2/2) exp(-(xi - alpha)^2).

    Direct complex exponentiation; valid for moderate |alpha| where no
    intermediate overflow occurs.
    """
    a = label.alpha
    xi = grid.points * np.sqrt(params.m * params.omega / (2.0 * params.hbar))
    amp = (params.m * params.omega / (np.pi * params.hbar)) ** 0.25
    values = amp * np.exp(0.5 * a**2 - 0.5 * abs(a) ** 2) * np.exp(-((xi - a) ** 2))
    return WaveFunction(values, grid, params)


def wavefunction_phase_split(label, params, grid):
    """Grouping N e^{-i a1 a2} e^{-(xi - a1)^2} e^{2 i a2 xi}."""
    a1, a2 = label.a1, label.a2
    xi = grid.points * np.sqrt(params.m * params.omega / (2.0 * params.hbar))
    amp = (params.m * params.omega / (np.pi * params.hbar)) ** 0.25
    values = (
        amp
        * np.exp(-1j * a1 * a2)
        * np.exp(-((xi - a1) ** 2))
        * np.exp(2j * a2 * xi)
    )
    return WaveFunction(values, grid, params)


def random_disc(rng, count, radius):
    """Uniform complex samples on the closed disc |alpha| <= radius."""
    r = radius * np.sqrt(rng.uniform(size=count))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=count)
    return r * np.exp(1j * theta)


def peak_relative_diff(a, b):
    """Max pointwise difference normalized by the first state's peak amplitude."""
    return float(np.max(np.abs(a.values - b.values)) / np.max(np.abs(a.values)))
