"""Shared primitives: physical constants, spatial grids, Hermite functions,
and quadrature inner products.

Everything here is immutable after construction and every operation is a
pure function, so the types can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GridCoverageError",
    "PhysicalParams",
    "Grid",
    "WaveFunction",
    "FockVector",
    "make_grid",
    "hermite_functions",
    "inner_product",
    "norm",
    "fidelity",
]


class GridCoverageError(ValueError):
    """A grid is too small to hold the requested packet (or its orbit)."""


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class PhysicalParams:
    """Oscillator constants: mass ``m``, angular frequency ``omega``, ``hbar``.

    Defaults give oscillator units (hbar = m = omega = 1); all formulas in
    the package carry the constants explicitly, so any consistent unit
    system works.
    """

    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m", "omega", "hbar"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def length_scale(self) -> float:
        """Characteristic length sqrt(hbar / (m omega))."""
        return math.sqrt(self.hbar / (self.m * self.omega))

    @property
    def momentum_scale(self) -> float:
        """Characteristic momentum sqrt(hbar m omega)."""
        return math.sqrt(self.hbar * self.m * self.omega)

    @property
    def sigma(self) -> float:
        """Ground-state position spread sqrt(hbar / (2 m omega))."""
        return math.sqrt(self.hbar / (2.0 * self.m * self.omega))

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid: x_j = x_min + j dx for j = 0..n-1.

    x_max itself is excluded (periodic convention).  n must be a power of
    two, at least 16; the in-repo radix-2 Fourier transform requires it.
    """

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if self.x_max <= self.x_min:
            raise ValueError(
                f"x_max must exceed x_min, got [{self.x_min}, {self.x_max}]"
            )
        if not _is_power_of_two(int(self.n)) or self.n < 16:
            raise ValueError(f"grid size must be a power of two >= 16, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def points(self) -> np.ndarray:
        # x_min + j*dx rather than accumulated additions: bit-reproducible.
        return self.x_min + self.dx * np.arange(self.n)

    def covers(self, lo: float, hi: float) -> bool:
        return self.x_min <= lo and hi <= self.x_max


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex amplitudes sampled on a Grid, tagged with its parameters."""

    values: np.ndarray
    grid: Grid
    params: PhysicalParams

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128, copy=True)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"values must have shape ({self.grid.n},), got {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def density(self) -> np.ndarray:
        """Probability density |psi|^2 at the grid points."""
        return np.abs(self.values) ** 2

    def with_values(self, values: np.ndarray) -> "WaveFunction":
        """New wave function on the same grid/parameters."""
        return WaveFunction(values, self.grid, self.params)


@dataclass(frozen=True, eq=False)
class FockVector:
    """Truncated occupation-number coefficients c_0..c_N of a unit-norm state.

    The partial norm sum |c_n|^2 never exceeds 1 (up to 1e-12 roundoff);
    the deficit 1 - sum |c_n|^2 is the truncation tail mass.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128, copy=True)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        partial = float(np.sum(np.abs(coeffs) ** 2))
        if partial > 1.0 + 1e-12:
            raise ValueError(f"coefficients exceed unit norm: sum |c_n|^2 = {partial}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n_max(self) -> int:
        return self.coeffs.size - 1

    @property
    def deficit(self) -> float:
        """Truncation tail mass 1 - sum |c_n|^2, clipped at zero."""
        return max(0.0, 1.0 - float(np.sum(np.abs(self.coeffs) ** 2)))


def make_grid(
    params: PhysicalParams, center_span: float, sigma_multiple: float, n: int
) -> Grid:
    """Symmetric grid able to hold packets whose centers roam +-center_span.

    The half-width is center_span + sigma_multiple * sigma with sigma the
    ground-state spread, so the ground-state mass left outside the grid is
    below exp(-sigma_multiple^2 / 2).
    """
    if not math.isfinite(center_span) or center_span < 0.0:
        raise ValueError(f"center_span must be >= 0, got {center_span}")
    if not math.isfinite(sigma_multiple) or sigma_multiple < 4.0:
        raise ValueError(f"sigma_multiple must be >= 4, got {sigma_multiple}")
    if not isinstance(n, (int, np.integer)) or not _is_power_of_two(int(n)):
        raise ValueError(f"grid size must be a power of two, got {n}")
    half_width = center_span + sigma_multiple * params.sigma
    return Grid(-half_width, half_width, int(n))


def hermite_functions(x, n_max: int, params: PhysicalParams) -> np.ndarray:
    """Normalized oscillator eigenfunctions phi_0..phi_n_max at position(s) x.

    phi_n(x) = (m omega / pi hbar)^(1/4) (2^n n!)^(-1/2) H_n(xi) e^(-xi^2/2)
    with xi = x sqrt(m omega / hbar), evaluated through the normalized
    three-term recurrence

        phi_{n+1} = sqrt(2/(n+1)) xi phi_n - sqrt(n/(n+1)) phi_{n-1},

    which keeps magnitudes O(1) in the classically allowed region; raw
    Hermite polynomials would overflow near n ~ 150.

    Returns shape (n_max+1,) for scalar x and (n_max+1, len(x)) for arrays.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    xi = np.asarray(x, dtype=np.float64) * math.sqrt(
        params.m * params.omega / params.hbar
    )
    out = np.zeros((n_max + 1,) + xi.shape)
    out[0] = (params.m * params.omega / (math.pi * params.hbar)) ** 0.25 * np.exp(
        -0.5 * xi * xi
    )
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for n in range(1, n_max):
        out[n + 1] = (
            math.sqrt(2.0 / (n + 1)) * xi * out[n]
            - math.sqrt(n / (n + 1)) * out[n - 1]
        )
    return out


def inner_product(a: WaveFunction, b: WaveFunction) -> complex:
    """Quadrature overlap <a|b> = sum conj(a_j) b_j dx (rectangle rule).

    The rectangle rule is spectrally accurate for band-limited periodic
    functions on uniform grids, so Gaussians well inside the domain are
    integrated to machine precision.
    """
    if a.grid != b.grid:
        raise ValueError("wave functions live on different grids")
    return complex(np.vdot(a.values, b.values)) * a.grid.dx


def norm(a: WaveFunction) -> float:
    """Quadrature L2 norm sqrt(<a|a>)."""
    overlap = inner_product(a, a)
    if abs(overlap.imag) >= 1e-12:
        raise ValueError(
            f"self inner product has non-negligible imaginary part {overlap.imag}"
        )
    return math.sqrt(overlap.real)


def fidelity(a: WaveFunction, b: WaveFunction) -> float:
    """|<a|b>|^2 normalized by both norms: 1 iff equal up to a global phase."""
    overlap = inner_product(a, b)
    return abs(overlap) ** 2 / (inner_product(a, a).real * inner_product(b, b).real)
