"""Pure-numpy radix-2 kernels: unitary FFT and the split-step stepping loop.

Fallback used when the compiled extension is unavailable.  Same contracts
and conventions as the compiled module; the butterflies are vectorized per
stage, so a transform of size n costs ~log2(n) array operations.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

# size -> (bit-reversal permutation, per-stage forward twiddles, backward twiddles)
_plans: dict[int, tuple] = {}


def _plan(n: int):
    plan = _plans.get(n)
    if plan is None:
        levels = n.bit_length() - 1
        idx = np.arange(n)
        rev = np.zeros(n, dtype=np.intp)
        for _ in range(levels):
            rev = (rev << 1) | (idx & 1)
            idx >>= 1
        forward = [
            np.exp(-2j * np.pi * np.arange(size // 2) / size)
            for size in (2 << s for s in range(levels))
        ]
        backward = [np.conj(tw) for tw in forward]
        plan = (rev, forward, backward)
        _plans[n] = plan
    return plan


def _butterflies(a: np.ndarray, stages) -> None:
    for tw in stages:
        half = tw.shape[0]
        pairs = a.reshape(-1, 2 * half)
        even = pairs[:, :half].copy()
        odd = pairs[:, half:] * tw
        pairs[:, :half] = even + odd
        pairs[:, half:] = even - odd


def fft(values, inverse: bool = False) -> np.ndarray:
    """Unitary radix-2 DFT (1/sqrt(n) scaling each direction)."""
    arr = np.asarray(values, dtype=np.complex128)
    n = arr.shape[0]
    rev, forward, backward = _plan(n)
    out = arr[rev]
    _butterflies(out, backward if inverse else forward)
    out *= 1.0 / math.sqrt(n)
    return out


def split_step_run(psi, exp_half_v, exp_kin, n_steps: int) -> np.ndarray:
    """Apply n_steps of the half-potential / kinetic / half-potential cycle.

    exp_half_v and exp_kin are the precomputed position- and momentum-space
    phase tables.  Non-finite amplitudes abort with the failing step number.
    """
    a = np.array(psi, dtype=np.complex128, copy=True)
    vh = np.asarray(exp_half_v, dtype=np.complex128)
    kin = np.asarray(exp_kin, dtype=np.complex128)
    n = a.shape[0]
    if vh.shape != (n,) or kin.shape != (n,):
        raise ValueError("phase tables must match the state length")
    rev, forward, backward = _plan(n)
    inv_n = 1.0 / n
    for step in range(n_steps):
        a = (a * vh)[rev]
        _butterflies(a, forward)
        a *= kin
        a = a[rev]
        _butterflies(a, backward)
        a *= vh
        a *= inv_n
        if not np.all(np.isfinite(a)):
            raise FloatingPointError(
                f"non-finite amplitudes after step {step + 1} of {n_steps}"
            )
    return a
