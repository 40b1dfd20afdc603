# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled radix-2 kernels: unitary FFT and the split-step stepping loop.

Mirrors `_pyfft` (same contracts and conventions); the package picks
whichever imports at runtime.  Twiddle factors and bit-reversal tables are
cached per transform size.
"""

from libc.math cimport isfinite, sqrt

import numpy as np

BACKEND = "compiled"

_plans = {}


def _plan(n):
    plan = _plans.get(n)
    if plan is None:
        levels = int(n).bit_length() - 1
        idx = np.arange(n, dtype=np.intp)
        rev = np.zeros(n, dtype=np.intp)
        for _ in range(levels):
            rev = (rev << 1) | (idx & 1)
            idx >>= 1
        # full half-circle table; stage `size` strides through it by n//size
        forward = np.exp(-2j * np.pi * np.arange(max(n // 2, 1)) / n)
        plan = (
            np.ascontiguousarray(rev),
            np.ascontiguousarray(forward),
            np.ascontiguousarray(np.conj(forward)),
        )
        _plans[n] = plan
    return plan


cdef void _butterflies(double complex* a, const double complex* tw,
                       Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t size = 2, half, stride, start, k, i, j
    cdef double complex w, t, u
    while size <= n:
        half = size >> 1
        stride = n // size
        start = 0
        while start < n:
            for k in range(half):
                w = tw[k * stride]
                i = start + k
                j = i + half
                t = a[j] * w
                u = a[i]
                a[i] = u + t
                a[j] = u - t
            start += size
        size <<= 1


def fft(values, bint inverse=False):
    """Unitary radix-2 DFT (1/sqrt(n) scaling each direction)."""
    arr = np.asarray(values, dtype=np.complex128)
    cdef Py_ssize_t n = arr.shape[0]
    rev, forward, backward = _plan(n)
    out = np.ascontiguousarray(arr[rev])
    cdef double complex[::1] mv = out
    cdef const double complex[::1] tw = backward if inverse else forward
    if n > 1:
        with nogil:
            _butterflies(&mv[0], &tw[0], n)
    out *= 1.0 / sqrt(<double> n)
    return out


cdef Py_ssize_t _run_steps(double complex* a, double complex* buf,
                           const Py_ssize_t* rev,
                           const double complex* tw_fwd,
                           const double complex* tw_bwd,
                           const double complex* vh,
                           const double complex* kin,
                           Py_ssize_t n, Py_ssize_t n_steps) noexcept nogil:
    cdef Py_ssize_t step, j
    cdef double inv_n = 1.0 / n
    cdef double total
    for step in range(n_steps):
        for j in range(n):
            buf[j] = a[rev[j]] * vh[rev[j]]
        _butterflies(buf, tw_fwd, n)
        for j in range(n):
            buf[j] = buf[j] * kin[j]
        for j in range(n):
            a[j] = buf[rev[j]]
        _butterflies(a, tw_bwd, n)
        total = 0.0
        for j in range(n):
            a[j] = a[j] * vh[j] * inv_n
            total += a[j].real * a[j].real + a[j].imag * a[j].imag
        if not isfinite(total):
            return step
    return -1


def split_step_run(psi, exp_half_v, exp_kin, Py_ssize_t n_steps):
    """Apply n_steps of the half-potential / kinetic / half-potential cycle.

    exp_half_v and exp_kin are the precomputed position- and momentum-space
    phase tables.  Non-finite amplitudes abort with the failing step number.
    """
    a_arr = np.array(psi, dtype=np.complex128, copy=True, order="C")
    vh_arr = np.ascontiguousarray(exp_half_v, dtype=np.complex128)
    kin_arr = np.ascontiguousarray(exp_kin, dtype=np.complex128)
    cdef Py_ssize_t n = a_arr.shape[0]
    if vh_arr.shape[0] != n or kin_arr.shape[0] != n:
        raise ValueError("phase tables must match the state length")
    rev_arr, fwd_arr, bwd_arr = _plan(n)
    buf_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] a = a_arr
    cdef double complex[::1] buf = buf_arr
    cdef const double complex[::1] vh = vh_arr
    cdef const double complex[::1] kin = kin_arr
    cdef const double complex[::1] tw_fwd = fwd_arr
    cdef const double complex[::1] tw_bwd = bwd_arr
    cdef const Py_ssize_t[::1] rev = rev_arr
    cdef Py_ssize_t bad
    with nogil:
        bad = _run_steps(&a[0], &buf[0], &rev[0], &tw_fwd[0], &tw_bwd[0],
                         &vh[0], &kin[0], n, n_steps)
    if bad >= 0:
        raise FloatingPointError(
            f"non-finite amplitudes after step {bad + 1} of {n_steps}"
        )
    return a_arr
