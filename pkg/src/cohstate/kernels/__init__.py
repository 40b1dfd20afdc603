"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-numpy
fallback steps in with identical contracts.  `BACKEND` names the selection
("compiled" or "python").
"""

try:
    from . import _fftcore as _impl
except ImportError:  # extension not built on this install
    from . import _pyfft as _impl

BACKEND = _impl.BACKEND
fft = _impl.fft
split_step_run = _impl.split_step_run


def available_backends():
    """Importable kernel modules, compiled first (for tests and benchmarks)."""
    modules = []
    try:
        from . import _fftcore

        modules.append(_fftcore)
    except ImportError:
        pass
    from . import _pyfft

    modules.append(_pyfft)
    return modules
