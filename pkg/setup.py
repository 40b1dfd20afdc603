"""Build script: compiles the accelerated kernels when a toolchain is present.

The package works without the extension (a pure-numpy fallback is selected
at import time), so a failed compilation only costs speed, not correctness.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except (PlatformError, FileNotFoundError) as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError, FileNotFoundError) as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        warnings.warn(
            f"compiled kernels not built ({exc}); "
            "falling back to the pure-Python implementation"
        )


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "cohstate.kernels._fftcore",
                sources=["src/cohstate/kernels/_fftcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
