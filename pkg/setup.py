"""Build script: compiles the optional tridiagonal eigensolver extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time); compilation failures are downgraded to warnings so
source installs never break on machines without a C toolchain.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, broken toolchain, ...
            warnings.warn(f"skipping compiled kernels ({exc}); "
                          "falling back to the pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); "
                          "falling back to the pure-Python backend")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "pdmdirac.kernels._tridiag_cy",
                ["src/pdmdirac/kernels/_tridiag_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
