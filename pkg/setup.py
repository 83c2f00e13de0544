"""Build script.

The compiled kernel extension is optional: if Cython or a C compiler is
missing, the install falls back to the pure-Python kernels with identical
behaviour (see hullattack.kernels).  Set HULLATTACK_NO_EXT=1 to skip the
extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install over a broken compiler toolchain."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # pragma: no cover
            print(f"warning: skipping compiled kernels ({exc!r})")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:  # pragma: no cover
            print(f"warning: skipping {ext.name} ({exc!r})")


ext_modules = []
cmdclass = {}
if not os.environ.get("HULLATTACK_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("hullattack._core_cy", ["src/hullattack/_core_cy.pyx"])],
            compiler_directives={"language_level": "3"},
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:  # pragma: no cover
        print("warning: Cython not available, installing pure-Python kernels only")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
