"""Build script: compiles the optional C kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time).  Set LEGWALK_NO_EXT=1 to skip compilation entirely, e.g. on
hosts without a C toolchain.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("LEGWALK_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "legwalk.kernels._ckernels",
                    ["src/legwalk/kernels/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        print("legwalk: Cython/NumPy unavailable at build time; "
              "building without the compiled kernels")

setup(ext_modules=ext_modules)
