import os

from setuptools import Extension, setup

# The compiled kernel is an optimization, not a requirement: if Cython (or a
# C compiler) is unavailable the package falls back to the pure-Python kernels
# selected at import time in conesectors.kernels.
ext_modules = []
if os.environ.get("CONESECTORS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "conesectors._kernels",
                    ["src/conesectors/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
