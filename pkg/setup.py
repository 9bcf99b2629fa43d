"""Build script for the optional compiled sweep kernel.

The package works without the extension (a pure-Python kernel is selected at
import time); set OVERLAP_ECC_NO_EXT=1 to skip building it entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("OVERLAP_ECC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("overlap_ecc._speedups", ["src/overlap_ecc/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install pure-Python only.
        ext_modules = []

setup(ext_modules=ext_modules)
