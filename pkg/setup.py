"""Build script: compiles the optional speedup extension when Cython is present.

The package is fully functional without the extension; kernels.py falls back
to the pure-Python implementations at import time.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None and os.path.exists("src/diskpath/_speedups.pyx"):
    extensions = cythonize(
        [Extension("diskpath._speedups", ["src/diskpath/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
