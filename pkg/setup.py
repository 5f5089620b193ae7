"""Build script: compiles the optional GF(2)[t] / Z4[t] kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), so a missing compiler or Cython only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("unilcalc._gf2_fast", ["src/unilcalc/_gf2_fast.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
