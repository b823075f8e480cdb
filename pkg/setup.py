"""Build script: compiles the optional fast kernels when Cython is present.

The package is fully functional without the extension (pure-Python kernels
are selected at import time), so a failed extension build is not fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/fanocheck/kernels/_speed.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
