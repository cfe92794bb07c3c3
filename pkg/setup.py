"""Build script: compiles the optional exact-integer kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); building it speeds up the hot
loops by one to two orders of magnitude.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/tropls/_ckernels.pyx"],
        language_level=3,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
