"""Build script: compiles the optional split-search extension.

The package works without the extension (a numpy fallback is selected at
import time); set FAKESCOPE_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("FAKESCOPE_SKIP_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "fakescope._fastsplit",
        sources=["src/fakescope/_fastsplit.pyx"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
