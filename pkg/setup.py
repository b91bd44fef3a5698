"""Builds the optional compiled arithmetic kernel.

The package works without it (pure-Python kernel); set BRIESKORN_PURE=1
to skip the extension when no C toolchain is available.
"""

import os

from setuptools import setup


def extensions():
    if os.environ.get("BRIESKORN_PURE") == "1":
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    return cythonize(
        [Extension("brieskorn._speedups", ["src/brieskorn/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions())
