"""Build script: compiles the optional fast-kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so any failure to cythonize or
compile downgrades to a pure build instead of failing the install.
Set GLADIATOR_PURE=1 to skip the extension on purpose.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("GLADIATOR_PURE", "").strip() in ("1", "true", "yes"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "gladiator._kernels_c",
        ["src/gladiator/_kernels_c.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
