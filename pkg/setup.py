"""Build script: compiles the optional Cython engine kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so any build failure here downgrades to a warning instead of
aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/oia/engine/_ckernel.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"warning: Cython kernel skipped ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
