"""Build script: compiles the optional rational-kernel extension.

The package is fully functional without the extension (pure-Python
kernels are selected at import time), so a missing compiler or Cython
only costs speed.  Set REACHOBS_NO_EXTENSION=1 to skip the build.
"""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("REACHOBS_NO_EXTENSION") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without compiled kernels")
        return []
    return cythonize(
        [Extension("reachobs._ckernels", ["src/reachobs/_ckernels.pyx"])],
        language_level="3",
    )


class OptionalBuildExt(build_ext):
    """Degrade to the pure-Python kernels when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # platform without a working toolchain
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel {ext.name}: {exc}")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
