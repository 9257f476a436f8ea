"""Build script: compiles the optional Cython kernel.

The package is fully functional without the compiled extension (a numpy
fallback is selected at import time), so any failure here degrades to a
pure-Python install instead of aborting.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no toolchain at all
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "uflab: compiled kernel unavailable (%s); "
            "falling back to the numpy implementation" % (exc,)
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("uflab.kernels._core", ["src/uflab/kernels/_core.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
