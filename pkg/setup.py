"""Build script for the optional compiled relation kernel.

The package is pure Python; the extension only accelerates the packed
bitset kernel in oredyn.kernel.  If Cython or a C compiler is missing
the build falls through and the pure fallback is used at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise skip it."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:
            print(f"skipping compiled kernel: {exc}")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"skipping compiled kernel {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    exts = [
        Extension(
            "oredyn._fastrel",
            ["src/oredyn/_fastrel.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    return cythonize(exts, language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
