"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a numpy reference
backend is selected at import time), so any build failure here downgrades to
a warning instead of failing the install.
"""
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: skipping compiled kernels ({exc}); "
                  "the pure-python backend will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not compile {ext.name} ({exc}); "
                  "the pure-python backend will be used", file=sys.stderr)


ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("isorev._kernels._fastcore",
                   ["src/isorev/_kernels/_fastcore.pyx"],
                   include_dirs=[numpy.get_include()],
                   extra_compile_args=["-O3"],
                   define_macros=[("NPY_NO_DEPRECATED_API",
                                   "NPY_1_7_API_VERSION")])],
        language_level=3)
except ImportError as exc:
    print(f"warning: Cython/numpy unavailable at build time ({exc}); "
          "building without compiled kernels", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
