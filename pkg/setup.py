"""Build script for the optional compiled kernels.

The package works without them (``coxgal._pykernels`` is used instead), so a
missing Cython or compiler only drops the extension.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("COXGAL_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "coxgal._kernels",
                    ["src/coxgal/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
