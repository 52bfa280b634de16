"""Build script for the compiled sweep kernels.

The extension is optional at runtime: if it fails to import, the package
falls back to the numpy kernels with identical semantics.
``-ffp-contract=off`` keeps the C arithmetic bit-identical to numpy's
(no fused multiply-add in the quantile/drift expressions).
"""

import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "rmfperc._kernels._sweep_cy",
        ["src/rmfperc/_kernels/_sweep_cy.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O2", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
