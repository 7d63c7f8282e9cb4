import os
import sys

import numpy as np
from setuptools import Extension, setup

# QUADCUT_NO_EXT=1 installs the pure-Python package only.
ext_modules = []
if not os.environ.get("QUADCUT_NO_EXT"):
    from Cython.Build import cythonize

    openmp = [] if sys.platform == "darwin" else ["-fopenmp"]
    ext = Extension(
        "quadcut._kernels",
        ["src/quadcut/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # no fused multiply-add: keeps the compiled path bitwise equal to numpy
        extra_compile_args=["-O3", "-ffp-contract=off", *openmp],
        extra_link_args=openmp,
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
