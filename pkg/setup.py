"""Build script: compiles the optional eigensolver extension.

The compiled core is a plain speed-up; if Cython (or a C compiler) is
missing the package installs anyway and falls back to the pure NumPy
kernels at import time.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "ptosc.eigensolver._qr_cy",
                ["src/ptosc/eigensolver/_qr_cy.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
