"""Build the optional Cython GF(2) kernel.

The extension is optional: if Cython or a C compiler is unavailable the
package installs without it and falls back to the numpy kernel.
"""
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "equivhom._gf2_ext",
                ["src/equivhom/_gf2_ext.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
