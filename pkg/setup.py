import os
import shutil

import numpy
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SIEVECRAFT_NO_EXT") and shutil.which("cc"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sievecraft._kernels_cy",
                    ["src/sievecraft/_kernels_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
