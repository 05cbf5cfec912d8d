"""Build script for the compiled board kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so the build degrades gracefully when Cython or a C
compiler is missing. Build in place with:

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension(
            "essm_search.kernels._queens_cy",
            ["src/essm_search/kernels/_queens_cy.pyx"],
            extra_compile_args=["-O3"],
        )],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
