import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "polyrips._kernels._speedups",
                ["src/polyrips/_kernels/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: install with the pure-Python kernel backend only.
    ext_modules = []

setup(ext_modules=ext_modules)
