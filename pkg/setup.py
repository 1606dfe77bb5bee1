from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "ibltlab._kernels",
                ["src/ibltlab/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
else:
    # No Cython available: install without the compiled core; the package
    # falls back to the pure-Python kernels at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
