from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # no Cython: install without the compiled kernel, the package
    # falls back to the vector backend at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "parity_ramsey._kernel._native",
                ["src/parity_ramsey/_kernel/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
