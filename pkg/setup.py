from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "stumpscreen._kernels._split_cy",
                ["src/stumpscreen/_kernels/_split_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
)
