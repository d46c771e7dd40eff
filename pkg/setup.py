from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "mpqnet.maxplus._kernel_c",
        ["src/mpqnet/maxplus/_kernel_c.pyx"],
    ),
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
