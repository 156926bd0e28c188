import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup; the package falls back to the
# pure-Python implementation when the extension is absent or fails to build.
ext_modules = []
if not os.environ.get("GERMSPLIT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "germsplit._kernels",
                    ["src/germsplit/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
