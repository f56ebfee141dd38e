from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source-only install: the package falls back to the numpy kernels.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "holostar.kernels._statevec",
                sources=["src/holostar/kernels/_statevec.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
