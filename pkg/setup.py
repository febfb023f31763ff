from setuptools import Extension, setup

# The native kernel is optional: the package falls back to the pure-Python
# twin in fgw._kernels.pure when the extension is absent (or FGW_PURE=1).
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "fgw._kernels._native",
                ["src/fgw/_kernels/_native.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
