from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled loop is an optional speedup: if Cython or a C compiler is
# missing, the install proceeds and edgesbm.kernels falls back to numpy.
extensions = [
    Extension(
        "edgesbm._speedups",
        ["src/edgesbm/_speedups.pyx"],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, language_level=3) if cythonize else [])
