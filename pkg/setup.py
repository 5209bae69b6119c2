import os

from setuptools import setup

ext_modules = []
if os.environ.get("OBSTRUKT_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "obstrukt.jets._speedups",
                    ["src/obstrukt/jets/_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # pure-python fallback kernels are always available
        ext_modules = []

setup(ext_modules=ext_modules)
