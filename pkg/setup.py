import os

from setuptools import setup

ext_modules = []
if os.environ.get("WITTLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "wittlab.kernels._speedups",
                    ["src/wittlab/kernels/_speedups.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # no cython: install with the pure-python kernel only
        pass

setup(ext_modules=ext_modules)
