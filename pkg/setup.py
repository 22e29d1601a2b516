"""Build the compiled state-sum kernel when Cython and a C toolchain exist.

The package works without it: ``weldskein.statesum`` falls back to the
pure-Python kernel at import time.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        'src/weldskein/_statesum_c.pyx',
        compiler_directives={'language_level': '3'},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
