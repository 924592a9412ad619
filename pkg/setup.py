import os

from setuptools import setup

# The compiled kernels are optional: the package selects a pure-Python
# fallback at import time if the extension is missing.  Set
# HECKEFORGE_PURE=1 to skip compilation entirely.
ext_modules = []
if os.environ.get("HECKEFORGE_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/heckeforge/_ckernels.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
