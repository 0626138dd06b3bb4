"""Build hook for the optional compiled kernel.

Metadata lives in pyproject.toml.  When Cython or a C compiler is missing
the package still installs and falls back to the pure-Python kernel.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("kgcoh._kernel", ["src/kgcoh/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
