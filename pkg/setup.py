import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("PSINDEX_PURE") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("psindex._ckernels", ["src/psindex/_ckernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=_extensions())
