"""Build hook for the optional compiled search kernel.

The Cython extension accelerates the sentential-form successor loop; the
package works identically (but slower) without it, so a failed extension
build degrades to the pure-Python kernel instead of failing the install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/asnf/_kernel/_fast.pyx"],
        language_level=3,
    )
except Exception as exc:  # noqa: BLE001 - degrade to the pure kernel
    print(f"asnf: skipping compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
