# Builds the optional compiled kernels; without Cython or a C compiler the
# package installs pure-Python and affine_cells.kernels falls back.
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("AFFINE_CELLS_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("affine_cells._ckernels", ["src/affine_cells/_ckernels.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
