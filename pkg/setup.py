import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "ewens_ldp._kernels",
        ["src/ewens_ldp/_kernels.pyx"],
        include_dirs=[np.get_include()],
        # keep IEEE semantics so compiled and fallback samplers agree bitwise
        extra_compile_args=["-O3", "-ffp-contract=off", "-fno-fast-math"],
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
