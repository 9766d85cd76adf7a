from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension(
    "lossnet.engine._kernel_c",
    ["src/lossnet/engine/_kernel_c.pyx"],
    # -ffp-contract=off: no fused multiply-add, so float results match the
    # pure-Python backend bit for bit
    extra_compile_args=["-O3", "-ffp-contract=off"],
)

setup(
    ext_modules=cythonize(
        [ext],
        compiler_directives={"language_level": "3"},
    ),
)
