from setuptools import Extension, setup

# The compiled elimination kernel is optional: the package falls back to the
# pure-Python implementation in homnet._kernel.pure when the extension is
# missing, so a failed build must not abort the install.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "homnet._kernel._speedups",
                ["src/homnet/_kernel/_speedups.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
