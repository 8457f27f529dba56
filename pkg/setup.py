from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "schubmc._kernel_cy",
                ["src/schubmc/_kernel_cy.pyx"],
                optional=True,
            )
        ]
    )
except ImportError:
    # no Cython: the pure-Python kernel is used at runtime
    pass

setup(ext_modules=ext_modules)
