import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BYZFUSION_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # fallback kernels are used at runtime
        pass
    else:
        ext_modules = cythonize(
            [Extension("byzfusion._ckernels", ["src/byzfusion/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
