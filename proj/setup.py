from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

# The extension compiles the C++ core plus the bindings in one go; the CMake
# tree remains the build for the CLI and the test suites.
ext = Pybind11Extension(
    "relex._core",
    sources=sorted(glob("src/*.cpp")),
    include_dirs=["include", "vendor"],
    cxx_std=20,
    define_macros=[("RELEX_VERSION", '"0.1.0"')],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
