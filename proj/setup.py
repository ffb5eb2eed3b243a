import os
import subprocess
from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    try:
        out = subprocess.run(
            ["pkg-config", "--cflags-only-I", "eigen3"],
            capture_output=True, text=True, check=True,
        ).stdout
        for tok in out.split():
            if tok.startswith("-I"):
                return tok[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    return "/usr/include/eigen3"


# The CLI and run-manifest translation units stay out of the extension:
# they pull in argument parsing and libcrypto, which the bindings never use.
sources = ["bindings/module.cpp"] + sorted(
    s for s in glob("src/*.cpp")
    if os.path.basename(s) not in ("cli.cpp", "manifest.cpp")
)

ext = Pybind11Extension(
    "scengen._core",
    sources,
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
