"""Builds the compiled extension through the project's CMake tree so pip
installs share one build definition with the command line tool and tests."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build = Path(self.build_temp).resolve() / "cmake"
        build.mkdir(parents=True, exist_ok=True)
        subprocess.check_call([
            "cmake",
            "-S", str(source),
            "-B", str(build),
            "-DCMAKE_BUILD_TYPE=Release",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ])
        subprocess.check_call(["cmake", "--build", str(build), "--target", "tetkit_py"])
        built = sorted((build / "python" / "tetkit").glob("_core.*"))
        if not built:
            raise RuntimeError("cmake did not produce the extension; is pybind11 installed?")
        destination = Path(self.get_ext_fullpath(ext.name)).resolve()
        destination.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built[0], destination.parent / built[0].name)


setup(
    ext_modules=[CMakeExtension("tetkit._core")],
    cmdclass={"build_ext": CMakeBuild},
)
