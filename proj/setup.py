"""CMake-driven extension build for the sunada_lab package.

The real build lives in CMakeLists.txt; this shim configures it, builds
the _core pybind11 module, and drops the shared object into the wheel.
"""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])
        self.sourcedir = str(Path(__file__).parent.resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        out_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        out_path.parent.mkdir(parents=True, exist_ok=True)
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                ext.sourcedir,
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython_EXECUTABLE={sys.executable}",
                # Trips the same packaging branch as a scikit-build backend
                # would: install targets on, test tree off.
                "-DSKBUILD_PROJECT_NAME=sunada_lab",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(["cmake", "--build", str(build_dir), "--target", "_core"], check=True)

        built = sorted(build_dir.glob("_core.*.so")) or sorted(build_dir.glob("_core.so"))
        if not built:
            raise RuntimeError("CMake build produced no _core module")
        shutil.copy2(built[0], out_path)


setup(
    ext_modules=[CMakeExtension("sunada_lab._core")],
    cmdclass={"build_ext": CMakeBuild},
)
