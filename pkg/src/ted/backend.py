"""Backend selection: compiled kernel when importable, pure Python otherwise.

Set ``TED_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pyengine

try:
    from . import _kernel
except ImportError:  # extension not built
    _kernel = None


class PythonBackend:
    name = "python"

    @staticmethod
    def solve(problem, algorithm: str, seed: int = 0):
        memo = _pyengine.PyMemo(problem)
        if algorithm == "sz":
            _pyengine.run(problem, memo, 0, 0, 0, 0, _pyengine.MODE_RIGHT)
        elif algorithm == "klein":
            mode = _pyengine.MODE_KLEIN_F if problem.n >= problem.m else _pyengine.MODE_KLEIN_G
            _pyengine.run(problem, memo, 0, 0, 0, 0, mode)
        elif algorithm == "dmrw":
            _pyengine.run_dmrw(problem, memo)
        elif algorithm == "random":
            _pyengine.run(problem, memo, 0, 0, 0, 0, _pyengine.MODE_RANDOM, seed=seed)
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        return memo


class CompiledBackend:
    name = "compiled"

    @staticmethod
    def solve(problem, algorithm: str, seed: int = 0):
        if not _kernel.fits(problem.n, problem.m):
            return PythonBackend.solve(problem, algorithm, seed)
        return _kernel.solve(problem, algorithm, seed & _pyengine.MASK64)


def compiled_available() -> bool:
    return _kernel is not None


def default_backend():
    if _kernel is None or os.environ.get("TED_PURE_PYTHON") == "1":
        return PythonBackend
    return CompiledBackend


def get_backend(name=None):
    if name is None:
        return default_backend()
    if name == "python":
        return PythonBackend
    if name == "compiled":
        if _kernel is None:
            raise RuntimeError("compiled kernel is not built; run `pip install -e .`")
        return CompiledBackend
    raise ValueError(f"unknown backend {name!r}")


ACTIVE = default_backend().name
