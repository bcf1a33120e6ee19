"""Selects the compiled coefficient kernels when available.

Set ``REESLIKE_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _kernels_py

MAX_COMPILED_MODULUS = 2**31

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("REESLIKE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _kernels_py


def _pick(n):
    return _impl if n < MAX_COMPILED_MODULUS else _kernels_py


def mul_mod(a, b, n):
    return _pick(n).mul_mod(a, b, n)


def add_mod(a, b, n):
    return _pick(n).add_mod(a, b, n)


def sub_mod(a, b, n):
    return _pick(n).sub_mod(a, b, n)


def scale_mod(a, c, n):
    return _pick(n).scale_mod(a, c, n)
