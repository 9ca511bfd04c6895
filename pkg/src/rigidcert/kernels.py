"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. The compiled path works on int64 and retries on the
arbitrary-precision path when an operand or an intermediate leaves that range,
so results never depend on which backend ran.
"""

from __future__ import annotations

import contextlib

import numpy as np

from . import _pykernels as python

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

HAVE_COMPILED = compiled is not None
_active = "compiled" if HAVE_COMPILED else "python"


def backend() -> str:
    """Name of the kernel backend currently in use."""
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in ("python", "compiled"):
        raise ValueError(f"unknown kernel backend {name!r}")
    if name == "compiled" and not HAVE_COMPILED:
        raise RuntimeError("compiled kernels are not available; build the extension first")
    _active = name


@contextlib.contextmanager
def using(name: str):
    """Temporarily switch kernel backend (benchmarks and tests)."""
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _as_int64(a):
    # object -> int64 raises OverflowError for out-of-range Python ints
    return np.ascontiguousarray(a).astype(np.int64)


def matmul(a, b):
    """Integer matrix product of two object arrays."""
    if _active == "compiled":
        try:
            return compiled.matmul(_as_int64(a), _as_int64(b)).astype(object)
        except OverflowError:
            pass
    return python.matmul(a, b)


def rref(a):
    """Fraction-free reduced row echelon form of an integer object array.

    Returns ``(rows, pivots)``; see :func:`rigidcert._pykernels.rref`.
    """
    if _active == "compiled":
        try:
            rows, pivots = compiled.rref(_as_int64(a))
            return rows.astype(object), pivots
        except OverflowError:
            pass
    return python.rref(a)


def convolve(a_perms, a_coef, b_perms, b_coef, size):
    """Dense group-algebra product indexed by permutation rank (object array)."""
    if _active == "compiled" and a_perms.shape[1] <= 20:
        try:
            return compiled.convolve(
                _as_int64(a_perms), _as_int64(a_coef), _as_int64(b_perms), _as_int64(b_coef), size
            ).astype(object)
        except OverflowError:
            pass
    return python.convolve(a_perms, a_coef, b_perms, b_coef, size)
