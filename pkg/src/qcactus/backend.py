"""Kernel backend selection.

The compiled extension ``qcactus._kernels`` is used when it imports; the
pure numpy/Python module ``qcactus._fallback`` provides identical functions
otherwise.  Setting ``QCACTUS_PURE=1`` in the environment forces the fallback.
"""

import os

from . import _fallback

NAME = "python"
_impl = _fallback

if os.environ.get("QCACTUS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        NAME = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _fallback


def laurent_matmul(a, b):
    return _impl.laurent_matmul(a, b)


def kl_table(lengths, left_mul, left_desc, bruhat, maxdeg):
    """Kazhdan–Lusztig polynomials ``P[x, w, d]`` (see ``_fallback.kl_table``)."""
    return _impl.kl_table(lengths, left_mul, left_desc, bruhat, maxdeg)


def available():
    """Names of the backends that can be loaded in this environment."""
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401

        names.append("cython")
    except ImportError:  # pragma: no cover
        pass
    return names


def module(name):
    if name == "python":
        return _fallback
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
