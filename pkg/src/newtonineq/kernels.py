"""Hot-kernel dispatch: compiled ``_ckernels`` when built, else ``_pykernels``.

Set ``NEWTONINEQ_KERNELS=python`` to force the pure-Python path.
"""
from __future__ import annotations

import os

from . import _pykernels

_c = None
if os.environ.get("NEWTONINEQ_KERNELS", "").lower() != "python":
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = _c.BACKEND if _c is not None else _pykernels.BACKEND

# below this many term pairs the packing overhead outweighs the C loop
C_MUL_THRESHOLD = 4096
_I64 = 1 << 62


def _exponent_matrix(terms: dict, nvars: int):
    import numpy as np

    width = 2 * nvars
    buf = b"".join(k.to_bytes(width, "little") for k in terms)
    return np.frombuffer(buf, dtype="<u2").reshape(len(terms), nvars).astype(np.int64)


def _mul_compiled(t1: dict, t2: dict, nvars: int, bound):
    """Compact-key C product, or None when the layout does not fit int64."""
    import numpy as np

    e1 = _exponent_matrix(t1, nvars)
    e2 = _exponent_matrix(t2, nvars)
    # one spare bit per field carries the bound's guard flag
    spare = 1 if bound is not None else 0
    widths = [max(int(w).bit_length(), 1) + spare for w in e1.max(axis=0) + e2.max(axis=0)]
    if sum(widths) > 62:
        return None
    shifts = np.concatenate(([0], np.cumsum(widths[:-1]))).astype(np.int64)
    offset = guard = 0
    if bound is not None:
        for i, w in enumerate(widths):
            top = (1 << (w - 1)) - 1
            offset |= (top - min(bound.exps[i], top)) << int(shifts[i])
            guard |= (1 << (w - 1)) << int(shifts[i])
    k1 = (e1 << shifts).sum(axis=1)
    k2 = (e2 << shifts).sum(axis=1)
    c1 = np.fromiter(t1.values(), dtype=np.int64, count=len(t1))
    c2 = np.fromiter(t2.values(), dtype=np.int64, count=len(t2))
    try:
        keys, coefs = _c.mul_packed(k1, c1, k2, c2, offset, guard, bound is not None)
    except OverflowError:
        return None
    masks = np.array([(1 << w) - 1 for w in widths], dtype=np.int64)
    exps = ((keys[:, None] >> shifts) & masks).astype("<u2")
    raw = exps.tobytes()
    width = 2 * nvars
    from_bytes = int.from_bytes
    return {
        from_bytes(raw[i * width:(i + 1) * width], "little"): c
        for i, c in enumerate(coefs.tolist())
    }


def mul_terms(t1: dict, t2: dict, nvars: int, bound=None) -> dict:
    if (
        _c is not None
        and nvars
        and len(t1) * len(t2) >= C_MUL_THRESHOLD
        and all(type(c) is int and -_I64 < c < _I64 for c in t1.values())
        and all(type(c) is int and -_I64 < c < _I64 for c in t2.values())
    ):
        out = _mul_compiled(t1, t2, nvars, bound)
        if out is not None:
            return out
    return _pykernels.mul_terms(t1, t2, nvars, bound)


def _impl():
    return _c if _c is not None else _pykernels


def esf_float(a, b, mu):
    return _impl().esf_float(a, b, mu)


def ratio_float(a, b, mu, lhs, rhs, const):
    return _impl().ratio_float(a, b, mu, lhs, rhs, const)


def descend(x, m, s, lhs, rhs, const, iters, delta_start, delta_end, seed, stride=0):
    return _impl().descend(x, m, s, lhs, rhs, const, iters, delta_start, delta_end, seed, stride)
