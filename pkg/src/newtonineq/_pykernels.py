"""Pure-Python hot kernels; reference semantics for the compiled twins."""
from __future__ import annotations

import math

from .scalar import canonical

BACKEND = "python"

_U64 = (1 << 64) - 1


def mul_terms(t1: dict, t2: dict, nvars: int, bound=None) -> dict:
    """Sparse product of packed-key term maps (see ``mpoly``)."""
    if len(t1) < len(t2):
        t1, t2 = t2, t1
    out: dict = {}
    get = out.get
    items2 = list(t2.items())
    if bound is None:
        for k1, c1 in t1.items():
            for k2, c2 in items2:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
    else:
        offset, guard = bound.offset, bound.guard
        for k1, c1 in t1.items():
            if (k1 + offset) & guard:
                continue
            for k2, c2 in items2:
                k = k1 + k2
                if (k + offset) & guard:
                    continue
                out[k] = get(k, 0) + c1 * c2
    return {k: canonical(c) for k, c in out.items() if c}


# --- splitmix64 ------------------------------------------------------------------

def splitmix64(state: int) -> tuple[int, int]:
    """Advance ``state``; return ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _U64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _U64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _U64
    return state, z ^ (z >> 31)


def esf_float(a, b, mu) -> list:
    """e_0..e_n in double precision, same fold order as the exact path."""
    e = [0.0] * (2 * len(a) + len(mu) + 1)
    e[0] = 1.0
    top = 0
    for ai, bi in zip(a, b):
        two_a = 2.0 * ai
        s = ai * ai + bi * bi
        top += 2
        for i in range(top, 0, -1):
            acc = e[i] + two_a * e[i - 1]
            if i >= 2:
                acc = acc + s * e[i - 2]
            e[i] = acc
    for m in mu:
        top += 1
        for i in range(top, 0, -1):
            e[i] = e[i] + m * e[i - 1]
    return e


def ratio_float(a, b, mu, lhs, rhs, const: float) -> float:
    e = esf_float(a, b, mu)
    n = len(e) - 1

    def at(i):
        return e[i] if 0 <= i <= n else 0.0

    den = const * (at(rhs[0]) * at(rhs[1]))
    if not den > 0.0:
        return math.inf
    return (at(lhs[0]) * at(lhs[1])) / den


LO = 2.0**-100
HI = 2.0**100


def descend(x, m: int, s: int, lhs, rhs, const: float, iters: int,
            delta_start: float, delta_end: float, seed: int, stride: int = 0):
    """Coordinate-wise multiplicative descent on x = (a_1..a_m, b_1..b_m, mu_1..mu_s).

    Each step multiplies one coordinate by ``1 +- delta``, delta annealed
    geometrically from ``delta_start`` to ``delta_end``; strict improvements
    are kept.  Returns ``(x, best, accepted, trace)``, where ``trace`` holds
    the best value every ``stride`` iterations (empty when stride is 0).
    """
    x = [float(v) for v in x]
    dim = len(x)
    state = seed & _U64
    best = ratio_float(x[:m], x[m:2 * m], x[2 * m:], lhs, rhs, const)
    accepted = 0
    trace = []
    if dim == 0:
        return x, best, accepted, trace
    log_ratio = math.log(delta_end / delta_start) / max(iters - 1, 1)
    for t in range(iters):
        delta = delta_start * math.exp(log_ratio * t)
        state, r = splitmix64(state)
        j = r % dim
        factor = 1.0 + delta if (r >> 32) & 1 else 1.0 - delta
        old = x[j]
        new = old * factor
        if new < LO:
            new = LO
        elif new > HI:
            new = HI
        x[j] = new
        val = ratio_float(x[:m], x[m:2 * m], x[2 * m:], lhs, rhs, const)
        if val < best:
            best = val
            accepted += 1
        else:
            x[j] = old
        if stride and (t + 1) % stride == 0:
            trace.append(best)
    return x, best, accepted, trace
