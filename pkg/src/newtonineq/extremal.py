"""Extremal and equality examples, plus a reproducible random list generator."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .esf import SelfConjugateList, WedgeSpec
from .scalar import canonical, is_perfect_square, parse_rational, rational_sqrt

PROFILES = ("uniform-box", "boundary-heavy", "integer-small")
_WEDGE_TRIES = 64


def gen_example_21(m: int) -> SelfConjugateList:
    """m copies of the pair (i, -i): every odd e vanishes."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return SelfConjugateList(pairs=[(0, 1)] * m)


def gen_example_25(m: int, eps) -> SelfConjugateList:
    """m pairs (0, sqrt(eps)) and the real 1; e_{2i} = e_{2i+1} = C(m, i) eps^i.

    The pairs are stored through b^2 = eps, so eps need not be a square.
    """
    eps = parse_rational(eps)
    if m < 1 or eps <= 0:
        raise ValueError("need m >= 1 and eps > 0")
    return SelfConjugateList(sq_pairs=[(0, eps)] * m, reals=[1])


def gen_example_31(m: int) -> SelfConjugateList:
    """Same list as :func:`gen_example_21`; here every P_{2i} equals 1."""
    return gen_example_21(m)


def gen_example_32(m: int, tau) -> SelfConjugateList:
    """m-1 pairs (0, 1) and two equal reals t, t with t^2 = tau.

    A perfect-square tau gives two honest reals; otherwise the pair (t, t)
    is carried formally through tau.
    """
    tau = parse_rational(tau)
    if m < 2 or tau < 0:
        raise ValueError("need m >= 2 and tau >= 0")
    pairs = [(0, 1)] * (m - 1)
    if is_perfect_square(tau):
        t = rational_sqrt(tau)
        return SelfConjugateList(pairs=pairs, reals=[t, t])
    return SelfConjugateList(pairs=pairs, tau=tau)


# --- random lists ------------------------------------------------------------------

def _generator(n: int, seed: int, profile: str, wedge: WedgeSpec | None) -> np.random.Generator:
    lam = Fraction(wedge.lam) if wedge is not None else Fraction(-1)
    words = [seed & 0xFFFFFFFF, seed >> 32 & 0xFFFFFFFF, n, PROFILES.index(profile),
             lam.numerator & 0xFFFFFFFF, lam.denominator & 0xFFFFFFFF]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(words)))


def _draw(rng: np.random.Generator, profile: str, zero_p: float = 0.0) -> Fraction:
    if zero_p and rng.random() < zero_p:
        return Fraction(0)
    if profile == "integer-small":
        return Fraction(int(rng.integers(0, 4)))
    return Fraction(int(rng.integers(0, 41)), int(rng.integers(1, 9)))


def _pair(rng, profile: str) -> tuple[Fraction, Fraction]:
    if profile == "boundary-heavy":
        a = Fraction(0) if rng.random() < 0.6 else _draw(rng, profile, 0.1)
        b = _draw(rng, profile, 0.15)
        return a, b
    return _draw(rng, profile), _draw(rng, profile)


def random_list(n: int, seed: int, profile: str = "uniform-box", wedge: WedgeSpec | None = None) -> SelfConjugateList:
    """Deterministic random list of length n.

    ``boundary-heavy`` favours zeros and purely imaginary pairs and always
    contains at least one pair (0, b) with b > 0 when n >= 2.  With a wedge,
    pairs are resampled until they lie inside it; after a bounded number of
    tries the pair is made real (b = 0), which is always inside.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rng = _generator(n, seed, profile, wedge)
    lo = 1 if profile == "boundary-heavy" and n >= 2 else 0
    # a quarter of even-length lists are pair-only; boundary-heavy lists are
    # sometimes purely imaginary (e_1 = 0)
    if n % 2 == 0 and rng.random() < 0.25:
        m = n // 2
    else:
        m = int(rng.integers(lo, n // 2 + 1))
    imaginary_only = profile == "boundary-heavy" and wedge is None and rng.random() < 0.2
    pairs = []
    for i in range(m):
        if i == 0 and lo:
            a, b = Fraction(0), _draw(rng, "uniform-box") + Fraction(1, 8)
        else:
            a, b = _pair(rng, profile)
        if imaginary_only:
            a = Fraction(0)
        if wedge is not None:
            lam = wedge.lam
            tries = 0
            while a * a < lam * (a * a + b * b):
                tries += 1
                if tries >= _WEDGE_TRIES:
                    b = Fraction(0)
                    break
                a, b = _pair(rng, profile)
        pairs.append((canonical(a), canonical(b)))
    zero_p = 0.3 if profile == "boundary-heavy" else 0.0
    reals = [Fraction(0) if imaginary_only else _draw(rng, profile, zero_p) for _ in range(n - 2 * m)]
    return SelfConjugateList(pairs=pairs, reals=[canonical(r) for r in reals])


def corpus(count: int, n_max: int, seed: int, profiles=PROFILES, wedge: WedgeSpec | None = None, n_min: int = 1):
    """``count`` lists cycling through profiles and lengths n_min..n_max."""
    out = []
    span = n_max - n_min + 1
    for i in range(count):
        n = n_min + i % span
        profile = profiles[(i // span) % len(profiles)]
        out.append(random_list(n, seed * 1_000_003 + i, profile, wedge))
    return out
