"""Symbolic expansions over a list of conjugate pairs and reals.

Variables are a1..am, b1..bm (the pair ``a_i +- i b_i``) followed by
mu1..mus (real entries).  Full expansions are guarded by a size bound
(``NEWTONINEQ_MAX_N``, default 10) on n = 2m + s; expansions truncated to
a monomial bound are exempt, since they only track divisors of one target.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .mpoly import Bound, MPoly, sum_polys, variable_names
from .scalar import binomial

DEFAULT_MAX_N = 10


class SizeBoundError(ValueError):
    """Requested expansion exceeds the configured size bound."""


def max_n() -> int:
    return int(os.environ.get("NEWTONINEQ_MAX_N", DEFAULT_MAX_N))


def _guard(n: int, bound: Bound | None) -> None:
    if bound is None and n > max_n():
        raise SizeBoundError(f"n={n} exceeds symbolic size bound {max_n()} (set NEWTONINEQ_MAX_N)")


def subsets(m: int, size: int):
    """All size-``size`` subsets of {0..m-1}, each once, as sorted tuples."""
    return combinations(range(m), size)


def esf_of_polys(polys: Sequence[MPoly], upto: int, variables, bound: Bound | None = None) -> list[MPoly]:
    """e_0..e_upto of a list whose entries are polynomials."""
    e = [MPoly.constant(variables, 1)] + [MPoly.zero(variables) for _ in range(upto)]
    for p in polys:
        for i in range(upto, 0, -1):
            if e[i - 1]:
                e[i] = e[i] + e[i - 1].mul(p, bound)
    return e


def symbolic_esf(m: int, s: int = 0, bound: Bound | None = None) -> list[MPoly]:
    """Symbolic e_0..e_n, n = 2m + s, via the pair and real recurrences."""
    if m < 0 or s < 0 or m + s < 1:
        raise ValueError("need m + s >= 1")
    n = 2 * m + s
    _guard(n, bound)
    V = variable_names(m, s)
    e = [MPoly.constant(V, 1)]
    for i in range(1, m + 1):
        a = MPoly.var(V, f"a{i}")
        b = MPoly.var(V, f"b{i}")
        two_a = a.scale(2)
        sq = a * a + b * b
        if bound is not None:
            two_a, sq = two_a.truncate(bound), sq.truncate(bound)
        prev = e
        e = prev + [MPoly.zero(V), MPoly.zero(V)]
        for j in range(len(e) - 1, 0, -1):
            acc = prev[j] if j < len(prev) else MPoly.zero(V)
            if j - 1 < len(prev):
                acc = acc + prev[j - 1].mul(two_a, bound)
            if j >= 2:
                acc = acc + prev[j - 2].mul(sq, bound)
            e[j] = acc
    for i in range(1, s + 1):
        mu = MPoly.var(V, f"mu{i}")
        prev = e
        e = prev + [MPoly.zero(V)]
        for j in range(len(e) - 1, 0, -1):
            acc = prev[j] if j < len(prev) else MPoly.zero(V)
            e[j] = acc + prev[j - 1].mul(mu, bound)
    return e


def _at(e: list[MPoly], i: int) -> MPoly:
    return e[i] if 0 <= i < len(e) else MPoly.zero(e[0].variables)


def build_f(m: int, s: int, k: int, l: int) -> MPoly:
    """e_k e_l - e_{k-1} e_{l+1} for k, l of different parity, 1 <= k < l <= n-1."""
    n = 2 * m + s
    if (k - l) % 2 == 0 or not 1 <= k < l <= n - 1:
        raise ValueError(f"f needs 1 <= k < l <= n-1 of different parity (n={n}, k={k}, l={l})")
    e = symbolic_esf(m, s)
    return _at(e, k) * _at(e, l) - _at(e, k - 1) * _at(e, l + 1)


def build_g(m: int, s: int, k: int, l: int) -> MPoly:
    """e_k e_l - e_{k-2} e_{l+2} for k, l of the same parity, 2 <= k <= l <= n-2."""
    n = 2 * m + s
    if (k - l) % 2 or not 2 <= k <= l <= n - 2:
        raise ValueError(f"g needs 2 <= k <= l <= n-2 of the same parity (n={n}, k={k}, l={l})")
    e = symbolic_esf(m, s)
    return _at(e, k) * _at(e, l) - _at(e, k - 2) * _at(e, l + 2)


def build_p_gap(m: int, s: int, k: int, l: int) -> MPoly:
    """P_k P_l - P_{k-2} P_{l+2}: the P-normalised counterpart of ``build_g``.

    Holds as an inequality, yet is not a positive-coefficient polynomial.
    """
    from .esf import p_binomial

    n = 2 * m + s
    if (k - l) % 2 or not 2 <= k <= l <= n - 2:
        raise ValueError("P-gap needs same-parity 2 <= k <= l <= n-2")
    e = symbolic_esf(m, s)

    def P(i):
        return _at(e, i).scale(Fraction(1, p_binomial(n, i)))

    return P(k) * P(l) - P(k - 2) * P(l + 2)


@dataclass
class PositivityVerdict:
    passed: bool
    mode: str
    n_terms: int
    offenders: list = field(default_factory=list)


def positivity_check(p: MPoly, mode: str = "strict") -> PositivityVerdict:
    """strict: a nonzero polynomial with every coefficient > 0; nonneg: none < 0."""
    if mode not in ("strict", "nonneg"):
        raise ValueError(f"unknown positivity mode {mode!r}")
    offenders = [(exps, c) for exps, c in p.sorted_items() if c < 0]
    passed = not offenders and (mode == "nonneg" or not p.is_zero())
    return PositivityVerdict(passed, mode, len(p), offenders)


# --- Theta lower bound ------------------------------------------------------------

def _pair_vars(m: int):
    V = variable_names(m, 0)
    a = [MPoly.var(V, f"a{i}") for i in range(1, m + 1)]
    b = [MPoly.var(V, f"b{i}") for i in range(1, m + 1)]
    return V, a, b


def _theta(m: int, k: int, bound: Bound | None = None) -> MPoly:
    V, a, b = _pair_vars(m)
    v = [a[i] * a[i] - b[i] * b[i] for i in range(m)]
    ab2 = [a[i] * a[i] * b[i] * b[i] for i in range(m)]
    if bound is not None:
        v = [p.truncate(bound) for p in v]
        ab2 = [p.truncate(bound) for p in ab2]
    parts = []
    for r in range(k):
        for S in subsets(m, r):
            rest = [v[i] for i in range(m) if i not in S]
            ek = esf_of_polys(rest, k - r, V, bound)[k - r]
            if ek.is_zero():
                continue
            term = ek.mul(ek, bound)
            for i in S:
                term = term.mul(ab2[i], bound)
            parts.append(term.scale(4**r))
    return sum_polys(parts, V)


def build_theta(m: int, k: int) -> MPoly:
    """Subset-sum lower bound for e_{2k}^2 - e_{2k-1} e_{2k+1} (pairs only)."""
    if not 1 <= k <= m - 1:
        raise ValueError(f"theta needs 1 <= k <= m-1 (m={m}, k={k})")
    _guard(2 * m, None)
    return _theta(m, k)


def _gap(m: int, k: int, bound: Bound | None = None) -> tuple[MPoly, MPoly, MPoly, MPoly]:
    """(e_{2k}^2, e_{2k-1} e_{2k+1}, Theta, gap) for m pairs."""
    e = symbolic_esf(m, 0, bound)
    sq = _at(e, 2 * k).mul(_at(e, 2 * k), bound)
    cross = _at(e, 2 * k - 1).mul(_at(e, 2 * k + 1), bound)
    theta = _theta(m, k, bound)
    return sq, cross, theta, sq - cross - theta


def gap_polynomial(m: int, k: int) -> MPoly:
    """e_{2k}^2 - e_{2k-1} e_{2k+1} - Theta."""
    if not 1 <= k <= m - 1:
        raise ValueError(f"gap needs 1 <= k <= m-1 (m={m}, k={k})")
    return _gap(m, k)[3]


def t_star_exponents(m: int, p: int, k: int) -> tuple[int, ...]:
    """Exponent vector of prod_{i<=p} a_i^2 * prod_{p<i<=2k} b_i^2."""
    a = [2 if i < p else 0 for i in range(m)]
    b = [2 if p <= i < 2 * k else 0 for i in range(m)]
    return tuple(a + b)


def t_exponents(m: int, k: int) -> tuple[int, ...]:
    """Exponent vector of prod_{i<=k} a_i^2 b_i^2."""
    a = [2 if i < k else 0 for i in range(m)]
    return tuple(a + a)


def in_t_star_orbit(exps: Sequence[int], m: int) -> bool:
    """T* up to relabelling: each pair contributes a_i^2, b_i^2 or nothing."""
    shapes = [(exps[i], exps[m + i]) for i in range(m)]
    return all(sh in ((2, 0), (0, 2), (0, 0)) for sh in shapes) and any(sh != (0, 0) for sh in shapes)


@dataclass
class ThetaGapReport:
    m: int
    k: int
    passed: bool
    n_terms: int
    negatives: list
    t_star_orbit_terms: list
    t_star_by_p: dict
    t_star_formula_mismatch: list


def theta_gap_check(m: int, k: int) -> ThetaGapReport:
    """Coefficient inventory of e_{2k}^2 - e_{2k-1}e_{2k+1} - Theta.

    Passes when no coefficient is negative and, for m = 2k, each canonical
    T* coefficient equals ``coeff_T_star``.  Absent monomials have
    coefficient zero; off the T* orbit every present term is positive.
    """
    gap = gap_polynomial(m, k)
    negatives = [(e, c) for e, c in gap.sorted_items() if c < 0]
    orbit = [(e, c) for e, c in gap.sorted_items() if in_t_star_orbit(e, m)]
    by_p: dict = {}
    mismatch = []
    if m == 2 * k:
        for p in range(2 * k + 1):
            got = gap.coefficient(t_star_exponents(m, p, k))
            by_p[p] = got
            if got != coeff_T_star(k, p):
                mismatch.append((p, got, coeff_T_star(k, p)))
    return ThetaGapReport(m, k, not negatives and not mismatch, len(gap), negatives, orbit, by_p, mismatch)


# --- subset expansions of e_k ------------------------------------------------------------

@dataclass
class IdentityVerdict:
    m: int
    k: int
    even_ok: bool
    odd_ok: bool | None

    @property
    def passed(self) -> bool:
        return self.even_ok and self.odd_ok is not False


def _expansion_rhs(m: int, k: int, odd: bool) -> MPoly:
    V, a, b = _pair_vars(m)
    w = [a[i] * a[i] + b[i] * b[i] for i in range(m)]
    parts = []
    rmax = k - 1 if odd else k
    for r in range(rmax + 1):
        size = 2 * r + 1 if odd else 2 * r
        order = k - r - 1 if odd else k - r
        weight = 2 ** (2 * r + 1) if odd else 4**r
        for S in subsets(m, size):
            rest = [w[i] for i in range(m) if i not in S]
            ek = esf_of_polys(rest, order, V)[order]
            if ek.is_zero():
                continue
            term = ek
            for i in S:
                term = term * a[i]
            parts.append(term.scale(weight))
    return sum_polys(parts, V)


def lemma24_rhs_even(m: int, k: int) -> MPoly:
    """sum_r 4^r sum_{|S|=2r} prod_S a_i * e_{k-r}(a_i^2+b_i^2 : i not in S)."""
    return _expansion_rhs(m, k, odd=False)


def lemma24_rhs_odd(m: int, k: int) -> MPoly:
    """sum_r 2^{2r+1} sum_{|S|=2r+1} prod_S a_i * e_{k-r-1}(a_i^2+b_i^2 : i not in S)."""
    return _expansion_rhs(m, k, odd=True)


def lemma24_check(m: int, k: int) -> IdentityVerdict:
    if not 0 <= k <= m:
        raise ValueError(f"expansion needs 0 <= k <= m (m={m}, k={k})")
    e = symbolic_esf(m, 0)
    even_ok = (e[2 * k] - lemma24_rhs_even(m, k)).is_zero()
    odd_ok = None
    if k >= 1:
        odd_ok = (e[2 * k - 1] - lemma24_rhs_odd(m, k)).is_zero()
    return IdentityVerdict(m, k, even_ok, odd_ok)


# --- closed-form coefficients ------------------------------------------------------

def coeff_T(k: int) -> tuple[int, int, int]:
    """(coef of T in gap, in Theta, in e_{2k}^2) from the closed forms."""
    if k < 1:
        raise ValueError("k >= 1 required")
    return 4**k, 2**k * (1 - 2**k), 2**k


def coeff_T_symbolic(m: int, k: int) -> tuple[int, int, int]:
    """Same triple read off the expanded polynomials (m >= k)."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    target = t_exponents(m, k)
    bound = Bound(target)
    sq, cross, theta, gap = _gap(m, k, bound)
    return gap.coefficient(target), theta.coefficient(target), sq.coefficient(target)


def coeff_T_star(k: int, p: int) -> int:
    """Closed-form coefficient of T* in the gap polynomial for m = 2k."""
    if k < 1 or not 0 <= p <= 2 * k:
        raise ValueError(f"need k >= 1 and 0 <= p <= 2k (k={k}, p={p})")
    first = sum(16**r * binomial(p, 2 * r) * binomial(2 * (k - r), k - r) for r in range(p // 2 + 1))
    second = sum(
        16**r * binomial(p, 2 * r + 1) * binomial(2 * (k - r) - 1, k - r)
        for r in range((p - 1) // 2 + 1)
    ) if p >= 1 else 0
    return first - 4 * second - (-1) ** p * binomial(2 * k, k)


def coeff_T_star_symbolic(k: int, p: int) -> int:
    """T* coefficient extracted from the expansion truncated to divisors of T*."""
    m = 2 * k
    target = t_star_exponents(m, p, k)
    *_, gap = _gap(m, k, Bound(target))
    return gap.coefficient(target)


# --- binomial sums and omega ------------------------------------------------------------

@dataclass
class SumIdentityVerdict:
    q_max: int
    passed: bool
    failures: list


def binom_sum_identities(q_max: int) -> SumIdentityVerdict:
    """The four explicitly summable sums of 4^r C(.,.) for q = 0..q_max."""
    failures = []
    for q in range(q_max + 1):
        odd_n, even_n = 2 * q + 1, 2 * q
        checks = [
            ("odd-even", sum(4**r * binomial(odd_n, 2 * r) for r in range(q + 1)), Fraction(3**odd_n - 1, 2)),
            ("odd-odd", sum(4**r * binomial(odd_n, 2 * r + 1) for r in range(q + 1)), Fraction(3**odd_n + 1, 4)),
            ("even-even", sum(4**r * binomial(even_n, 2 * r) for r in range(q + 1)), Fraction(3**even_n + 1, 2)),
            ("even-odd", sum(4**r * binomial(even_n, 2 * r + 1) for r in range(q)), Fraction(3**even_n - 1, 4)),
        ]
        failures.extend((q, name, got, want) for name, got, want in checks if got != want)
    return SumIdentityVerdict(q_max, not failures, failures)


def omega(k: int, r: int) -> Fraction:
    return Fraction(4**r * binomial(2 * (k - r), k - r), binomial(2 * k, k))


def omega_ratio_check(k: int, q: int) -> bool:
    """omega(r+1)/omega(r) == 1 + 1/(2(k-r)-1) > 1 for r = 0..q-1."""
    if not 1 <= q <= k - 1:
        raise ValueError(f"need 1 <= q <= k-1 (k={k}, q={q})")
    for r in range(q):
        ratio = omega(k, r + 1) / omega(k, r)
        if ratio != 1 + Fraction(1, 2 * (k - r) - 1) or not ratio > 1:
            return False
    return True
