"""Exact univariate polynomials, Sturm counting and interlacing checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .esf import EsfSequence, SelfConjugateList, elem_sym_all


class NotAllRealError(ValueError):
    """Polynomial has non-real roots."""


class UniPoly:
    """Rational coefficients, lowest degree first; trailing zeros stripped."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def from_high(cls, coeffs: Sequence) -> "UniPoly":
        return cls(list(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        if not self.c:
            return "UniPoly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            if self.c[i]:
                terms.append(f"{self.c[i]}*x^{i}" if i else f"{self.c[i]}")
        return "UniPoly(" + " + ".join(terms) + ")"

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.c), len(other.c))
        return UniPoly([
            (self.c[i] if i < len(self.c) else 0) + (other.c[i] if i < len(other.c) else 0)
            for i in range(n)
        ])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-x for x in self.c])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.c or not other.c:
            return UniPoly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return UniPoly(out)

    def scale(self, k) -> "UniPoly":
        return UniPoly([k * x for x in self.c])

    def monic(self) -> "UniPoly":
        return self.scale(1 / self.lead()) if self.c else self

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = other.degree
        if self.degree < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        inv = 1 / other.lead()
        for i in range(self.degree - dq, -1, -1):
            q = rem[i + dq] * inv
            quot[i] = q
            if q:
                for j, y in enumerate(other.c):
                    rem[i + j] -= q * y
        return UniPoly(quot), UniPoly(rem[:dq])

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def derivative(self) -> "UniPoly":
        return UniPoly([i * x for i, x in enumerate(self.c)][1:])

    def cauchy_bound(self) -> Fraction:
        """Every real root lies strictly inside (-B, B)."""
        lead = abs(self.lead())
        return 1 + max((abs(x) / lead for x in self.c[:-1]), default=Fraction(0))


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd (zero only when both are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic square-free factors with multiplicities."""
    if p.degree < 1:
        return []
    p = p.monic()
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a if not d.is_zero() else UniPoly()
        if a.degree > 0:
            out.append((a.monic(), i))
        d = c - b.derivative()
        i += 1
    return out


# Sturm chains are kept as primitive integer coefficient lists (lowest degree
# first).  Positive rescaling leaves every sign, hence every count, unchanged.

def _primitive(coeffs) -> list[int]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g > 1 else ints


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _neg_prem(a: list[int], b: list[int]) -> list[int]:
    """Positive multiple of ``-(a mod b)``, made primitive."""
    r = list(a)
    lc = b[-1]
    db = len(b) - 1
    negative = False
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        top = r[-1]
        r = [lc * v for v in r]
        if lc < 0:
            negative = not negative
        for i, bv in enumerate(b):
            r[i + shift] -= top * bv
        _strip(r)
    if not negative:
        r = [-v for v in r]
    g = 0
    for v in r:
        g = math.gcd(g, v)
    return [v // g for v in r] if g > 1 else r


def _int_chain(p: UniPoly) -> list[list[int]]:
    f = _primitive(squarefree_part(p).c)
    if len(f) <= 1:
        return [f] if f else []
    df = _primitive([Fraction(i * c) for i, c in enumerate(f) if i])
    chain = [f, df]
    while len(chain[-1]) > 1:
        r = _neg_prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(r)
    return chain


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of the square-free part (each member up to a positive factor)."""
    return [UniPoly(c) for c in _int_chain(p)]


def _sign_at(c: list[int], num: int, den: int) -> int:
    """Sign of c(num/den) for den > 0, by homogeneous Horner."""
    acc = 0
    q = 1
    for v in reversed(c):
        acc = acc * num + v * q
        q *= den
    return (acc > 0) - (acc < 0)


def _variations_int(chain: list[list[int]], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    prev = 0
    count = 0
    for c in chain:
        s = _sign_at(c, num, den)
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _variations(chain: list[UniPoly], x) -> int:
    return _variations_int([_primitive(q.c) for q in chain], Fraction(x))


def _count(chain: list[list[int]], lo: Fraction, hi: Fraction) -> int:
    return _variations_int(chain, lo) - _variations_int(chain, hi)


def sturm_count(p: UniPoly, lo, hi, chain: list[UniPoly] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root count")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    ichain = [_primitive(q.c) for q in chain] if chain is not None else _int_chain(p)
    return _count(ichain, lo, hi)


def distinct_real_roots(p: UniPoly) -> int:
    B = p.cauchy_bound()
    return sturm_count(p, -B, B)


def all_roots_real(p: UniPoly) -> bool:
    if p.degree <= 0:
        return True
    f = squarefree_part(p)
    return distinct_real_roots(f) == f.degree


@dataclass
class RootIsolation:
    intervals: list  # [(lo, hi)] half-open (lo, hi], sorted, disjoint
    multiplicities: list
    count: int  # real roots counted with multiplicity


def isolate_roots(p: UniPoly) -> RootIsolation:
    """Bisect (-B, B] into intervals holding exactly one distinct root each."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if not all_roots_real(p):
        raise NotAllRealError(f"{p!r} has non-real roots")
    if p.degree <= 0:
        return RootIsolation([], [], 0)
    f = squarefree_part(p)
    chain = _int_chain(f)
    B = p.cauchy_bound()
    stack = [(-B, B)]
    found = []
    while stack:
        lo, hi = stack.pop()
        cnt = _count(chain, lo, hi)
        if cnt == 0:
            continue
        if cnt == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    found.sort()
    factors = squarefree_decomposition(p)
    mults = []
    factor_chains = [(_int_chain(g), mult) for g, mult in factors]
    for lo, hi in found:
        for gc, mult in factor_chains:
            if _count(gc, lo, hi) == 1:
                mults.append(mult)
                break
    return RootIsolation(found, mults, sum(mults))


# --- polynomials built from a list -------------------------------------------------------

def char_poly(seq: EsfSequence) -> UniPoly:
    """x^n + e_1 x^{n-1} + ... + e_n (roots -x_i)."""
    if seq.odd_formal:
        raise ValueError("formal sequences have no rational characteristic polynomial")
    return UniPoly.from_high([seq[k] for k in range(seq.n + 1)])


def even_odd_parts(p: UniPoly) -> tuple[UniPoly, UniPoly]:
    """x^n - a2 x^{n-2} + a4 x^{n-4} - ...  and  a1 x^{n-1} - a3 x^{n-3} + ...

    where ``p = x^n + a1 x^{n-1} + ... + an`` is monic.
    """
    if p.is_zero() or p.lead() != 1:
        raise ValueError("even_odd_parts expects a monic polynomial")
    n = p.degree
    a = [p.c[n - k] for k in range(n + 1)]
    even = [Fraction(0)] * (n + 1)
    odd = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            even[n - k] = sign * a[k]
        else:
            odd[n - k] = sign * a[k]
    return UniPoly(even), UniPoly(odd)


def w_substitution(seq: EsfSequence) -> tuple[UniPoly, UniPoly | None]:
    """Even w-polynomial sum (-1)^r e_{2r} w^{M-r} and, when e_1 > 0,
    the odd one sum (-1)^r (e_{2r+1}/e_1) w^{M'-r}.

    M = floor(n/2), M' = ceil(n/2) - 1.
    """
    n = seq.n
    M = n // 2
    even = UniPoly.from_high([(-1) ** r * seq[2 * r] for r in range(M + 1)])
    e1 = seq[1] if n >= 1 else 0
    if not e1 > 0:
        return even, None
    Mp = (n + 1) // 2 - 1
    odd = UniPoly.from_high([Fraction((-1) ** r * seq[2 * r + 1], 1) / e1 for r in range(Mp + 1)])
    return even, odd


# --- interlacing ------------------------------------------------------------------------

def interlace(p: UniPoly, q: UniPoly) -> bool:
    """Weak interlacing of real-rooted ``p`` (deg d) and ``q`` (deg d or d-1).

    Common roots are divided out first; what remains must be square-free
    and strictly alternate.
    """
    g = poly_gcd(p, q)
    p1, q1 = p // g, q // g
    if abs(p1.degree - q1.degree) > 1:
        return False
    for f in (p1, q1):
        if f.degree > 0 and poly_gcd(f, f.derivative()).degree > 0:
            return False
    prod = p1 * q1
    if prod.degree <= 0:
        return True
    iso = isolate_roots(prod)
    chain_p = _int_chain(p1) if p1.degree > 0 else None
    labels = []
    for lo, hi in iso.intervals:
        in_p = chain_p is not None and _count(chain_p, lo, hi) == 1
        labels.append("p" if in_p else "q")
    if any(u == v for u, v in zip(labels, labels[1:])):
        return False
    # the longer list must occupy both ends
    if p1.degree > q1.degree:
        return labels[0] == "p" and labels[-1] == "p"
    if q1.degree > p1.degree:
        return labels[0] == "q" and labels[-1] == "q"
    return True


@dataclass
class Lemma23Verdict:
    all_real_even: bool
    all_real_odd: bool
    interlace: bool
    degenerate_flags: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.all_real_even and self.all_real_odd and self.interlace

    def to_json_dict(self) -> dict:
        return {
            "all_real_even": self.all_real_even,
            "all_real_odd": self.all_real_odd,
            "interlace": self.interlace,
            "degenerate_flags": list(self.degenerate_flags),
        }


def verify_lemma23(X: SelfConjugateList) -> Lemma23Verdict:
    """Even and odd parts of the characteristic polynomial: real roots, interlacing."""
    seq = elem_sym_all(X)
    if seq.n == 0:
        return Lemma23Verdict(True, True, True, ["empty-list"])
    even, odd = even_odd_parts(char_poly(seq))
    flags = []
    real_even = all_roots_real(even)
    if odd.is_zero():
        flags.append("odd-part-zero")
        return Lemma23Verdict(real_even, True, True, flags)
    if odd.degree != seq.n - 1:
        flags.append("odd-part-degree-drop")
    real_odd = all_roots_real(odd)
    if poly_gcd(even, odd).degree > 0:
        flags.append("shared-roots")
    if squarefree_part(even).degree < even.degree or squarefree_part(odd).degree < odd.degree:
        flags.append("multiple-roots")
    ok = real_even and real_odd and interlace(even, odd)
    return Lemma23Verdict(real_even, real_odd, ok, flags)


@dataclass
class ReductionPathVerdict:
    even_roots_nonneg: bool
    odd_roots_nonneg: bool | None
    coefficients_match: bool
    agrees_with_family: bool
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.even_roots_nonneg
            and self.odd_roots_nonneg is not False
            and self.coefficients_match
            and self.agrees_with_family
        )


def _roots_real_nonneg(w: UniPoly) -> bool:
    if w.degree <= 0:
        return True
    if not all_roots_real(w):
        return False
    B = w.cauchy_bound()
    negative = sturm_count(w, -B, 0) - (1 if w(0) == 0 else 0)
    return negative == 0


def _vieta(w: UniPoly) -> list[Fraction]:
    """e_0..e_M of the roots of monic w, read from its coefficients."""
    M = w.degree
    return [(-1) ** k * w.c[M - k] for k in range(M + 1)]


def verify_thm22_path(X: SelfConjugateList) -> ReductionPathVerdict:
    """Newton on the w-roots reproduces families (i)/(ii) exactly.

    Margins obey ``margin_i = C(M,k) C(M,l) * newton_margin`` and
    ``margin_ii = e_1^2 C(M',k) C(M',l) * newton_margin``.
    """
    from .inequalities import check_t14, in_range_indices
    from .scalar import binomial

    seq = elem_sym_all(X)
    n = seq.n
    even, odd = w_substitution(seq)
    even_ok = _roots_real_nonneg(even)
    odd_ok = None if odd is None else _roots_real_nonneg(odd)
    mismatches = []

    ew = _vieta(even)
    coeff_ok = all(ew[k] == seq[2 * k] for k in range(len(ew)))
    if odd is not None:
        ow = _vieta(odd)
        coeff_ok = coeff_ok and all(ow[k] == Fraction(seq[2 * k + 1]) / seq[1] for k in range(len(ow)))

    def newton(values, k, l):
        M = len(values) - 1
        E = [Fraction(v) / binomial(M, i) for i, v in enumerate(values)]
        return E[k] * E[l] - E[k - 1] * E[l + 1]

    M = n // 2
    for k, l in in_range_indices("t14-i", n):
        rep = check_t14(seq, "t14-i", k, l)
        nm = newton(ew, k, l)
        if rep.margin != binomial(M, k) * binomial(M, l) * nm or rep.holds != (nm >= 0):
            mismatches.append(("t14-i", k, l))
    Mp = (n + 1) // 2 - 1
    for k, l in in_range_indices("t14-ii", n):
        rep = check_t14(seq, "t14-ii", k, l)
        if odd is None:
            # all odd e vanish; the family holds with zero margin
            if rep.margin != 0 or not rep.holds:
                mismatches.append(("t14-ii", k, l))
            continue
        nm = newton(_vieta(odd), k, l)
        if rep.margin != seq[1] ** 2 * binomial(Mp, k) * binomial(Mp, l) * nm or rep.holds != (nm >= 0):
            mismatches.append(("t14-ii", k, l))
    return ReductionPathVerdict(even_ok, odd_ok, coeff_ok, not mismatches, mismatches)
