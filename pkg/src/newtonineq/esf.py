"""Self-conjugate lists and their elementary symmetric functions.

A list is stored as conjugate pairs ``a +- i b`` (``a, b >= 0``), real
entries ``mu >= 0``, and optionally one *formal* pair of equal reals
``t, t`` known only through ``tau = t**2``.  In formal mode every odd-index
e_k carries exactly one factor ``t``; the sequence stores its coefficient.
Pairs whose imaginary part is irrational may be given as ``(a, b**2)`` in
``sq_pairs``; nothing below needs b itself.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import binomial, canonical, format_rational, parse_rational


class HypothesisError(ValueError):
    """Input lies outside the nonnegative-real-part hypothesis."""


class FormalValueError(ValueError):
    """A lone odd-index e_k was requested from a formal (tau) sequence."""


def _rationals(values: Iterable) -> tuple:
    return tuple(canonical(parse_rational(v)) for v in values)


@dataclass(frozen=True)
class SelfConjugateList:
    pairs: tuple = ()
    reals: tuple = ()
    tau: Fraction | int | None = None
    sq_pairs: tuple = ()

    def __post_init__(self) -> None:
        pairs = tuple(tuple(_rationals(p)) for p in self.pairs)
        sq_pairs = tuple(tuple(_rationals(p)) for p in self.sq_pairs)
        reals = _rationals(self.reals)
        tau = None if self.tau is None else canonical(parse_rational(self.tau))
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"pair must have two entries, got {pair!r}")
            a, b = pair
            if a < 0:
                raise HypothesisError(f"negative real part a={format_rational(a)}")
            if b < 0:
                raise ValueError(f"pair imaginary part must be stored as b >= 0, got {format_rational(b)}")
        for pair in sq_pairs:
            if len(pair) != 2:
                raise ValueError(f"pair must have two entries, got {pair!r}")
            if pair[0] < 0:
                raise HypothesisError(f"negative real part a={format_rational(pair[0])}")
            if pair[1] < 0:
                raise ValueError("b^2 must be nonnegative")
        for mu in reals:
            if mu < 0:
                raise HypothesisError(f"negative real entry mu={format_rational(mu)}")
        if tau is not None:
            if tau < 0:
                raise ValueError("tau must be nonnegative")
            if reals or any(a != 0 for a, _ in pairs + sq_pairs):
                raise ValueError("formal tau mode requires purely imaginary pairs and no reals")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "reals", reals)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "sq_pairs", sq_pairs)

    @property
    def n(self) -> int:
        return 2 * len(self.pairs) + 2 * len(self.sq_pairs) + len(self.reals) + (2 if self.tau is not None else 0)

    @property
    def formal(self) -> bool:
        return self.tau is not None

    def reals_even_multiplicity(self) -> bool:
        """True when every real value occurs an even number of times.

        Pairs ``(a, 0)`` already contribute even multiplicity, so only the
        unpaired reals matter.
        """
        return all(c % 2 == 0 for c in Counter(self.reals).values())

    def scaled(self, c: Fraction | int) -> "SelfConjugateList":
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return SelfConjugateList(
            pairs=[(a * c, b * c) for a, b in self.pairs],
            reals=[mu * c for mu in self.reals],
            tau=None if self.tau is None else self.tau * c * c,
            sq_pairs=[(a * c, b2 * c * c) for a, b2 in self.sq_pairs],
        )

    def norm_pairs(self) -> list[tuple]:
        """Every pair as (a, a^2 + b^2)."""
        return [(a, a * a + b * b) for a, b in self.pairs] + [(a, a * a + b2) for a, b2 in self.sq_pairs]

    def complex_entries(self) -> list[tuple[Fraction, Fraction]]:
        """All n entries as (re, im) tuples; not available in formal mode."""
        if self.formal or self.sq_pairs:
            raise FormalValueError("list has irrational entries")
        out: list[tuple[Fraction, Fraction]] = []
        for a, b in self.pairs:
            out.append((Fraction(a), Fraction(b)))
            out.append((Fraction(a), -Fraction(b)))
        out.extend((Fraction(mu), Fraction(0)) for mu in self.reals)
        return out

    # --- JSON list-file format -------------------------------------------
    def to_json_dict(self) -> dict:
        doc: dict = {
            "pairs": [[format_rational(a), format_rational(b)] for a, b in self.pairs],
            "reals": [format_rational(mu) for mu in self.reals],
        }
        if self.sq_pairs:
            doc["pairs_sq"] = [[format_rational(a), format_rational(b2)] for a, b2 in self.sq_pairs]
        if self.tau is not None:
            doc["tau"] = format_rational(self.tau)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SelfConjugateList":
        if not isinstance(doc, dict):
            raise ValueError("list document must be a JSON object")
        unknown = set(doc) - {"pairs", "pairs_sq", "reals", "tau", "provenance"}
        if unknown:
            raise ValueError(f"unknown keys in list document: {sorted(unknown)}")
        return cls(pairs=doc.get("pairs", []), reals=doc.get("reals", []), tau=doc.get("tau"),
                   sq_pairs=doc.get("pairs_sq", []))

    @classmethod
    def from_json(cls, text: str) -> "SelfConjugateList":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class WedgeSpec:
    lam: Fraction | int

    def __post_init__(self) -> None:
        lam = canonical(parse_rational(self.lam))
        if not 0 <= lam <= 1:
            raise ValueError(f"wedge lambda must lie in [0, 1], got {format_rational(lam)}")
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class EsfSequence:
    """Exact e_0..e_n.  In ``odd_formal`` mode odd entries are t-coefficients."""

    e: tuple
    tau: Fraction | int | None = None
    n: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", tuple(canonical(Fraction(v)) for v in self.e))
        object.__setattr__(self, "n", len(self.e) - 1)

    @property
    def odd_formal(self) -> bool:
        return self.tau is not None

    def __getitem__(self, k: int):
        """Exact e_k (0 outside 0..n); forbidden for odd k in formal mode."""
        if self.odd_formal and k % 2 == 1 and 0 <= k <= self.n:
            raise FormalValueError(f"e_{k} carries an irrational factor t (formal mode)")
        return self.e[k] if 0 <= k <= self.n else 0

    def coeff(self, k: int):
        """Stored value of e_k: the t-coefficient for odd k in formal mode."""
        return self.e[k] if 0 <= k <= self.n else 0

    def product(self, indices: Sequence[int]):
        """Exact product of e_i over ``indices``.

        In formal mode the number of odd indices must be even; each pair of
        t factors contributes ``tau``.
        """
        value = 1
        odd = 0
        for i in indices:
            value *= self.coeff(i)
            odd += i % 2
        if self.odd_formal and odd:
            if odd % 2:
                raise FormalValueError("product holds an odd number of formal t factors")
            value *= self.tau ** (odd // 2)
        return canonical(Fraction(value))


def _esf_from_parts(norm_pairs, reals, tau=None) -> list:
    """Fold (a, a^2+b^2) pairs, reals and the formal pair into e_0..e_n."""
    e: list = [1]
    for a, s in norm_pairs:
        two_a = 2 * a
        prev = e
        e = prev + [0, 0]
        for i in range(len(e) - 1, 0, -1):
            acc = prev[i] if i < len(prev) else 0
            if i - 1 < len(prev):
                acc += two_a * prev[i - 1]
            if i >= 2:
                acc += s * prev[i - 2]
            e[i] = acc
    for mu in reals:
        prev = e
        e = prev + [0]
        for i in range(len(e) - 1, 0, -1):
            acc = prev[i] if i < len(prev) else 0
            e[i] = acc + mu * prev[i - 1]
    if tau is not None:
        # formal factor 1 + 2t x + tau x^2; odd slots hold t-coefficients.
        # All other pairs are purely imaginary, so e has no odd content yet.
        prev = e
        e = prev + [0, 0]
        for i in range(len(e) - 1, 0, -1):
            if i % 2 == 0:
                e[i] = (prev[i] if i < len(prev) else 0) + tau * prev[i - 2]
            else:
                e[i] = 2 * prev[i - 1]
    return e


def elem_sym_all(X: SelfConjugateList) -> EsfSequence:
    """Exact e_0..e_n of a self-conjugate list.

    Pairs fold in with ``e_i += 2a e_{i-1} + (a^2+b^2) e_{i-2}``, reals with
    ``e_i += mu e_{i-1}``.
    """
    e = _esf_from_parts(X.norm_pairs(), X.reals, X.tau)
    seq = EsfSequence(e, tau=X.tau)
    if any(v < 0 for v in seq.e):
        raise AssertionError(f"negative elementary symmetric value for {X!r}")
    return seq


def mean_E(seq: EsfSequence, k: int):
    """Elementary symmetric mean E_k = e_k / C(n, k)."""
    if not 0 <= k <= seq.n:
        raise IndexError(f"E_{k} out of range for n={seq.n}")
    return canonical(Fraction(seq[k], binomial(seq.n, k)))


def p_binomial(n: int, k: int) -> int:
    """Normaliser of P_k: C(floor(n/2), k/2) or C(ceil(n/2)-1, (k-1)/2)."""
    if k % 2 == 0:
        half = n // 2
        j = k // 2
    else:
        half = (n + 1) // 2 - 1
        j = (k - 1) // 2
    if not 0 <= j <= half:
        raise IndexError(f"P_{k} undefined for n={n}")
    return binomial(half, j)


def norm_P(seq: EsfSequence, k: int):
    """Parity-aware normalisation P_k.

    Odd k in formal mode returns the coefficient of t.
    """
    if k < 0:
        raise IndexError(f"P_{k} undefined")
    return canonical(Fraction(seq.coeff(k), p_binomial(seq.n, k)))


def wedge_member(X: SelfConjugateList, w: WedgeSpec) -> bool:
    """Every entry satisfies cos^2(arg z) >= lambda (0 counts as inside)."""
    lam = w.lam
    if any(a * a < lam * s for a, s in X.norm_pairs()):
        return False
    # reals and the formal pair (t, t) are nonnegative reals: always inside
    return True
