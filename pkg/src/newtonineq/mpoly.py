"""Sparse multivariate polynomials over the rationals.

Monomials are packed into a single Python int, 16 bits per variable, so a
monomial product is one integer addition.  Exponents are limited to
``MAX_EXP``; every operation that can raise degrees checks the limit.
Coefficients are ``int`` when integral and ``Fraction`` otherwise; zero
coefficients are never stored.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .scalar import canonical, format_rational

FIELD = 16
MASK = (1 << FIELD) - 1
GUARD = 1 << (FIELD - 1)
MAX_EXP = GUARD - 1


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= MAX_EXP:
            raise OverflowError(f"exponent {e} outside 0..{MAX_EXP}")
        key |= e << (FIELD * i)
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (FIELD * i)) & MASK for i in range(nvars))


class Bound:
    """Per-variable exponent cap, tested on packed keys with guard bits."""

    __slots__ = ("exps", "offset", "guard")

    def __init__(self, exps: Sequence[int]):
        self.exps = tuple(min(int(e), MAX_EXP) for e in exps)
        self.offset = sum((MAX_EXP - e) << (FIELD * i) for i, e in enumerate(self.exps))
        self.guard = sum(GUARD << (FIELD * i) for i in range(len(self.exps)))

    def admits(self, key: int) -> bool:
        return not ((key + self.offset) & self.guard)


class MPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[int, object] | None = None):
        self.variables = tuple(variables)
        self.terms: dict[int, object] = {}
        if terms:
            for k, c in terms.items():
                c = canonical(c)
                if c:
                    self.terms[k] = c

    # --- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MPoly":
        return cls(variables, {0: c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str, power: int = 1) -> "MPoly":
        variables = tuple(variables)
        idx = variables.index(name)
        exps = [0] * len(variables)
        exps[idx] = power
        return cls(variables, {pack(exps): 1})

    @classmethod
    def from_dict(cls, variables: Sequence[str], terms: Mapping[tuple, object]) -> "MPoly":
        variables = tuple(variables)
        out: dict[int, object] = {}
        for exps, c in terms.items():
            if len(exps) != len(variables):
                raise ValueError("exponent vector arity does not match variable count")
            k = pack(exps)
            out[k] = out.get(k, 0) + c
        return cls(variables, out)

    # --- queries --------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[tuple[int, ...], object]]:
        n = len(self.variables)
        for k, c in self.terms.items():
            yield unpack(k, n), c

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(pack(exps), 0)

    def degree(self) -> int:
        n = len(self.variables)
        return max((sum(unpack(k, n)) for k in self.terms), default=-1)

    def max_exponents(self) -> tuple[int, ...]:
        n = len(self.variables)
        out = [0] * n
        for k in self.terms:
            for i in range(n):
                e = (k >> (FIELD * i)) & MASK
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def evaluate(self, values: Mapping[str, object] | Sequence):
        if isinstance(values, Mapping):
            vals = [values[v] for v in self.variables]
        else:
            vals = list(values)
        total = 0
        for exps, c in self.items():
            term = c
            for v, e in zip(vals, exps):
                if e:
                    term *= v**e
            total += term
        return canonical(Fraction(total))

    # --- arithmetic -----------------------------------------------------------
    def _check(self, other: "MPoly") -> None:
        if self.variables != other.variables:
            raise ValueError("polynomials over different variable lists")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = canonical(v)
            else:
                out.pop(k, None)
        return MPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = canonical(Fraction(c))
        if not c:
            return MPoly.zero(self.variables)
        return MPoly._raw(self.variables, {k: canonical(v * c) for k, v in self.terms.items()})

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "MPoly", bound: Bound | None = None) -> "MPoly":
        """Product, optionally dropping monomials that exceed ``bound``."""
        self._check(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.variables)
        if self.degree() + other.degree() > MAX_EXP:
            raise OverflowError("product degree exceeds packed-exponent range")
        terms = kernels.mul_terms(self.terms, other.terms, len(self.variables), bound)
        return MPoly._raw(self.variables, terms)

    def truncate(self, bound: Bound) -> "MPoly":
        return MPoly._raw(self.variables, {k: c for k, c in self.terms.items() if bound.admits(k)})

    def __pow__(self, exponent: int) -> "MPoly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.constant(self.variables, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.variables, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # --- text form ------------------------------------------------------------
    def sorted_items(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in graded lexicographic order (highest first)."""
        return sorted(self.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self) -> str:
        """Canonical dump: one ``coef * x1^e1 x2^e2`` line per term."""
        lines = []
        for exps, c in self.sorted_items():
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.variables, exps)
                if e
            ]
            lines.append(f"{format_rational(c)} * {' '.join(factors) if factors else '1'}")
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self) -> str:
        if not self.terms:
            return "MPoly(0)"
        body = " + ".join(line for line in self.to_text().splitlines())
        return f"MPoly({body})"


def variable_names(m: int, s: int = 0) -> tuple[str, ...]:
    """a1..am, b1..bm, mu1..mus in that order."""
    return (
        tuple(f"a{i}" for i in range(1, m + 1))
        + tuple(f"b{i}" for i in range(1, m + 1))
        + tuple(f"mu{i}" for i in range(1, s + 1))
    )


def sum_polys(polys: Iterable[MPoly], variables: Sequence[str]) -> MPoly:
    out: dict[int, object] = {}
    for p in polys:
        for k, c in p.terms.items():
            out[k] = out.get(k, 0) + c
    return MPoly(variables, out)
