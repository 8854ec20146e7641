"""Exact checkers for the Newton-like inequality families.

Every verdict compares products, never quotients, so vanishing e's (for
instance all odd e's of a purely imaginary list) need no special casing.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .esf import EsfSequence, FormalValueError, HypothesisError, SelfConjugateList, WedgeSpec, elem_sym_all, norm_P
from .scalar import binomial, canonical, cmp_sqrt_scaled, format_decimal, format_rational

FAMILIES = (
    "newton",
    "gen-newton",
    "lambda-newton",
    "gen-lambda-newton",
    "t14-i",
    "t14-ii",
    "t14-iii",
    "t14-iv",
    "t14-v",
)
T14 = ("t14-i", "t14-ii", "t14-iii", "t14-iv", "t14-v")
FAMILY_ALIASES = {"i": "t14-i", "ii": "t14-ii", "iii": "t14-iii", "iv": "t14-iv", "v": "t14-v"}

CSV_COLUMNS = ("family", "n", "k", "l", "lhs", "rhs", "constant_num", "constant_den", "holds", "margin")


class IndexRangeError(ValueError):
    """Indices outside the family's stated range."""


def family_name(name: str) -> str:
    name = FAMILY_ALIASES.get(name, name)
    if name not in FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    return name


@dataclass
class IneqReport:
    family: str
    n: int
    k: int
    l: int
    h: int
    lhs: Fraction | int
    rhs: Fraction | int
    constant: Fraction | int
    holds: bool
    margin: Fraction | int
    wedge_member: bool | None = None
    detail: dict = field(default_factory=dict)

    @property
    def key(self) -> tuple:
        return (FAMILIES.index(self.family) if self.family in FAMILIES else len(FAMILIES), self.family, self.k, self.l)

    def csv_row(self, decimal: int | None = None) -> list[str]:
        fmt = format_rational if decimal is None else (lambda v: format_decimal(v, decimal))
        c = Fraction(self.constant)
        return [
            self.family, str(self.n), str(self.k), str(self.l),
            fmt(self.lhs), fmt(self.rhs),
            str(c.numerator), str(c.denominator),
            "true" if self.holds else "false",
            fmt(self.margin),
        ]


# --- index ranges ---------------------------------------------------------------------

def in_range_indices(family: str, n: int, m: int | None = None) -> list[tuple[int, int]]:
    """All (k, l) at which the family is stated, in (k, l) order."""
    family = family_name(family)
    half_floor, half_ceil = n // 2, (n + 1) // 2
    if family in ("newton", "lambda-newton"):
        return [(k, k) for k in range(1, n)]
    if family in ("gen-newton", "gen-lambda-newton"):
        top = n - 1
    elif family == "t14-i":
        top = half_floor - 1
    elif family == "t14-ii":
        top = half_ceil - 2
    elif family == "t14-iii":
        top = (n - 1) // 2
    elif family == "t14-iv":
        top = half_floor - 1
    else:  # t14-v
        top = (n // 2 if m is None else m) - 1
    return [(k, l) for l in range(1, top + 1) for k in range(1, l + 1)]


def _require(family: str, n: int, k: int, l: int) -> None:
    if (k, l) not in set(in_range_indices(family, n)):
        raise IndexRangeError(f"{family}: (k={k}, l={l}) out of range for n={n}")


def t14_indices(family: str, k: int, l: int) -> tuple[tuple[int, int], tuple[int, int], int]:
    """((lhs e-indices), (rhs e-indices), shift h) for one of the parity-split families i..v."""
    return {
        "t14-i": ((2 * k, 2 * l), (2 * k - 2, 2 * l + 2), 2),
        "t14-ii": ((2 * k + 1, 2 * l + 1), (2 * k - 1, 2 * l + 3), 2),
        "t14-iii": ((2 * k - 1, 2 * l), (2 * k - 2, 2 * l + 1), 1),
        "t14-iv": ((2 * k, 2 * l + 1), (2 * k - 1, 2 * l + 2), 1),
        "t14-v": ((2 * k, 2 * l), (2 * k - 1, 2 * l + 1), 1),
    }[family]


def family_constant(n: int, k: int, l: int, family: str) -> Fraction:
    """The e-form constant C; for family v the *square* of C."""
    family = family_name(family)
    M, Mc = n // 2, (n + 1) // 2
    if family == "t14-i":
        return Fraction((l + 1) * (M - k + 1), k * (M - l))
    if family == "t14-ii":
        return Fraction((l + 1) * (Mc - k), k * (Mc - l - 1))
    if family in ("t14-iii", "t14-iv"):
        return Fraction(1)
    if family == "t14-v":
        return Fraction(l * (n - 2 * k), k * (n - 2 * l))
    raise ValueError(f"{family} has no fixed e-form constant")


# --- Newton families (E-normalised) -----------------------------------------------

def _e_side(seq: EsfSequence, idx: Sequence[int]):
    """Product of e's; formal sequences need an even count of odd indices."""
    return seq.product(idx)


def _E_side(seq: EsfSequence, idx: Sequence[int]) -> Fraction:
    value = Fraction(_e_side(seq, idx))
    for i in idx:
        value /= binomial(seq.n, i)
    return canonical(value)


def _newton_report(seq, family, k, l, lam, wedge=None) -> IneqReport:
    lhs = _E_side(seq, (k, l))
    rhs = _E_side(seq, (k - 1, l + 1))
    margin = canonical(Fraction(lhs) - lam * Fraction(rhs))
    return IneqReport(family, seq.n, k, l, 1, lhs, rhs, canonical(Fraction(lam)), margin >= 0, margin, wedge)


def check_newton(seq: EsfSequence, k: int) -> IneqReport:
    """E_k^2 >= E_{k-1} E_{k+1}."""
    _require("newton", seq.n, k, k)
    return _newton_report(seq, "newton", k, k, 1)


def check_gen_newton(seq: EsfSequence, k: int, l: int) -> IneqReport:
    """E_k E_l >= E_{k-1} E_{l+1}."""
    _require("gen-newton", seq.n, k, l)
    return _newton_report(seq, "gen-newton", k, l, 1)


def check_lambda_newton(seq: EsfSequence, k: int, w: WedgeSpec, member: bool | None = None) -> IneqReport:
    """E_k^2 >= lambda E_{k-1} E_{k+1}; ``member`` records wedge membership."""
    _require("lambda-newton", seq.n, k, k)
    return _newton_report(seq, "lambda-newton", k, k, w.lam, member)


def check_gen_lambda_newton(seq: EsfSequence, k: int, l: int, w: WedgeSpec, member: bool | None = None) -> IneqReport:
    _require("gen-lambda-newton", seq.n, k, l)
    return _newton_report(seq, "gen-lambda-newton", k, l, w.lam, member)


# --- parity-split families i..v--------------------------------------------------

def check_t14(source: EsfSequence | SelfConjugateList, family: str, k: int, l: int) -> IneqReport:
    """Exact verdict for one of the families i..v at (k, l).

    Family v needs all reals at even multiplicity; pass the list itself to
    have that hypothesis enforced.  Its constant is irrational, so the
    comparison runs in squared form and the margin is
    ``(lhs)^2 k(n-2l) - (rhs)^2 l(n-2k)``.
    """
    family = family_name(family)
    if family not in T14:
        raise ValueError(f"{family} is not one of the families i..v")
    if isinstance(source, SelfConjugateList):
        if family == "t14-v" and not source.reals_even_multiplicity():
            raise HypothesisError("family v needs every real entry at even multiplicity")
        seq = elem_sym_all(source)
    else:
        seq = source
    return _t14(seq, family, k, l)


def _t14(seq: EsfSequence, family: str, k: int, l: int) -> IneqReport:
    n = seq.n
    _require(family, n, k, l)
    lhs_idx, rhs_idx, h = t14_indices(family, k, l)
    try:
        lhs = _e_side(seq, lhs_idx)
        rhs = _e_side(seq, rhs_idx)
    except FormalValueError as exc:
        raise FormalValueError(f"{family} at (k={k}, l={l}) needs a lone odd e: {exc}") from None
    C = family_constant(n, k, l, family)
    if family == "t14-v":
        holds = cmp_sqrt_scaled(lhs, rhs, C) >= 0
        margin = canonical(Fraction(lhs) ** 2 * k * (n - 2 * l) - Fraction(rhs) ** 2 * l * (n - 2 * k))
    else:
        margin = canonical(Fraction(lhs) - C * rhs)
        holds = margin >= 0
    return IneqReport(family, n, k, l, h, lhs, rhs, canonical(C), holds, margin)


def check_family(source, family: str, k: int, l: int, wedge: WedgeSpec | None = None) -> IneqReport:
    """Dispatch over every family name."""
    family = family_name(family)
    X = source if isinstance(source, SelfConjugateList) else None
    seq = elem_sym_all(source) if X is not None else source
    if family in T14:
        return check_t14(X if X is not None else seq, family, k, l)
    if family == "newton":
        return check_newton(seq, k)
    if family == "gen-newton":
        return check_gen_newton(seq, k, l)
    return _lambda_family(seq, X, family, k, l, wedge)


def _lambda_family(seq, X, family, k, l, wedge):
    if wedge is None:
        raise ValueError(f"{family} needs a wedge lambda")
    from .esf import wedge_member

    member = wedge_member(X, wedge) if X is not None else None
    if family == "lambda-newton":
        return check_lambda_newton(seq, k, wedge, member)
    return check_gen_lambda_newton(seq, k, l, wedge, member)


def _other(seq, X, family, k, l, wedge):
    if family == "newton":
        return check_newton(seq, k)
    if family == "gen-newton":
        return check_gen_newton(seq, k, l)
    return _lambda_family(seq, X, family, k, l, wedge)


def run_checks(source, families: Iterable[str], wedge: WedgeSpec | None = None) -> tuple[list[IneqReport], list[str]]:
    """Every in-range instance of each family; also the names found vacuous."""
    X = source if isinstance(source, SelfConjugateList) else None
    seq = elem_sym_all(X) if X is not None else source
    reports, vacuous = [], []
    for fam in families:
        fam = family_name(fam)
        m = None
        if fam == "t14-v" and X is not None and not X.reals_even_multiplicity():
            continue
        idx = in_range_indices(fam, seq.n, m)
        if not idx:
            vacuous.append(fam)
            continue
        for k, l in idx:
            if fam in T14:
                reports.append(_t14(seq, fam, k, l))
            else:
                reports.append(_other(seq, X, fam, k, l, wedge))
    reports.sort(key=lambda r: r.key)
    return reports, vacuous


def reports_to_csv(reports: Iterable[IneqReport], decimal: int | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in sorted(reports, key=lambda r: r.key):
        writer.writerow(r.csv_row(decimal))
    return buf.getvalue()


# --- combined chain for odd n ------------------------------------------------------

def check_combined_chain(seq: EsfSequence, k: int) -> IneqReport:
    """P_{2k}P_{2k+1} >= sqrt(P_{2k-2}P_{2k-1}P_{2k+2}P_{2k+3}) >= P_{2k-2}P_{2k+3}.

    Both links are checked squared.  Reported lhs/rhs are the squared outer
    terms; ``detail`` carries the two link margins.
    """
    n = seq.n
    if n % 2 == 0:
        raise ValueError("combined chain applies to odd n only")
    m = (n - 1) // 2
    if not 1 <= k <= m - 1:
        raise IndexRangeError(f"combined chain needs 1 <= k <= {m - 1}, got {k}")
    P = {i: Fraction(norm_P(seq, i)) for i in (2 * k - 2, 2 * k - 1, 2 * k, 2 * k + 1, 2 * k + 2, 2 * k + 3)}
    middle = P[2 * k - 2] * P[2 * k - 1] * P[2 * k + 2] * P[2 * k + 3]
    outer_l = (P[2 * k] * P[2 * k + 1]) ** 2
    outer_r = (P[2 * k - 2] * P[2 * k + 3]) ** 2
    link1 = outer_l - middle
    link2 = middle - outer_r
    return IneqReport(
        "combined-chain", n, k, k, 2, canonical(outer_l), canonical(outer_r), 1,
        link1 >= 0 and link2 >= 0, canonical(outer_l - outer_r),
        detail={"link1_margin": canonical(link1), "link2_margin": canonical(link2)},
    )


def p_e_ratio_identity(seq: EsfSequence, k: int) -> bool:
    """P_{2k-1}P_{2k+2} e_{2k-2}e_{2k+3} == P_{2k-2}P_{2k+3} e_{2k-1}e_{2k+2} (odd n)."""
    if seq.n % 2 == 0:
        raise ValueError("identity stated for odd n")
    P = lambda i: Fraction(norm_P(seq, i))  # noqa: E731
    left = P(2 * k - 1) * P(2 * k + 2) * seq[2 * k - 2] * seq[2 * k + 3]
    right = P(2 * k - 2) * P(2 * k + 3) * seq[2 * k - 1] * seq[2 * k + 2]
    return left == right


# --- critical lambda and the wedge figure ---------------------------------------------

def e_to_E_factor(n: int, k: int, l: int, family: str) -> Fraction:
    """C(n,A')C(n,B') / (C(n,A)C(n,B)) for ``e_A e_B >= C e_A' e_B'``."""
    (a, b), (c, d), _ = t14_indices(family_name(family), k, l)
    return Fraction(binomial(n, c) * binomial(n, d), binomial(n, a) * binomial(n, b))


def critical_lambda(n: int, k: int, l: int, family: str, squared: bool = False) -> Fraction:
    """lambda* with e-form ``e_A e_B >= C e_A' e_B'`` == ``E_A E_B >= lambda* E_A' E_B'``.

    lambda* = C * C(n,A')C(n,B') / (C(n,A)C(n,B)).  Families iii and iv
    report their e-form constant 1 unchanged.  Family v's constant is a
    square root; unless it is rational, ask for ``squared=True``.
    """
    family = family_name(family)
    if family not in T14:
        raise ValueError("critical lambda is defined for families i..v")
    _require(family, n, k, l)
    C = family_constant(n, k, l, family)
    if family in ("t14-iii", "t14-iv"):
        # constant already 1 in e-form; the E-form factor is e_to_E_factor
        return C
    factor = e_to_E_factor(n, k, l, family)
    if family == "t14-v":
        if squared:
            return C * factor**2
        from .scalar import is_perfect_square, rational_sqrt

        if not is_perfect_square(C):
            raise ValueError("irrational critical lambda; use squared=True")
        return rational_sqrt(C) * factor
    if squared:
        return (C * factor) ** 2
    return C * factor


def wedge_figure_data(lambdas: Sequence, radius: float = 1.0, samples: int = 32) -> list[tuple]:
    """Boundary of each wedge |arg z| <= arccos(sqrt(lambda)) as plot rows.

    Rows are (lambda, theta_radians, x, y): the upper ray out to
    ``radius``, the arc down to the lower ray, and the lower ray back in.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    rows = []
    for lam in lambdas:
        lam = WedgeSpec(lam).lam
        theta = math.acos(math.sqrt(float(lam)))
        pts = []
        for i in range(samples):
            r = radius * i / (samples - 1)
            pts.append((r * math.cos(theta), r * math.sin(theta)))
        for i in range(1, samples):
            phi = theta - 2 * theta * i / (samples - 1)
            pts.append((radius * math.cos(phi), radius * math.sin(phi)))
        for i in range(samples - 2, -1, -1):
            r = radius * i / (samples - 1)
            pts.append((r * math.cos(theta), -r * math.sin(theta)))
        rows.extend((lam, theta, x, y) for x, y in pts)
    return rows
