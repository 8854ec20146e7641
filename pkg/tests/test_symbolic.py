import random
from fractions import Fraction

import pytest
import sympy

from newtonineq.esf import SelfConjugateList, elem_sym_all
from newtonineq.mpoly import MPoly, variable_names
from newtonineq.symbolic import (
    SizeBoundError,
    binom_sum_identities,
    build_f,
    build_g,
    build_p_gap,
    build_theta,
    coeff_T,
    coeff_T_star,
    coeff_T_symbolic,
    gap_polynomial,
    in_t_star_orbit,
    lemma24_check,
    omega,
    omega_ratio_check,
    positivity_check,
    subsets,
    symbolic_esf,
    theta_gap_check,
)


def vars_of(m, s=0):
    V = variable_names(m, s)
    return V, {name: MPoly.var(V, name) for name in V}


def test_single_pair():
    V, x = vars_of(1)
    e = symbolic_esf(1)
    assert e[1] == x["a1"].scale(2)
    assert e[2] == x["a1"] * x["a1"] + x["b1"] * x["b1"]


def test_reals_only():
    V, x = vars_of(0, 2)
    e = symbolic_esf(0, 2)
    assert e[1] == x["mu1"] + x["mu2"]
    assert e[2] == x["mu1"] * x["mu2"]


def test_two_pairs_e2():
    V, x = vars_of(2)
    a1, b1, a2, b2 = x["a1"], x["b1"], x["a2"], x["b2"]
    assert symbolic_esf(2)[2] == a1 * a1 + b1 * b1 + (a1 * a2).scale(4) + a2 * a2 + b2 * b2


def test_size_bound(monkeypatch):
    with pytest.raises(SizeBoundError):
        symbolic_esf(6)
    monkeypatch.setenv("NEWTONINEQ_MAX_N", "12")
    assert len(symbolic_esf(6)) == 13
    with pytest.raises(ValueError):
        symbolic_esf(0, 0)


@pytest.mark.parametrize("m, s", [(1, 1), (2, 1), (3, 0), (2, 3)])
def test_symbolic_esf_matches_sympy_expansion(m, s):
    V = variable_names(m, s)
    syms = sympy.symbols(V)
    x = sympy.Symbol("x")
    prod = sympy.Integer(1)
    for i in range(m):
        a, b = syms[i], syms[m + i]
        prod *= (1 + (a + sympy.I * b) * x) * (1 + (a - sympy.I * b) * x)
    for j in range(s):
        prod *= 1 + syms[2 * m + j] * x
    poly = sympy.Poly(sympy.expand(prod), x)
    e = symbolic_esf(m, s)
    for k in range(2 * m + s + 1):
        want = sympy.Poly(poly.coeff_monomial(x**k), *syms)
        assert {mono: int(c) for mono, c in want.terms()} == dict(e[k].items())


def test_evaluation_homomorphism():
    rng = random.Random(7)
    for n in range(1, 9):
        for m in range(n // 2 + 1):
            s = n - 2 * m
            e = symbolic_esf(m, s)
            a = [Fraction(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(m)]
            b = [Fraction(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(m)]
            mu = [Fraction(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(s)]
            seq = elem_sym_all(SelfConjugateList(pairs=list(zip(a, b)), reals=mu))
            point = a + b + mu
            assert [p.evaluate(point) for p in e] == list(seq.e)


def test_subsets_complete_and_unique():
    for m in range(6):
        for r in range(m + 1):
            got = list(subsets(m, r))
            assert len(got) == len(set(got)) == sympy.binomial(m, r)


def test_f_range_rejected():
    with pytest.raises(ValueError):
        build_f(1, 0, 1, 2)
    with pytest.raises(ValueError):
        build_g(2, 0, 2, 3)


def test_f_and_g_examples_strictly_positive():
    assert positivity_check(build_f(1, 1, 1, 2)).passed
    assert positivity_check(build_g(2, 0, 2, 2)).passed


def test_p_gap_not_positive():
    v = positivity_check(build_p_gap(2, 0, 2, 2))
    assert not v.passed and v.offenders


def test_zero_polynomial_modes():
    z = MPoly.zero(("x",))
    assert positivity_check(z, "nonneg").passed
    assert not positivity_check(z, "strict").passed
    with pytest.raises(ValueError):
        positivity_check(z, "loose")


def test_theta_base_case():
    V, x = vars_of(2)
    a1, b1, a2, b2 = x["a1"], x["b1"], x["a2"], x["b2"]
    v = a1 * a1 - b1 * b1 + a2 * a2 - b2 * b2
    assert build_theta(2, 1) == v * v


def test_gap_base_case_seven_terms():
    V, x = vars_of(2)
    a1, b1, a2, b2 = x["a1"], x["b1"], x["a2"], x["b2"]
    want = (a1**3 * a2 + (a1 * a2) ** 2 * 2 + a1 * a2**3 + (a1 * b1) ** 2
            + a1 * a2 * b1 * b1 + a1 * a2 * b2 * b2 + (a2 * b2) ** 2).scale(4)
    gap = gap_polynomial(2, 1)
    assert gap == want and len(gap) == 7


def test_theta_with_b_zero():
    for m, k in ((2, 1), (3, 1), (3, 2), (4, 2)):
        theta = build_theta(m, k)
        a = [Fraction(i + 2, 3) for i in range(m)]
        point = a + [0] * m
        sq = [v * v for v in a]
        ek = sum(sympy.prod(sq[i] for i in S) for S in subsets(m, k))
        assert theta.evaluate(point) == Fraction(ek) ** 2


def test_theta_range():
    with pytest.raises(ValueError):
        build_theta(2, 2)


def test_theta_gap_examples():
    rep = theta_gap_check(2, 1)
    assert rep.passed and rep.negatives == []
    assert theta_gap_check(3, 1).passed
    # T* = a1^2 b2^2 has a zero coefficient at m = 2k = 2
    assert gap_polynomial(2, 1).coefficient((2, 0, 0, 2)) == 0


def test_t_star_orbit():
    assert in_t_star_orbit((2, 0, 0, 2), 2)
    assert in_t_star_orbit((2, 0, 0, 0, 0, 2), 3)
    assert not in_t_star_orbit((0, 0, 0, 0), 2)
    assert not in_t_star_orbit((1, 1, 0, 2), 2)


def test_lemma24_examples():
    assert lemma24_check(1, 0).passed and lemma24_check(1, 1).passed
    v = lemma24_check(3, 2)
    assert v.even_ok and v.odd_ok


def test_coeff_T_closed_forms():
    assert coeff_T(1) == (4, -2, 2)
    assert coeff_T(2) == (16, -12, 4)
    assert coeff_T_symbolic(4, 2)[0] == 16


def test_coeff_T_symbolic_agrees():
    for k in range(1, 4):
        for m in range(k, 6):
            assert coeff_T_symbolic(m, k) == coeff_T(k)


def test_coeff_T_star_examples():
    assert coeff_T_star(2, 2) == 8
    for k in range(1, 6):
        assert coeff_T_star(k, 0) == coeff_T_star(k, 1) == 0
    with pytest.raises(ValueError):
        coeff_T_star(2, 5)


def test_binomial_sums():
    assert sum(4**r * sympy.binomial(3, 2 * r) for r in range(2)) == 13
    assert sum(4**r * sympy.binomial(3, 2 * r + 1) for r in range(2)) == 7
    assert binom_sum_identities(0).passed
    assert binom_sum_identities(30).passed


def test_omega():
    assert omega(2, 0) == 1 and omega(2, 1) == Fraction(4, 3)
    assert omega_ratio_check(2, 1)
    with pytest.raises(ValueError):
        omega_ratio_check(3, 3)
