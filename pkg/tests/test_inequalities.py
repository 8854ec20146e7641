import csv
import io
import math
from fractions import Fraction

import pytest

from newtonineq.esf import FormalValueError, HypothesisError, SelfConjugateList, WedgeSpec, elem_sym_all, norm_P
from newtonineq.extremal import corpus, gen_example_21, gen_example_25, gen_example_32
from newtonineq.inequalities import (
    CSV_COLUMNS,
    T14,
    IndexRangeError,
    check_combined_chain,
    check_family,
    check_gen_lambda_newton,
    check_gen_newton,
    check_lambda_newton,
    check_newton,
    check_t14,
    critical_lambda,
    e_to_E_factor,
    family_constant,
    in_range_indices,
    p_e_ratio_identity,
    reports_to_csv,
    run_checks,
    t14_indices,
    wedge_figure_data,
)


def seq_of(pairs=(), reals=()):
    return elem_sym_all(SelfConjugateList(pairs=pairs, reals=reals))


def test_newton_examples():
    r = check_newton(seq_of(reals=[1, 1, 1]), 1)
    assert r.holds and r.margin == 0
    r = check_newton(elem_sym_all(gen_example_21(2)), 1)
    assert not r.holds and r.lhs == 0 and r.rhs == Fraction(1, 3)
    r = check_newton(seq_of(reals=[1, 2, 3]), 1)
    assert r.holds and r.margin > 0


def test_newton_index_range():
    with pytest.raises(IndexRangeError):
        check_newton(seq_of(reals=[1, 2]), 2)
    with pytest.raises(IndexRangeError):
        check_gen_newton(seq_of(reals=[1, 2, 3]), 2, 1)


def test_lambda_examples():
    for X in corpus(50, 8, 1):
        seq = elem_sym_all(X)
        for k in range(1, X.n):
            r = check_lambda_newton(seq, k, WedgeSpec(0))
            assert r.holds and r.margin == r.lhs
    r = check_lambda_newton(seq_of(pairs=[(1, 1)]), 1, WedgeSpec(Fraction(1, 2)))
    assert r.holds and r.margin == 0


def test_lambda_one_is_gen_newton_on_reals():
    seq = seq_of(reals=[1, 2, 5, 7])
    for k in range(1, 4):
        for l in range(k, 4):
            assert check_gen_lambda_newton(seq, k, l, WedgeSpec(1)).margin == check_gen_newton(seq, k, l).margin


def test_smaller_lambda_is_weaker():
    for X in corpus(200, 8, 2, wedge=WedgeSpec(Fraction(3, 4))):
        seq = elem_sym_all(X)
        for k in range(1, X.n):
            for lam in (Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)):
                assert check_lambda_newton(seq, k, WedgeSpec(lam)).holds


def test_t14_ranges():
    assert in_range_indices("t14-i", 8) == [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)]
    assert in_range_indices("t14-ii", 4) == []
    seq = seq_of(reals=[1, 2, 3, 4])
    with pytest.raises(IndexRangeError):
        check_t14(seq, "t14-i", 2, 2)
    with pytest.raises(ValueError):
        check_t14(seq, "newton", 1, 1)


def test_family_v_gate():
    with pytest.raises(HypothesisError):
        check_t14(SelfConjugateList(pairs=[(1, 1), (0, 2)], reals=[1, 2]), "t14-v", 1, 1)
    # reals at even multiplicity are admitted
    assert check_t14(SelfConjugateList(pairs=[(1, 1), (0, 2)], reals=[3, 3]), "t14-v", 1, 1).holds


def test_example_31_equality():
    for m in range(2, 9):
        X = gen_example_21(m)
        for k, l in in_range_indices("t14-i", X.n):
            assert check_t14(X, "t14-i", k, l).margin == 0


def test_example_32_equality_in_tau():
    for m in range(2, 10):
        for k in range(1, m):
            r = check_t14(elem_sym_all(gen_example_32(m, Fraction(m - k, k))), "t14-v", k, k)
            assert r.holds and r.margin == 0


def test_formal_mode_rejected_where_lone_odd_e_needed():
    seq = elem_sym_all(gen_example_32(3, 2))
    with pytest.raises(FormalValueError):
        check_t14(seq, "t14-iii", 1, 1)
    assert check_t14(seq, "t14-ii", 1, 1).holds


def test_example_25_ratio_tends_to_one():
    # along eps -> 0 the family (iii) ratio at k = 1 falls towards 1
    m, k, l = 4, 1, 1
    prev = None
    for j in range(1, 8):
        eps = Fraction(1, 10**j)
        seq = elem_sym_all(gen_example_25(m, eps))
        r = check_t14(seq, "t14-iii", k, l)
        assert r.holds
        ratio = Fraction(r.lhs, r.rhs)
        assert ratio >= 1 and (prev is None or ratio <= prev)
        prev = ratio
        assert r.margin / r.rhs == ratio - 1
    assert prev - 1 < Fraction(1, 10**5)


def test_example_32_off_equality_tau_is_strict():
    # tau away from (m-k)/k on either side keeps family (v) strict
    m, k = 5, 2
    for tau in (Fraction(1, 100), Fraction(1, 10), Fraction(10), Fraction(100)):
        r = check_t14(elem_sym_all(gen_example_32(m, tau)), "t14-v", k, k)
        assert r.holds and r.margin > 0


def test_proven_families_on_random_lists():
    for X in corpus(300, 12, 77):
        reports, _ = run_checks(X, T14)
        assert all(r.holds for r in reports)


def test_family_i_matches_P_form():
    for X in corpus(200, 20, 5, n_min=4):
        seq = elem_sym_all(X)
        for k, l in in_range_indices("t14-i", seq.n):
            r = check_t14(seq, "t14-i", k, l)
            p_gap = norm_P(seq, 2 * k) * norm_P(seq, 2 * l) - norm_P(seq, 2 * k - 2) * norm_P(seq, 2 * l + 2)
            M = seq.n // 2
            scale = math.comb(M, k) * math.comb(M, l)
            assert r.margin == scale * p_gap


def test_family_i_implies_plain_chain():
    for X in corpus(300, 12, 6):
        seq = elem_sym_all(X)
        for k, l in in_range_indices("t14-i", seq.n):
            assert family_constant(seq.n, k, l, "t14-i") >= 1
            if check_t14(seq, "t14-i", k, l).holds:
                assert seq[2 * k] * seq[2 * l] >= seq[2 * k - 2] * seq[2 * l + 2]


def test_scale_covariance():
    for i, X in enumerate(corpus(60, 10, 7)):
        c = Fraction(i % 7 + 1, i % 5 + 2)
        Y = X.scaled(c)
        a, _ = run_checks(X, T14)
        b, _ = run_checks(Y, T14)
        assert [(r.family, r.k, r.l) for r in a] == [(r.family, r.k, r.l) for r in b]
        for ra, rb in zip(a, b):
            assert ra.holds == rb.holds
            assert (ra.margin == 0) == (rb.margin == 0)
            (a1, a2), _, _ = t14_indices(ra.family, ra.k, ra.l)
            power = (a1 + a2) * (2 if ra.family == "t14-v" else 1)
            assert rb.margin == ra.margin * c**power


def test_combined_chain_and_ratio_identity():
    for X in corpus(100, 11, 8, n_min=5):
        seq = elem_sym_all(X)
        if seq.n % 2 == 0:
            with pytest.raises(ValueError):
                check_combined_chain(seq, 1)
            continue
        m = (seq.n - 1) // 2
        for k in range(1, m):
            r = check_combined_chain(seq, k)
            assert r.holds
            assert p_e_ratio_identity(seq, k)
    # all-equal reals: Newton is tight, the P-chain is not
    seq = seq_of(reals=[2] * 7)
    assert check_newton(seq, 3).margin == 0
    r = check_combined_chain(seq, 1)
    assert r.holds and r.detail["link1_margin"] > 0 and r.detail["link2_margin"] > 0


def test_critical_lambda():
    assert critical_lambda(16, 4, 4, "t14-v") == Fraction(64, 81)
    assert critical_lambda(200, 50, 50, "t14-v") == Fraction(10000, 10201)
    assert critical_lambda(9, 1, 2, "t14-iii") == 1
    assert e_to_E_factor(9, 1, 2, "t14-iii") == Fraction(math.comb(9, 0) * math.comb(9, 5), math.comb(9, 1) * math.comb(9, 4))
    with pytest.raises(ValueError):
        critical_lambda(16, 1, 2, "t14-v")
    assert critical_lambda(16, 1, 2, "t14-v", squared=True) > 0


def test_wedge_figure_data():
    rows = wedge_figure_data([Fraction(64, 81), 1, 0], samples=8)
    thetas = {r[0]: r[1] for r in rows}
    assert abs(thetas[Fraction(64, 81)] - 0.47588) < 1e-5
    assert abs(thetas[Fraction(64, 81)] - math.acos(8 / 9)) < 1e-9
    assert thetas[1] == 0
    assert abs(thetas[0] - math.pi / 2) < 1e-12
    assert len(rows) == 3 * (3 * 8 - 2)
    with pytest.raises(ValueError):
        wedge_figure_data([2])


def test_csv_layout():
    reports, _ = run_checks(SelfConjugateList(pairs=[(1, 2), (0, 1)], reals=[3, 3]), ["iii", "i", "v"])
    rows = list(csv.reader(io.StringIO(reports_to_csv(reports))))
    assert tuple(rows[0]) == CSV_COLUMNS
    keys = [(r[0], int(r[2]), int(r[3])) for r in rows[1:]]
    assert keys == sorted(keys, key=lambda t: (T14.index(t[0]), t[1], t[2]))
    assert {r[8] for r in rows[1:]} == {"true"}


def test_check_family_dispatch():
    seq = seq_of(reals=[1, 2, 3, 4, 5])
    assert check_family(seq, "newton", 2, 2).holds
    assert check_family(seq, "ii", 1, 1).holds
    with pytest.raises(ValueError):
        check_family(seq, "lambda-newton", 1, 1)
