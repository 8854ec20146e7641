import random
from fractions import Fraction

import pytest

from newtonineq.esf import SelfConjugateList, elem_sym_all
from newtonineq.extremal import corpus, gen_example_21
from newtonineq.realroots import (
    NotAllRealError,
    UniPoly,
    char_poly,
    distinct_real_roots,
    even_odd_parts,
    interlace,
    isolate_roots,
    squarefree_decomposition,
    sturm_chain,
    sturm_count,
    verify_lemma23,
    verify_thm22_path,
    w_substitution,
)


def P(*high):
    return UniPoly.from_high(high)


def test_unipoly_arithmetic():
    p, q = P(1, 2, 1), P(1, 1)
    assert p // q == q and (p % q).is_zero()
    assert p.derivative() == P(2, 2)
    assert p(Fraction(1, 2)) == Fraction(9, 4)
    assert UniPoly([0, 0]).is_zero()


def test_sturm_examples():
    assert sturm_count(P(1, 0, -2), -2, 2) == 2
    assert sturm_count(P(1, 0, 1), -10, 10) == 0
    assert sturm_count(P(1, -2, 1), 0, 2) == 1
    assert len(sturm_chain(P(1, 0, -2))) == 3


def _from_roots(roots):
    p = UniPoly([1])
    for r in roots:
        p = p * UniPoly([-r, 1])
    return p


def test_sturm_against_known_roots():
    rng = random.Random(11)
    for _ in range(1000):
        roots = [Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(rng.randint(1, 8))]
        p = _from_roots(roots).scale(rng.randint(1, 5))
        lo = Fraction(rng.randint(-15, 10), rng.randint(1, 3))
        hi = lo + Fraction(rng.randint(1, 30), rng.randint(1, 3))
        assert sturm_count(p, lo, hi) == len({r for r in roots if lo < r <= hi})
        assert distinct_real_roots(p) == len(set(roots))


def test_isolation_invariants():
    rng = random.Random(12)
    for _ in range(100):
        roots = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(rng.randint(1, 6))]
        iso = isolate_roots(_from_roots(roots))
        assert iso.count == len(roots)
        distinct = sorted(set(roots))
        assert len(iso.intervals) == len(distinct)
        for (lo, hi), r, mult in zip(iso.intervals, distinct, iso.multiplicities):
            assert lo < r <= hi and mult == roots.count(r)
        assert all(a[1] <= b[0] for a, b in zip(iso.intervals, iso.intervals[1:]))


def test_isolate_rejects_complex_roots():
    iso = isolate_roots(P(1, -3, 2))
    assert [lo < 1 <= hi for lo, hi in iso.intervals] == [True, False]
    with pytest.raises(NotAllRealError):
        isolate_roots(P(1, 0, 1))


def test_squarefree_decomposition():
    p = _from_roots([1, 1, 1, 2, 3, 3])
    mults = sorted((g.degree, m) for g, m in squarefree_decomposition(p))
    assert mults == [(1, 1), (1, 2), (1, 3)]


def test_char_poly_examples():
    assert char_poly(elem_sym_all(SelfConjugateList(reals=[1, 1]))) == P(1, 2, 1)
    assert char_poly(elem_sym_all(SelfConjugateList(pairs=[(0, 1)]))) == P(1, 0, 1)
    assert char_poly(elem_sym_all(SelfConjugateList(pairs=[(1, 1)]))) == P(1, 2, 2)


def test_even_odd_parts():
    assert even_odd_parts(P(1, 2, 2)) == (P(1, 0, -2), P(2, 0))
    assert even_odd_parts(P(1, 0, 1)) == (P(1, 0, -1), UniPoly())
    assert even_odd_parts(P(1, 1, 1, 1)) == (P(1, 0, -1, 0), P(1, 0, -1))
    with pytest.raises(ValueError):
        even_odd_parts(P(2, 1))


def test_w_substitution():
    even, odd = w_substitution(elem_sym_all(gen_example_21(2)))
    assert even == P(1, -2, 1) and odd is None
    even, _ = w_substitution(elem_sym_all(SelfConjugateList(reals=[1, 1])))
    assert even == P(1, -1)
    even, _ = w_substitution(elem_sym_all(SelfConjugateList(pairs=[(1, 1)])))
    assert even == P(1, -2)


def test_w_substitution_identity():
    for X in corpus(100, 9, 5):
        seq = elem_sym_all(X)
        even, odd = w_substitution(seq)
        M, Mp = seq.n // 2, (seq.n + 1) // 2 - 1
        for x in (Fraction(1, 3), Fraction(2), Fraction(-5, 7)):
            ev = sum((-1) ** r * seq[2 * r] * x ** (M - r) for r in range(M + 1))
            assert even(x) == ev
            if odd is not None:
                od = sum((-1) ** r * seq[2 * r + 1] * x ** (Mp - r) for r in range(Mp + 1))
                assert odd(x) * seq[1] == od


def test_lemma23_flags():
    v = verify_lemma23(gen_example_21(2))
    assert v.passed and "odd-part-zero" in v.degenerate_flags
    v = verify_lemma23(SelfConjugateList(pairs=[(0, 1)]))
    assert v.passed and "odd-part-zero" in v.degenerate_flags
    assert verify_lemma23(SelfConjugateList(reals=[1, 1])).passed


def test_lemma23_random_lists():
    for X in corpus(200, 10, 99):
        assert verify_lemma23(X).passed


def test_interlacing_all_real_list():
    even, odd = even_odd_parts(char_poly(elem_sym_all(SelfConjugateList(reals=[1, 2, 3, 5]))))
    assert interlace(even, odd)
    assert not interlace(_from_roots([0, 1]), _from_roots([2]))


def test_thm22_path():
    v = verify_thm22_path(gen_example_21(2))
    assert v.passed and v.odd_roots_nonneg is None
    for X in corpus(50, 8, 17):
        assert verify_thm22_path(X).passed
    assert verify_thm22_path(SelfConjugateList(reals=[1, 2, 3, 4])).passed
