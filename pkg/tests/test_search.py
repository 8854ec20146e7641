import json

import pytest

from newtonineq.inequalities import IndexRangeError
from newtonineq.search import (
    CorpusError,
    SearchResult,
    estimate_optimal_constant,
    witness_corpus_update,
)


def _run(**kw):
    args = dict(family="t14-iii", n=7, k=1, l=2, budget=8000, seed=3)
    args.update(kw)
    return estimate_optimal_constant(**args)


def test_reproducible():
    a, b = _run(), _run()
    assert a.best_ratio == b.best_ratio and a.witness == b.witness


def test_jobs_do_not_change_result():
    a, b = _run(jobs=1), _run(jobs=2)
    assert a.to_json_dict() == b.to_json_dict()


def test_history_non_increasing_and_verified():
    r = _run()
    assert r.history == sorted(r.history, reverse=True)
    assert r.exact_ratio >= 1
    assert abs(float(r.exact_ratio) - r.best_ratio) <= 1e-12 * r.best_ratio


def test_family_i_reaches_equality_region():
    r = estimate_optimal_constant("t14-i", 8, 1, 1, budget=40_000, seed=1)
    assert 1 <= r.best_ratio <= 1.01


def test_family_v_squared():
    r = estimate_optimal_constant("v", 8, 1, 2, budget=8000, seed=2)
    assert r.squared and r.exact_ratio >= 1
    assert "exact_ratio_squared" in r.to_json_dict()


def test_probe_falls_towards_zero():
    r = estimate_optimal_constant("probe", 6, 1, 3, h=1, budget=20_000, seed=4)
    assert r.best_ratio < 1e-2


@pytest.mark.parametrize("kw", [
    dict(family="t14-i", n=8, k=3, l=4),
    dict(family="t14-iii", n=7, k=1, l=2, h=2),
    dict(family="t14-v", n=7, k=1, l=1),
    dict(family="probe", n=6, k=1, l=3, h=None),
    dict(family="probe", n=6, k=1, l=5, h=2),
])
def test_invalid_indices(kw):
    with pytest.raises(IndexRangeError):
        estimate_optimal_constant(budget=100, **kw)


def test_rejects_non_search_families():
    with pytest.raises(ValueError):
        estimate_optimal_constant("newton", 6, 1, 1, budget=100)
    with pytest.raises(ValueError):
        estimate_optimal_constant("t14-i", 8, 1, 1, budget=0)


def _fake(result: SearchResult, ratio: float, list_json=None) -> SearchResult:
    from dataclasses import replace

    from newtonineq.esf import SelfConjugateList

    witness = result.witness if list_json is None else SelfConjugateList.from_json(list_json)
    return replace(result, best_ratio=ratio, witness=witness)


def test_corpus_add_replace_duplicate(tmp_path):
    store = tmp_path / "corpus.jsonl"
    r = _run(budget=2000)
    assert witness_corpus_update(r, store) == "added"
    assert witness_corpus_update(r, store) == "unchanged"
    worse = _fake(r, r.best_ratio + 1, '{"pairs": [[1, 1]], "reals": [1, 2, 3, 4, 5]}')
    assert witness_corpus_update(worse, store) == "unchanged"
    better = _fake(r, r.best_ratio / 2, '{"pairs": [[1, 2]], "reals": [1, 2, 3, 4, 5]}')
    assert witness_corpus_update(better, store) == "replaced"
    lines = store.read_text().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["list"]["pairs"] == [["1", "2"]]
    other = estimate_optimal_constant("t14-i", 8, 1, 1, budget=2000, seed=0)
    assert witness_corpus_update(other, store) == "added"
    assert len(store.read_text().splitlines()) == 2


def test_corrupt_corpus(tmp_path):
    store = tmp_path / "corpus.jsonl"
    store.write_text("{not json\n")
    with pytest.raises(CorpusError):
        witness_corpus_update(_run(budget=2000), store)
    assert store.read_text() == "{not json\n"
