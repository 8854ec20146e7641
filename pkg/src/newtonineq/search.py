"""Randomised estimation of the best constant in ``e_k e_l >= C e_{k-h} e_{l+h}``.

Restarts draw a random structure (number of pairs) and a log-uniform
starting point, then run the multiplicative coordinate descent from
``kernels.descend``.  The winner is converted to exact rationals and
re-checked; a proven family beaten below 1 aborts the run.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .esf import SelfConjugateList, elem_sym_all
from .inequalities import T14, IndexRangeError, family_constant, family_name, in_range_indices, t14_indices
from .scalar import format_rational

PROBE = "probe"
DELTA_START = 0.5
DELTA_END = 1e-4
MATCH_TOL = 1e-12
_MAX_RESTARTS = 32
_MIN_ITERS = 2000


class SoundnessError(AssertionError):
    """An exactly verified witness beat a proven constant."""


class CorpusError(RuntimeError):
    """The witness store could not be read or written."""


@dataclass
class SearchResult:
    family: str
    n: int
    k: int
    l: int
    h: int
    best_ratio: float
    witness: SelfConjugateList
    exact_ratio: Fraction
    iterations: int
    seed: int
    restarts: int
    squared: bool = False
    history: list = field(default_factory=list)

    @property
    def key(self) -> str:
        return f"{self.family}:n={self.n}:k={self.k}:l={self.l}:h={self.h}"

    def to_json_dict(self) -> dict:
        return {
            "family": self.family, "n": self.n, "k": self.k, "l": self.l, "h": self.h,
            "best_ratio": self.best_ratio,
            "exact_ratio" + ("_squared" if self.squared else ""): format_rational(self.exact_ratio),
            "witness": self.witness.to_json_dict(),
            "iterations": self.iterations, "seed": self.seed, "restarts": self.restarts,
        }


def _objective(family: str, n: int, k: int, l: int, h: int | None):
    """(lhs indices, rhs indices, h, squared constant or plain constant, squared?)."""
    if family == PROBE:
        if h is None or h < 1:
            raise IndexRangeError("probe needs h >= 1")
        if not (1 <= k <= l and k - h >= 0 and l + h <= n):
            raise IndexRangeError(f"probe indices (k={k}, l={l}, h={h}) out of range for n={n}")
        return (k, l), (k - h, l + h), h, Fraction(1), False
    if (k, l) not in set(in_range_indices(family, n)):
        raise IndexRangeError(f"{family}: (k={k}, l={l}) out of range for n={n}")
    lhs, rhs, fh = t14_indices(family, k, l)
    if h is not None and h != fh:
        raise IndexRangeError(f"{family} has h={fh}, got {h}")
    if family == "t14-v" and n % 2:
        raise IndexRangeError("family v needs reals at even multiplicity, impossible for odd n")
    return lhs, rhs, fh, family_constant(n, k, l, family), family == "t14-v"


def _structures(family: str, n: int) -> list[int]:
    """Admissible pair counts m (reals s = n - 2m)."""
    if family == "t14-v":
        return [n // 2]
    return list(range(0, n // 2 + 1))


def _restart(task):
    family, n, lhs, rhs, const_f, iters, seed, r = task
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed & 0xFFFFFFFF, seed >> 32 & 0xFFFFFFFF, r])))
    structures = _structures(family, n)
    m = structures[r % len(structures)]
    s = n - 2 * m
    x0 = [float(v) for v in 2.0 ** rng.uniform(-4, 4, size=2 * m + s)]
    sub_seed = int(rng.integers(0, 2**63))
    x, best, _, trace = kernels.descend(x0, m, s, lhs, rhs, const_f, iters, DELTA_START, DELTA_END, sub_seed,
                                        max(iters // 50, 1))
    return r, m, s, x, best, trace


def _exact_list(x, m: int, s: int) -> SelfConjugateList:
    return SelfConjugateList(
        pairs=[(Fraction(x[i]), Fraction(x[m + i])) for i in range(m)],
        reals=[Fraction(v) for v in x[2 * m:2 * m + s]],
    )


def _exact_ratio(X: SelfConjugateList, lhs, rhs, const: Fraction, squared: bool):
    seq = elem_sym_all(X)
    num = Fraction(seq.product(lhs))
    den = Fraction(seq.product(rhs))
    if den == 0:
        return None
    if squared:
        return num * num / (const * den * den)
    return num / (const * den)


def estimate_optimal_constant(family: str, n: int, k: int, l: int, h: int | None = None,
                              budget: int = 100_000, seed: int = 0, jobs: int = 1) -> SearchResult:
    """Smallest ratio LHS / (C * RHS) found within ``budget`` descent steps.

    ``family`` is one of the families i..v (C is the proven constant)
    or ``"probe"``, which uses C = 1 with explicit k, l, h.  Family v uses
    the square root of its squared constant in the float objective; the
    exact check is squared.  The result is identical for any ``jobs``.
    """
    family = PROBE if family == PROBE else family_name(family)
    if family not in T14 and family != PROBE:
        raise ValueError(f"search supports families i..v and '{PROBE}', not {family}")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    lhs, rhs, h, const, squared = _objective(family, n, k, l, h)
    const_f = math.sqrt(float(const)) if squared else float(const)
    restarts = max(1, min(_MAX_RESTARTS, budget // _MIN_ITERS))
    per = [budget // restarts + (1 if r < budget % restarts else 0) for r in range(restarts)]
    tasks = [(family, n, lhs, rhs, const_f, per[r], seed, r) for r in range(restarts)]
    if jobs > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(_restart, tasks))
    else:
        outs = [_restart(t) for t in tasks]
    outs.sort(key=lambda o: o[0])

    history: list[float] = []
    running = math.inf
    for _, _, _, _, best, trace in outs:
        for v in trace:
            running = min(running, v)
            history.append(running)
        running = min(running, best)

    candidates = []
    for r, m, s, x, best, _ in outs:
        if not math.isfinite(best):
            continue
        X = _exact_list(x, m, s)
        exact = _exact_ratio(X, lhs, rhs, const, squared)
        if exact is None:
            continue
        value = math.sqrt(float(exact)) if squared else float(exact)
        if not math.isclose(value, best, rel_tol=MATCH_TOL, abs_tol=MATCH_TOL):
            raise AssertionError(f"float objective {best!r} disagrees with exact {value!r}")
        if family in T14 and exact < 1:
            raise SoundnessError(f"{family} violated by exact witness {X.to_json()}")
        candidates.append((exact, X.to_json(), X, value))
    if not candidates:
        raise RuntimeError("search found no point with a positive right-hand side")
    exact, _, X, value = min(candidates, key=lambda c: (c[0], c[1]))
    return SearchResult(family, n, k, l, h, value, X, exact, sum(per), seed, restarts, squared, history)


# --- witness corpus ----------------------------------------------------------------

def _load_corpus(path) -> list[dict]:
    if not os.path.exists(path):
        return []
    entries = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                doc = json.loads(line)
                if not isinstance(doc, dict) or not {"key", "list", "ratio_decimal", "seed"} <= set(doc):
                    raise ValueError(f"line {lineno}: missing fields")
                SelfConjugateList.from_json_dict(doc["list"])
                entries.append(doc)
    except (OSError, ValueError) as exc:
        raise CorpusError(f"cannot load witness corpus {path}: {exc}") from exc
    return entries


def witness_corpus_update(result: SearchResult, store) -> str:
    """Record ``result`` in the JSON-lines store; one entry per key.

    Returns ``"added"``, ``"replaced"`` (strictly better ratio) or
    ``"unchanged"`` (duplicate or not better).
    """
    entries = _load_corpus(store)
    doc = {
        "key": result.key,
        "list": result.witness.to_json_dict(),
        "ratio_decimal": repr(result.best_ratio),
        "seed": result.seed,
    }
    status = "added"
    for i, old in enumerate(entries):
        if old["key"] != doc["key"]:
            continue
        if old["list"] == doc["list"] or float(old["ratio_decimal"]) <= result.best_ratio:
            return "unchanged"
        entries[i] = doc
        status = "replaced"
        break
    else:
        entries.append(doc)
    directory = os.path.dirname(os.path.abspath(store))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".corpus-")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for e in entries:
                fh.write(json.dumps(e, sort_keys=True) + "\n")
        os.replace(tmp, store)
    except OSError as exc:
        raise CorpusError(f"cannot write witness corpus {store}: {exc}") from exc
    return status
