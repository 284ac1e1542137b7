import itertools
import random

import pytest
from hypothesis import given, strategies as st

from almostkneser.constructions import ex51_family, ex52_family, star_family
from almostkneser.core import Family, ParameterError, k_subset_masks
from almostkneser.predicates import (
    Outcome,
    check_lemma32_bounds,
    check_lemma33_bound,
    check_prop31_bound,
    covering_number,
    defect_set,
    is_maximal,
    is_s_almost_t_intersecting,
    is_t_cover,
    is_t_intersecting,
    kneser_adjacency,
    kneser_edge_check,
    lemma33_limit,
    restrict,
    tau,
)
from almostkneser.sampling import random_s_almost


def fam(sets, n, k=None):
    return Family.from_sets(sets, n, k)


def oracle_tau(f, t):
    """Smallest T over all subsets of [n] (support not assumed)."""
    for size in range(f.n + 1):
        hits = []
        for combo in itertools.combinations(range(1, f.n + 1), size):
            if all(len(set(combo) & set(F)) >= t for F in f.sets()):
                hits.append(frozenset(combo))
        if hits:
            return size, set(hits)
    return None, set()


def oracle_almost(f, t, s):
    sets = [set(F) for F in f.sets()]
    return all(sum(len(a & b) < t for b in sets) <= s for a in sets)


def test_t_intersecting_examples():
    assert is_t_intersecting(fam([[1, 2], [1, 3], [1, 4]], 4), 1)
    assert not is_t_intersecting(Family.complete(4, 2), 1)
    assert is_t_intersecting(Family([], 4, 2), 3)
    assert is_t_intersecting(fam([[1, 2]], 4), 2)


def test_defect_set_examples():
    f = Family.complete(4, 2)
    assert defect_set(f, [1, 2], 1) == fam([[3, 4]], 4)
    assert len(defect_set(star_family(6, 3, 2).family, [1, 2, 3], 2)) == 0


def test_s_almost_examples():
    f51 = ex51_family(None, 2).family  # 3-sets of [5] through 1
    assert is_s_almost_t_intersecting(f51, 2, 1)[0]
    assert not is_s_almost_t_intersecting(f51, 2, 0)[0]
    assert is_s_almost_t_intersecting(Family.complete(5, 2), 1, 3)[0]
    assert not is_s_almost_t_intersecting(Family.complete(5, 2), 1, 2)[0]


def test_defect_report_contents():
    ok, rep = is_s_almost_t_intersecting(Family.complete(4, 2), 1, 1)
    assert ok and rep.max_defect == 1
    assert set(rep.degrees.values()) == {1}
    assert rep.to_json_obj()["max_defect"] == 1


def test_kneser_perfect_matching():
    adj = kneser_adjacency(Family.complete(4, 2), 1)
    assert (adj.sum(axis=1) == 1).all()
    assert not adj.diagonal().any()


def test_kneser_star_edgeless():
    assert not kneser_adjacency(star_family(7, 3, 2).family, 2).any()


def test_restrict_examples():
    f = Family.complete(4, 2)
    assert restrict(f, [1]) == fam([[1, 2], [1, 3], [1, 4]], 4)
    assert restrict(f, []) == f
    star = star_family(6, 3, 2).family
    assert restrict(star, [1, 2]) == star


def test_is_t_cover_examples():
    star = star_family(6, 3, 2).family
    assert is_t_cover([1, 2], star, 2)
    f = fam([[1, 2, 3], [1, 4, 5]], 5)
    assert not is_t_cover([1, 2, 3], f, 2)
    assert not is_t_cover([], f, 1)


def test_tau_examples_against_oracle():
    star = star_family(6, 3, 2).family
    assert tau(star, 2) == 2 == oracle_tau(star, 2)[0]
    for t in (1, 2, 3):
        a = list(range(1, t + 2))
        b = list(range(1, t)) + list(range(t + 2, t + 4))
        f = fam([a, b], t + 4)
        assert tau(f, t) == t + 1 == oracle_tau(f, t)[0]
    # every 2-set misses its complementary pair, so three points are needed
    c42 = Family.complete(4, 2)
    assert oracle_tau(c42, 1)[0] == 3
    assert tau(c42, 1) == 3


def test_covering_number_empty_and_cap():
    with pytest.raises(ParameterError):
        covering_number(Family([], 4, 2), 1)
    res = covering_number(Family.complete(5, 2), 1, witness_cap=2)
    assert res.tau == 4 and res.truncated and len(res.witnesses) == 2


@given(st.integers(0, 10**9))
def test_covering_number_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    k = rng.randint(1, n)
    t = rng.randint(1, k)
    pool = list(k_subset_masks(n, k))
    f = Family(rng.sample(pool, rng.randint(1, min(8, len(pool)))), n, k)
    size, covers = oracle_tau(f, t)
    res = covering_number(f, t, witness_cap=10**6)
    assert res.tau == size
    assert {frozenset(w) for w in res.witness_sets()} == covers


@given(st.integers(0, 10**9))
def test_s_almost_matches_definition_and_kneser(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    k = rng.randint(1, n)
    t = rng.randint(1, k)
    s = rng.randint(0, 4)
    pool = list(k_subset_masks(n, k))
    f = Family(rng.sample(pool, rng.randint(0, min(14, len(pool)))), n, k)
    got = is_s_almost_t_intersecting(f, t, s)[0]
    assert got == oracle_almost(f, t, s) == kneser_edge_check(f, t, s)
    assert is_t_intersecting(f, t) == oracle_almost(f, t, 0)


def test_maximality():
    assert is_maximal(Family.complete(4, 2), 1, 1)
    assert not is_maximal(fam([[1, 2]], 4), 1, 1)


def test_bound_examples():
    assert check_lemma32_bounds(ex51_family(None, 1).family, 1, 1) is Outcome.HOLDS
    f52 = ex52_family(None, 1).family
    assert check_lemma32_bounds(f52, 1, 3) is Outcome.HOLDS
    # t-intersecting families are outside the lemma
    assert check_lemma32_bounds(star_family(5, 2, 1).family, 1, 1) is Outcome.SKIPPED
    assert lemma33_limit(3, 1, 2) == 2 * 20


def test_prop31_skips_and_holds():
    assert check_prop31_bound(star_family(12, 2, 1).family, 1, 1) is Outcome.SKIPPED
    rng = random.Random(5)
    seen = 0
    for _ in range(300):
        f = random_s_almost(8, 2, 1, 1, rng, max_size=rng.randint(3, 12))
        out = check_prop31_bound(f, 1, 1, [rng.randint(1, 8)] if rng.random() < 0.5 else [])
        assert out is not Outcome.VIOLATED
        seen += out is Outcome.HOLDS
    assert seen > 0


def test_lemma33_random():
    rng = random.Random(11)
    seen = 0
    for _ in range(200):
        n = rng.randint(4, 9)
        f = random_s_almost(n, 2, 1, 2, rng, max_size=rng.randint(3, 14))
        out = check_lemma33_bound(f, 1, 2)
        assert out is not Outcome.VIOLATED
        seen += out is Outcome.HOLDS
    assert seen > 0
