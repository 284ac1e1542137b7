import math
import random

import pytest
from hypothesis import given, strategies as st

from almostkneser.core import (
    Family,
    FamilyFormatError,
    KSubset,
    ParameterError,
    Params,
    apply_permutation,
    binomial,
    enumerate_k_subsets,
    intersection_size,
    k_subset_masks,
)


def ks(elems, n):
    return KSubset.of(elems, n)


def test_intersection_size_examples():
    assert intersection_size(ks([1, 2], 4), ks([3, 4], 4)) == 0
    assert intersection_size(ks([1, 2, 3], 3), ks([1, 2, 3], 3)) == 3
    assert intersection_size(ks([1, 2, 5], 6), ks([2, 5, 6], 6)) == 2


def test_intersection_size_ground_mismatch():
    with pytest.raises(ParameterError):
        intersection_size(ks([1, 2], 4), ks([1, 2], 5))


def test_ksubset_validation():
    with pytest.raises(ParameterError):
        ks([0, 1], 4)
    with pytest.raises(ParameterError):
        ks([1, 5], 4)
    with pytest.raises(ParameterError):
        ks([1], 65)
    assert ks([3, 1], 4).elements() == (1, 3)


def test_enumerate_examples():
    assert [s.elements() for s in enumerate_k_subsets(3, 2)] == [(1, 2), (1, 3), (2, 3)]
    assert len(list(enumerate_k_subsets(4, 2))) == 6
    assert [s.elements() for s in enumerate_k_subsets(5, 5)] == [(1, 2, 3, 4, 5)]


def test_enumerate_order_and_errors():
    masks = list(k_subset_masks(9, 4))
    assert masks == sorted(masks) and len(set(masks)) == len(masks)
    with pytest.raises(ParameterError):
        list(enumerate_k_subsets(3, 4))
    with pytest.raises(ParameterError):
        list(enumerate_k_subsets(65, 2))


@pytest.mark.parametrize("n", range(1, 21))
def test_enumerate_count_matches_binomial(n):
    for k in range(1, n + 1):
        if binomial(n, k) <= 50_000:
            assert sum(1 for _ in k_subset_masks(n, k)) == binomial(n, k)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(7, 0) == 1
    # independent factorial ratio
    assert binomial(52, 5) == math.factorial(52) // (math.factorial(5) * math.factorial(47)) == 2598960
    with pytest.raises(ParameterError):
        binomial(5, -1)


@given(st.integers(1, 200), st.integers(1, 200))
def test_pascal_small(n, r):
    if r <= n:
        assert binomial(n, r) == binomial(n - 1, r) + binomial(n - 1, r - 1)


@given(st.integers(10**6, 10**30), st.integers(1, 12))
def test_pascal_large(n, r):
    assert binomial(n, r) == binomial(n - 1, r) + binomial(n - 1, r - 1)


def test_family_canonical_sort_and_dedup():
    a = Family.from_sets([[2, 3], [1, 2]], 4, 2)
    b = Family.from_sets([[1, 2], [2, 3]], 4, 2)
    assert a == b and hash(a) == hash(b)
    assert [m.elements() for m in a.members] == [(1, 2), (2, 3)]
    # a family is a set; only the file format insists on distinct entries
    assert len(Family.from_sets([[1, 2], [1, 2]], 4, 2)) == 1
    with pytest.raises(FamilyFormatError):
        Family.from_json('{"n": 4, "k": 2, "members": [[1, 2], [1, 2]]}')
    with pytest.raises((FamilyFormatError, ParameterError)):
        Family.from_sets([[1, 2, 3]], 4, 2)


def test_family_json_roundtrip():
    f = Family.from_sets([[1, 3], [2, 4], [1, 2]], 5, 2)
    obj = f.to_json_obj()
    assert obj == {"n": 5, "k": 2, "members": [[1, 2], [1, 3], [2, 4]]}
    assert Family.from_json(f.to_json()) == f


@pytest.mark.parametrize("text", [
    '{"n": 4, "k": 2, "members": [[1,2]',
    '{"n": 4, "k": 2}',
    '{"n": 4, "k": 2, "members": [[1,5]]}',
    '{"n": 4, "k": 2, "members": [[1,1]]}',
    '{"n": "4", "k": 2, "members": []}',
    '[]',
])
def test_family_json_malformed(text):
    with pytest.raises(FamilyFormatError):
        Family.from_json(text)


def test_apply_permutation_examples():
    f = Family.from_sets([[1, 2], [1, 3]], 3, 2)
    assert apply_permutation(f, [1, 2, 3]) == f
    assert apply_permutation(f, {1: 2, 2: 1, 3: 3}) == Family.from_sets([[1, 2], [2, 3]], 3, 2)
    with pytest.raises(ParameterError):
        apply_permutation(f, [1, 1, 3])
    with pytest.raises(ParameterError):
        apply_permutation(f, [1, 2])


def _intersection_profile(f):
    ms = f.masks
    return sorted((a & b).bit_count() for i, a in enumerate(ms) for b in ms[i + 1:])


@given(st.integers(2, 9), st.integers(0, 10**9))
def test_permutation_preserves_structure(n, seed):
    rng = random.Random(seed)
    k = rng.randint(1, n)
    pool = list(k_subset_masks(n, k))
    f = Family(rng.sample(pool, rng.randint(0, min(len(pool), 12))), n, k)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    g = apply_permutation(f, perm)
    assert len(g) == len(f) and g.k == f.k
    assert _intersection_profile(g) == _intersection_profile(f)


@given(st.integers(1, 12), st.integers(0, 10**9))
def test_intersection_symmetry(n, seed):
    rng = random.Random(seed)
    k = rng.randint(1, n)
    pool = list(k_subset_masks(n, k))
    a, b = KSubset(rng.choice(pool), n), KSubset(rng.choice(pool), n)
    assert intersection_size(a, b) == intersection_size(b, a)
    assert intersection_size(a, a) == k


def test_params_validation():
    Params(5, 3, 2, 0)
    for bad in [(3, 4, 1, 0), (5, 3, 4, 0), (5, 3, 0, 0), (5, 3, 1, -1)]:
        with pytest.raises(ParameterError):
            Params(*bad)
