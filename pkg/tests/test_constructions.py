import random

import pytest

from almostkneser.constructions import (
    THM3_CASES,
    applicable_thm3_cases,
    build,
    ex51_family,
    ex52_family,
    ex53_family,
    hm_family,
    star_family,
    thm3_family,
)
from almostkneser.core import Family, ParameterError, binomial
from almostkneser.predicates import is_s_almost_t_intersecting, is_t_intersecting


def test_small_examples():
    assert ex51_family(4, 1).family == Family.complete(4, 2)
    assert ex52_family(5, 1).family == Family.complete(5, 2)
    assert len(ex53_family(None, 1, 2).family) == 7
    assert len(ex53_family(9, 1, 2).family) == 7
    assert len(thm3_family("iv", 1, 6).family) == binomial(6, 2) == 15
    assert len(thm3_family("vi", 1, 5).family) == 13


@pytest.mark.parametrize("t", [1, 2, 3])
def test_examples_claims(t):
    for nc in (ex51_family(None, t), ex52_family(None, t)):
        assert nc.check()["claims_hold"]
    for s in range(1, 8):
        nc = ex53_family(None, t, s)
        assert len(nc.family) == 2 * s + 3
        assert nc.check()["claims_hold"]


def test_embedding_preserves_members():
    small = ex52_family(None, 2).family
    big = ex52_family(10, 2).family
    assert big.n == 10 and big.sets() == small.sets()
    with pytest.raises(ParameterError):
        ex52_family(4, 2)


def test_thm3_cases_claims():
    for t in range(1, 5):
        for s in range(1, 8):
            for case in applicable_thm3_cases(t, s):
                nc = thm3_family(case, t, s)
                assert nc.check()["claims_hold"], (case, t, s)


def test_thm3_side_conditions():
    with pytest.raises(ParameterError):
        thm3_family("iii", 1, 3)
    with pytest.raises(ParameterError):
        thm3_family("v", 2, 6)
    with pytest.raises(ParameterError):
        thm3_family("vii", 1, 2)
    with pytest.raises(ParameterError):
        thm3_family("viii", 1, 1)
    assert applicable_thm3_cases(1, 6) == ["iv", "vi"]
    assert applicable_thm3_cases(3, 3) == ["ii", "iii"]
    assert set(applicable_thm3_cases(3, 6)) == {"iv", "v", "vi"}
    assert set(THM3_CASES) >= set(applicable_thm3_cases(4, 2))


def test_star_is_t_intersecting():
    nc = star_family(8, 4, 2)
    assert len(nc.family) == binomial(6, 2)
    assert is_t_intersecting(nc.family, 2)
    big = star_family(60, 6, 2)
    assert big.family is None and big.predicted_size == binomial(58, 4)


def test_hm_examples():
    nc = hm_family(7, 3, 1, 1)
    assert len(nc.family) == 14 == nc.predicted_size
    for n in range(4, 13):
        for k in range(2, 5):
            for t in range(1, k):
                for s in (1, 2, 3):
                    if n < 2 * k - t + s:
                        continue
                    f = hm_family(n, k, t, s).family
                    assert is_s_almost_t_intersecting(f, t, s)[0]
                    assert not is_t_intersecting(f, t)


def test_hm_seeded_choices_are_deterministic():
    a = hm_family(10, 3, 1, 2, 7, 7).family
    b = hm_family(10, 3, 1, 2, 7, 7).family
    assert a == b
    for seed in range(10):
        f = hm_family(10, 3, 2, 2, seed, seed).family
        assert is_s_almost_t_intersecting(f, 2, 2)[0]


def test_hm_hypothesis():
    with pytest.raises(ParameterError):
        hm_family(5, 3, 1, 1)


def test_build_dispatch():
    assert build("ex51", None, None, 1, 1).family == Family.complete(4, 2)
    assert build("THM3_ii", 8, None, 1, 3).family.n == 8
    assert len(build("HM", 7, 3, 1, 1, seed=3).family) == 14
    with pytest.raises(ParameterError):
        build("nope", None, None, 1, 1)
