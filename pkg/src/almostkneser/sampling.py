"""Random family generators for the property harnesses (seeded, reproducible)."""

from __future__ import annotations

import random

from .core import Family, k_subset_masks

DEFAULT_SEED = 20241216


def random_family(n: int, k: int, size: int, rng: random.Random) -> Family:
    pool = list(k_subset_masks(n, k))
    return Family(rng.sample(pool, min(size, len(pool))), n, k)


def random_s_almost(n: int, k: int, t: int, s: int, rng: random.Random,
                    max_size: int | None = None, pool: list[int] | None = None) -> Family:
    """Random greedy s-almost t-intersecting family.

    Candidates are tried in random order and kept when no defect degree
    exceeds ``s``. Without ``max_size`` the result is maximal.
    """
    cands = list(pool) if pool is not None else list(k_subset_masks(n, k))
    rng.shuffle(cands)
    members: list[int] = []
    deg: list[int] = []
    for c in cands:
        if max_size is not None and len(members) >= max_size:
            break
        hits = [i for i, m in enumerate(members) if (m & c).bit_count() < t]
        if len(hits) <= s and all(deg[i] < s for i in hits):
            for i in hits:
                deg[i] += 1
            members.append(c)
            deg.append(len(hits))
    return Family(members, n, k)


def random_subset_mask(n: int, rng: random.Random, max_size: int | None = None) -> int:
    size = rng.randint(0, n if max_size is None else min(n, max_size))
    return sum(1 << i for i in rng.sample(range(n), size))


def random_permutation(n: int, rng: random.Random) -> list[int]:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return p
