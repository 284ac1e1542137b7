"""Intersection predicates, defect sets, t-covers and the restriction bounds.

Bound checks return an :class:`Outcome` rather than a bare bool so that a
sweep can tell "inequality violated" apart from "hypothesis not met".
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Family,
    KSubset,
    ParameterError,
    as_mask,
    binomial,
    elements_of,
    k_subset_masks,
)

DEFAULT_WITNESS_CAP = 1000


class Outcome(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    SKIPPED = "skipped"

    def __bool__(self) -> bool:
        return self is not Outcome.VIOLATED


@dataclass
class DefectReport:
    """Per-member defect degrees ``|{F' != F : |F' ∩ F| < t}|``."""

    t: int
    degrees: dict[KSubset, int]
    max_defect: int
    maximizer: KSubset | None
    witnesses: list[KSubset] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "t": self.t,
            "max_defect": self.max_defect,
            "maximizer": list(self.maximizer.elements()) if self.maximizer else None,
            "witnesses": [list(w.elements()) for w in self.witnesses],
            "degrees": [
                {"member": list(m.elements()), "defect": d}
                for m, d in sorted(self.degrees.items(), key=lambda kv: kv[0].elements())
            ],
        }


@dataclass
class CoverResult:
    """Minimum t-covers of a family; ``witnesses`` holds masks over ``[n]``."""

    t: int
    tau: int
    witnesses: list[int]
    truncated: bool
    n: int

    def witness_sets(self) -> list[tuple[int, ...]]:
        return sorted(elements_of(w) for w in self.witnesses)

    def to_json_obj(self) -> dict:
        return {
            "t": self.t,
            "tau": self.tau,
            "truncated": self.truncated,
            "witnesses": [list(w) for w in self.witness_sets()],
        }


def dumps_report(obj) -> str:
    return json.dumps(obj.to_json_obj(), sort_keys=False)


def is_t_intersecting(f: Family, t: int) -> bool:
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    ms = f.masks
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if (a & b).bit_count() < t:
                return False
    return True


def defect_set(f: Family, h, t: int) -> Family:
    """Members meeting ``h`` in fewer than ``t`` elements."""
    hm = as_mask(h, f.n)
    return Family((m for m in f.masks if (m & hm).bit_count() < t), f.n, f.k)


def defect_degrees(f: Family, t: int) -> list[int]:
    ms = f.masks
    deg = [0] * len(ms)
    for i, a in enumerate(ms):
        for j in range(i + 1, len(ms)):
            if (a & ms[j]).bit_count() < t:
                deg[i] += 1
                deg[j] += 1
    return deg


def is_s_almost_t_intersecting(f: Family, t: int, s: int) -> tuple[bool, DefectReport]:
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    if s < 0:
        raise ParameterError(f"s must be >= 0, got {s}")
    deg = defect_degrees(f, t)
    members = f.members
    degrees = dict(zip(members, deg))
    if not members:
        return True, DefectReport(t, degrees, 0, None, [])
    best = max(range(len(deg)), key=lambda i: (deg[i], -i))
    top = members[best]
    witnesses = [m for m in members if m != top and (m.bits & top.bits).bit_count() < t]
    report = DefectReport(t, degrees, deg[best], top, witnesses)
    return deg[best] <= s, report


def kneser_adjacency(f: Family, t: int) -> np.ndarray:
    """Adjacency matrix of ``K(n, k, t)`` induced on the family."""
    ms = np.asarray(f.masks, dtype=np.uint64)
    inter = np.bitwise_count(ms[:, None] & ms[None, :])
    adj = inter < t
    np.fill_diagonal(adj, False)
    return adj


def kneser_edge_check(f: Family, t: int, s: int) -> bool:
    """True iff the induced Kneser subgraph has maximum degree at most ``s``."""
    if len(f) == 0:
        return True
    adj = kneser_adjacency(f, t)
    return int(adj.sum(axis=1).max()) <= s


def restrict(f: Family, h) -> Family:
    """Members containing ``h``."""
    hm = as_mask(h, f.n)
    return Family((m for m in f.masks if m & hm == hm), f.n, f.k)


def is_t_cover(tset, f: Family, t: int) -> bool:
    tm = as_mask(tset, f.n)
    return all((tm & m).bit_count() >= t for m in f.masks)


def covering_number(f: Family, t: int, witness_cap: int = DEFAULT_WITNESS_CAP) -> CoverResult:
    """Minimum t-cover size by iterative deepening over subsets of the support.

    Elements outside the support never help, so a minimum cover always lies
    inside it.
    """
    if len(f) == 0:
        raise ParameterError("covering number of an empty family is undefined")
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    if t > f.k:
        raise ParameterError(f"no {t}-cover exists for a {f.k}-uniform family")
    union = f.support()
    bits = [1 << i for i in range(union.bit_length()) if union >> i & 1]
    ms = f.masks
    for size in range(t, len(bits) + 1):
        found: list[int] = []
        truncated = False
        for combo in itertools.combinations(bits, size):
            cand = sum(combo)
            for m in ms:
                if (cand & m).bit_count() < t:
                    break
            else:
                if len(found) < witness_cap:
                    found.append(cand)
                else:
                    truncated = True
                    break
        if found:
            return CoverResult(t, size, found, truncated, f.n)
    raise AssertionError("support of the family is always a t-cover")  # pragma: no cover


def tau(f: Family, t: int) -> int:
    return covering_number(f, t, witness_cap=1).tau


def check_prop31_bound(f: Family, t: int, s: int, h=()) -> Outcome:
    """Restriction bound for families with ``t + 1 <= tau_t <= k``.

    Applies only under the proposition's hypotheses: ``k >= t + 1``,
    ``n >= (t+1)(k-t+1)^2``, the family s-almost t-intersecting and
    ``|h| < tau_t``.
    """
    n, k = f.n, f.k
    if s < 1 or k < t + 1 or n < (t + 1) * (k - t + 1) ** 2 or len(f) == 0:
        return Outcome.SKIPPED
    if not is_s_almost_t_intersecting(f, t, s)[0]:
        return Outcome.SKIPPED
    tt = tau(f, t)
    hm = as_mask(h, n)
    hsize = hm.bit_count()
    if not (t + 1 <= tt <= k) or hsize >= tt:
        return Outcome.SKIPPED
    q = k - t + 1
    e = tt - hsize
    bound = q**e * binomial(n - tt, k - tt) + sum(s * q**i for i in range(e))
    return Outcome.HOLDS if len(restrict(f, hm)) <= bound else Outcome.VIOLATED


def _min_pairwise_intersection(f: Family) -> int | None:
    ms = f.masks
    best = None
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            c = (a & b).bit_count()
            if best is None or c < best:
                best = c
    return best


def check_lemma32_bounds(f: Family, t: int, s: int) -> Outcome:
    """Size bounds for (t+1)-uniform s-almost t-intersecting, non-t-intersecting families."""
    if f.k != t + 1 or f.n < t + 3 or s < 1:
        return Outcome.SKIPPED
    if not is_s_almost_t_intersecting(f, t, s)[0] or is_t_intersecting(f, t):
        return Outcome.SKIPPED
    low = _min_pairwise_intersection(f)
    limit = 2 * s + 4 if low >= t - 1 else 2 * s
    return Outcome.HOLDS if len(f) <= limit else Outcome.VIOLATED


def lemma33_limit(k: int, t: int, s: int) -> int:
    return s * binomial(2 * k - 2 * t + 2, k - t + 1)


def check_lemma33_bound(f: Family, t: int, s: int) -> Outcome:
    """``|F| <= s C(2k-2t+2, k-t+1)`` once ``tau_t >= k + 1``."""
    n, k = f.n, f.k
    if s < 1 or k < t + 1 or n < 2 * k or len(f) == 0:
        return Outcome.SKIPPED
    if not is_s_almost_t_intersecting(f, t, s)[0] or tau(f, t) < k + 1:
        return Outcome.SKIPPED
    return Outcome.HOLDS if len(f) <= lemma33_limit(k, t, s) else Outcome.VIOLATED


def is_maximal(f: Family, t: int, s: int) -> bool:
    """No k-subset of ``[n]`` outside ``f`` can be added keeping the s-almost property."""
    ms = f.masks
    present = set(ms)
    deg = defect_degrees(f, t)
    for c in k_subset_masks(f.n, f.k):
        if c in present:
            continue
        hits = [i for i, m in enumerate(ms) if (m & c).bit_count() < t]
        if len(hits) <= s and all(deg[i] < s for i in hits):
            return False
    return True
