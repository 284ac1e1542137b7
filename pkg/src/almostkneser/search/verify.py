"""Classification checks built on the search: matching extremal classes against
the listed shapes, and the minimum-cover property of maximal families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..constructions import applicable_thm3_cases, thm3_family
from ..core import Family, Params, ParameterError, binomial, k_subset_masks
from ..predicates import (
    Outcome,
    covering_number,
    defect_degrees,
    is_maximal,
    is_s_almost_t_intersecting,
)
from .canon import CanonicalForm, canonicalize
from .engine import DEFAULT_NODE_LIMIT, DEFAULT_VERTEX_CAP, SearchConfig, max_family


@dataclass
class Theorem3Verdict:
    t: int
    s: int
    n: int
    max_size: int | None
    exhausted: bool
    classes: list[CanonicalForm]
    matched: dict[str, list[str]]
    unmatched: list[CanonicalForm]
    expected_cases: list[str]
    case_sizes: dict[str, int]
    stats: dict = field(default_factory=dict)

    @property
    def matched_cases(self) -> list[str]:
        return sorted({c for cases in self.matched.values() for c in cases})

    @property
    def ok(self) -> bool:
        return self.exhausted and not self.unmatched and self.max_size is not None

    def csv_row(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "n": self.n,
            "max_size": "" if self.max_size is None else self.max_size,
            "classes": len(self.classes),
            "matched_cases": " ".join(self.matched_cases),
            "unmatched": len(self.unmatched),
            "exhausted": int(self.exhausted),
            "nodes": self.stats.get("nodes", 0),
        }

    def to_json_obj(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "n": self.n,
            "max_size": self.max_size,
            "exhausted": self.exhausted,
            "ok": self.ok,
            "classes": [str(c) for c in self.classes],
            "matched": self.matched,
            "unmatched": [str(c) for c in self.unmatched],
            "expected_cases": self.expected_cases,
            "case_sizes": self.case_sizes,
            "stats": self.stats,
        }


def theorem3_case_forms(t: int, s: int, n: int) -> dict[str, CanonicalForm]:
    return {c: canonicalize(thm3_family(c, t, s, n).family) for c in applicable_thm3_cases(t, s, n)}


def verify_theorem3(t: int, s: int, n: int, node_limit: int = DEFAULT_NODE_LIMIT,
                    time_limit: float | None = None, vertex_cap: int = DEFAULT_VERTEX_CAP,
                    root: str = "edge") -> Theorem3Verdict:
    """Search the maximum non-t-intersecting (t+1)-uniform families on ``[n]``
    and match each isomorphism class against the listed extremal shapes."""
    if t < 1 or s < 1:
        raise ParameterError(f"t and s must be positive, got t={t}, s={s}")
    if n < t + s + 2:
        raise ParameterError(f"classification needs n >= t+s+2 = {t + s + 2}, got n={n}")
    cfg = SearchConfig(
        Params(n, t + 1, t, s),
        require_not_t_intersecting=True,
        collect_all_extremal=True,
        node_limit=node_limit,
        time_limit=time_limit,
        vertex_cap=vertex_cap,
        root=root,
    )
    res = max_family(cfg)
    forms = theorem3_case_forms(t, s, n)
    sizes = {c: thm3_family(c, t, s, n).predicted_size for c in forms}
    matched: dict[str, list[str]] = {}
    unmatched = []
    for cls in res.canonical_classes:
        hits = [c for c, form in forms.items() if form == cls]
        if hits:
            matched[str(cls)] = hits
        else:
            unmatched.append(cls)
    return Theorem3Verdict(t, s, n, res.max_size, res.exhausted, res.canonical_classes,
                           matched, unmatched, sorted(forms), sizes, res.stats)


def theorem3_grid(t_max: int = 2, s_max: int = 4, n_extra: int = 2,
                  vertex_cap: int = DEFAULT_VERTEX_CAP):
    """``(t, s, n)`` points with ``t+s+2 <= n <= t+s+2+n_extra`` under the vertex cap.

    Yields ``(t, s, n, feasible)``; infeasible points are reported, not dropped.
    """
    for t in range(1, t_max + 1):
        for s in range(1, s_max + 1):
            for n in range(t + s + 2, t + s + 3 + n_extra):
                yield t, s, n, binomial(n, t + 1) <= vertex_cap


# minimum covers of maximal families -----------------------------------


def check_lemma41(f: Family, t: int, s: int, cover_cap: int = 1_000_000) -> Outcome:
    """Minimum t-covers of a maximal s-almost t-intersecting family with
    ``tau_t <= k`` pairwise meet in at least ``t`` points."""
    n, k = f.n, f.k
    if s < 1 or k < t + 2 or n < 2 * k + s or len(f) == 0:
        return Outcome.SKIPPED
    if not is_s_almost_t_intersecting(f, t, s)[0] or not is_maximal(f, t, s):
        return Outcome.SKIPPED
    cover = covering_number(f, t, witness_cap=cover_cap)
    if cover.tau > k:
        return Outcome.SKIPPED
    ws = cover.witnesses
    for i, a in enumerate(ws):
        for b in ws[i + 1:]:
            if (a & b).bit_count() < t:
                return Outcome.VIOLATED
    return Outcome.HOLDS


def extend_to_maximal(f: Family, t: int, s: int, rng: random.Random | None = None) -> Family:
    """Greedily add k-subsets (random order) while the s-almost property survives."""
    if not is_s_almost_t_intersecting(f, t, s)[0]:
        raise ParameterError("starting family is not s-almost t-intersecting")
    members = list(f.masks)
    deg = defect_degrees(f, t)
    pool = [m for m in k_subset_masks(f.n, f.k) if m not in set(members)]
    if rng is not None:
        rng.shuffle(pool)
    for c in pool:
        hits = [i for i, m in enumerate(members) if (m & c).bit_count() < t]
        if len(hits) <= s and all(deg[i] < s for i in hits):
            for i in hits:
                deg[i] += 1
            members.append(c)
            deg.append(len(hits))
    return Family(members, f.n, f.k)
