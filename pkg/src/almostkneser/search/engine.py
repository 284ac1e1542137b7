"""Exact maximum s-almost t-intersecting family search."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .. import _accel
from ..core import Family, Params, ParameterError, binomial, k_subset_masks
from . import _kernels as K
from .canon import CanonicalForm, canonicalize

DEFAULT_VERTEX_CAP = 40
DEFAULT_NODE_LIMIT = 50_000_000
DEFAULT_EXTREMAL_CAP = 100_000
_SLICE = 1 << 18

ROOT_MODES = ("none", "member", "edge")


class SearchRefused(ParameterError):
    """The instance is outside the feasibility caps."""


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`max_family`.

    ``root`` trades completeness of the extremal list for speed: ``"member"``
    forces ``[k]`` into the family and ``"edge"`` additionally forces a
    partner meeting ``[k]`` in ``j < t`` points (one run per ``j``). Every
    isomorphism class of maximum families still shows up, but only the
    representatives containing the root are listed.
    """

    params: Params
    require_not_t_intersecting: bool = False
    collect_all_extremal: bool = True
    node_limit: int = DEFAULT_NODE_LIMIT
    time_limit: float | None = None
    vertex_cap: int = DEFAULT_VERTEX_CAP
    extremal_cap: int = DEFAULT_EXTREMAL_CAP
    root: str = "none"
    forbidden: frozenset = frozenset()
    canonicalize: bool = True

    def __post_init__(self):
        if self.node_limit < 1:
            raise ParameterError("node_limit must be >= 1")
        if self.root not in ROOT_MODES:
            raise ParameterError(f"root must be one of {ROOT_MODES}")
        if self.root == "edge" and not self.require_not_t_intersecting:
            raise ParameterError("root='edge' only makes sense with require_not_t_intersecting")


@dataclass
class SearchResult:
    max_size: int | None
    extremal: list[Family]
    canonical_classes: list[CanonicalForm]
    stats: dict = field(default_factory=dict)
    exhausted: bool = True
    truncated: bool = False

    def to_json_obj(self) -> dict:
        return {
            "max_size": self.max_size,
            "exhausted": self.exhausted,
            "truncated": self.truncated,
            "n_extremal": len(self.extremal),
            "canonical_classes": [str(c) for c in self.canonical_classes],
            "stats": self.stats,
            "extremal": [f.to_json_obj()["members"] for f in self.extremal],
        }


def vertex_masks(n: int, k: int) -> np.ndarray:
    return np.fromiter(k_subset_masks(n, k), dtype=np.int64)


def _check_caps(p: Params, cap: int) -> int:
    if p.n > 64:
        raise SearchRefused(f"n={p.n} exceeds 64")
    nv = binomial(p.n, p.k)
    limit = min(cap, K.MAX_VERTICES)
    if nv > limit:
        raise SearchRefused(
            f"C({p.n},{p.k}) = {nv} candidate sets exceeds the vertex cap {limit}"
        )
    return nv


def _roots(cfg: SearchConfig, verts: list[int]) -> list[int]:
    """Initial selections (as vertex bitsets) for the configured rooting."""
    p = cfg.params
    index = {m: i for i, m in enumerate(verts)}
    if cfg.root == "none":
        return [0]
    first = (1 << p.k) - 1
    if cfg.root == "member":
        return [1 << index[first]]
    roots = []
    for j in range(p.t):
        if 2 * p.k - j > p.n:
            continue
        partner = ((1 << j) - 1) | (((1 << (p.k - j)) - 1) << p.k)
        roots.append((1 << index[first]) | (1 << index[partner]))
    return roots


class _Run:
    """One resumable kernel invocation."""

    def __init__(self, adj, s, require_edge, collect_all, root_sel, cand, cap):
        nv = adj.shape[0]
        self.adj = adj
        self.s = s
        self.require_edge = require_edge
        self.collect_all = collect_all
        self.stack_sel = np.zeros(nv + 3, dtype=np.int64)
        self.stack_cand = np.zeros(nv + 3, dtype=np.int64)
        self.stack_inc = np.zeros(nv + 3, dtype=np.int64)
        self.state = np.zeros(K.STATE_LEN, dtype=np.int64)
        self.solutions = np.zeros(cap, dtype=np.int64)
        self.stack_sel[0] = root_sel
        self.stack_cand[0] = cand
        self.stack_inc[0] = 1
        self.state[K.SP] = 1
        self.state[K.BEST] = -1
        self.state[K.BEST_ANY] = -1

    def step(self, budget: int) -> int:
        return K.search_kernel(
            self.adj, self.s, self.require_edge, self.collect_all,
            self.stack_sel, self.stack_cand, self.stack_inc,
            self.state, self.solutions, budget,
        )


def _feasible_root(adj: np.ndarray, sel: int, s: int) -> bool:
    x = sel
    while x:
        v = (x & -x).bit_length() - 1
        if int(adj[v] & sel).bit_count() > s:
            return False
        x &= x - 1
    return True


def max_family(cfg: SearchConfig) -> SearchResult:
    """Branch-and-bound for the largest s-almost t-intersecting k-uniform family.

    Candidates are visited in ascending bit-pattern order, include branch
    first. ``exhausted`` is true only when the whole tree was closed.
    """
    p = cfg.params
    nv = _check_caps(p, cfg.vertex_cap)
    started = time.perf_counter()
    verts = [int(m) for m in k_subset_masks(p.n, p.k)]
    masks = np.asarray(verts, dtype=np.int64)
    adj = K.kneser_adjacency_masks(masks, p.t)
    all_v = (1 << nv) - 1
    forbidden_bits = 0
    index = {m: i for i, m in enumerate(verts)}
    for f in cfg.forbidden:
        bits = f.bits if hasattr(f, "bits") else int(f)
        if bits in index:
            forbidden_bits |= 1 << index[bits]

    runs = []
    for root in _roots(cfg, verts):
        if root & forbidden_bits or not _feasible_root(adj, root, p.s):
            continue
        cand = int(K.feasible_candidates(adj, np.int64(root), np.int64(all_v & ~root & ~forbidden_bits), p.s))
        runs.append(
            _Run(adj, p.s, cfg.require_not_t_intersecting, cfg.collect_all_extremal,
                 root, cand, cfg.extremal_cap)
        )

    nodes_left = cfg.node_limit
    exhausted = True
    for run in runs:
        while True:
            if nodes_left <= 0:
                exhausted = False
                break
            if cfg.time_limit is not None and time.perf_counter() - started > cfg.time_limit:
                exhausted = False
                break
            budget = min(_SLICE, nodes_left)
            before = int(run.state[K.NODES])
            status = run.step(budget)
            nodes_left -= int(run.state[K.NODES]) - before
            if status == K.DONE:
                break
        if not exhausted:
            break

    best = max((int(r.state[K.BEST]) for r in runs), default=-1)
    sols: set[int] = set()
    truncated = False
    for r in runs:
        if int(r.state[K.BEST]) == best and best >= 0:
            cnt = int(r.state[K.COUNT])
            sols.update(int(x) for x in r.solutions[:cnt])
            truncated |= bool(r.state[K.OVERFLOW])
    extremal = []
    for sel in sorted(sols):
        members = [verts[i] for i in range(nv) if sel >> i & 1]
        extremal.append(Family(members, p.n, p.k))
    classes: list[CanonicalForm] = []
    if cfg.canonicalize:
        classes = sorted({canonicalize(f) for f in extremal}, key=lambda c: c.data)
    elapsed = time.perf_counter() - started
    stats = {
        "nodes": int(sum(r.state[K.NODES] for r in runs)),
        "prunes": int(sum(r.state[K.PRUNES] for r in runs)),
        "roots": len(runs),
        "wall_time": elapsed,
        "vertices": nv,
        "backend": _accel.backend_name(),
        "unconstrained_incumbent": max((int(r.state[K.BEST_ANY]) for r in runs), default=-1),
    }
    return SearchResult(best if best >= 0 else None, extremal, classes, stats, exhausted, truncated)


def brute_force_max(params: Params, require_not_t_intersecting: bool = False):
    """Oracle: scan all ``2^C(n,k)`` subfamilies with vectorized numpy.

    Returns ``(max_size, list of maximum families)``. Independent of the
    branch-and-bound kernels; meant for ``C(n, k) <= 20`` or so.
    """
    n, k, t, s = params.n, params.k, params.t, params.s
    verts = list(k_subset_masks(n, k))
    nv = len(verts)
    if nv > 22:
        raise SearchRefused(f"brute force over 2^{nv} subfamilies is too large")
    vm = np.asarray(verts, dtype=np.uint64)
    inter = np.bitwise_count(vm[:, None] & vm[None, :])
    kneser = (inter < t) & ~np.eye(nv, dtype=bool)
    adjm = (kneser.astype(np.uint64) << np.arange(nv, dtype=np.uint64)[None, :]).sum(axis=1)
    subsets = np.arange(1 << nv, dtype=np.uint64)
    ok = np.ones(subsets.shape, dtype=bool)
    edge = np.zeros(subsets.shape, dtype=bool)
    for v in range(nv):
        member = ((subsets >> np.uint64(v)) & np.uint64(1)).astype(bool)
        deg = np.bitwise_count(subsets & adjm[v])
        ok &= ~(member & (deg > s))
        edge |= member & (deg > 0)
    if require_not_t_intersecting:
        ok &= edge
    sizes = np.bitwise_count(subsets)
    if not ok.any():
        return None, []
    best = int(sizes[ok].max())
    winners = subsets[ok & (sizes == best)]
    fams = []
    for w in winners.tolist():
        fams.append(Family([verts[i] for i in range(nv) if w >> i & 1], n, k))
    return best, fams
