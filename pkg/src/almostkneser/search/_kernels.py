"""Bitset kernels for the maximum-family search.

Vertices are the candidate k-subsets, indexed 0..V-1 with V <= 63 so a set
of vertices fits a positive int64. ``adj[v]`` is the Kneser neighbourhood of
``v``: the vertices meeting it in fewer than ``t`` elements.

The search kernel is resumable: all DFS state lives in caller-owned arrays,
so the driver can run it in node-budget slices and check the wall clock in
between.
"""

from __future__ import annotations

import numpy as np

from .._accel import njit

MAX_VERTICES = 63

# state slots
SP = 0
BEST = 1
COUNT = 2
OVERFLOW = 3
NODES = 4
PRUNES = 5
BEST_ANY = 6
STATE_LEN = 7

# status codes
DONE = 0
PAUSED = 1


@njit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def lowbit_index(x):
    return popcount((x & -x) - 1)


@njit
def kneser_adjacency_masks(masks, t):
    nv = masks.shape[0]
    adj = np.zeros(nv, dtype=np.int64)
    for i in range(nv):
        a = masks[i]
        for j in range(i + 1, nv):
            if popcount(a & masks[j]) < t:
                adj[i] |= np.int64(1) << j
                adj[j] |= np.int64(1) << i
    return adj


@njit
def has_edge(adj, sel):
    x = sel
    while x:
        v = lowbit_index(x)
        if adj[v] & sel:
            return True
        x &= x - 1
    return False


@njit
def feasible_candidates(adj, sel, cand, s):
    """Drop candidates that would push any defect degree past ``s``."""
    blocked = np.int64(0)
    x = sel
    while x:
        u = lowbit_index(x)
        if popcount(adj[u] & sel) >= s:
            blocked |= adj[u]
        x &= x - 1
    cand &= ~blocked
    out = cand
    y = cand
    while y:
        c = lowbit_index(y)
        if popcount(adj[c] & sel) > s:
            out &= ~(np.int64(1) << c)
        y &= y - 1
    return out


@njit
def upper_bound(adj, sel, cand, s):
    """``|sel|`` plus an upper bound on how many candidates can join.

    Candidates adjacent to a selected vertex ``u`` can contribute at most
    its remaining slack; the leftovers are split greedily into Kneser
    cliques, each of which holds at most ``s + 1`` members of any family.
    """
    total = popcount(sel)
    rest = cand
    x = sel
    while x and rest:
        u = lowbit_index(x)
        near = rest & adj[u]
        if near:
            slack = s - popcount(adj[u] & sel)
            c = popcount(near)
            total += c if c < slack else slack
            rest &= ~near
        x &= x - 1
    while rest:
        v = lowbit_index(rest)
        rest &= ~(np.int64(1) << v)
        size = 1
        pool = rest & adj[v]
        while pool:
            w = lowbit_index(pool)
            wb = np.int64(1) << w
            rest &= ~wb
            size += 1
            pool &= adj[w]
            pool &= ~wb
        total += size if size < s + 1 else s + 1
    return total


@njit
def edge_possible(adj, sel, cand):
    """Whether some completion of ``sel`` by ``cand`` contains a Kneser edge."""
    if has_edge(adj, sel):
        return True
    reach = np.int64(0)
    x = sel
    while x:
        reach |= adj[lowbit_index(x)]
        x &= x - 1
    if reach & cand:
        return True
    y = cand
    while y:
        if adj[lowbit_index(y)] & cand:
            return True
        y &= y - 1
    return False


@njit
def search_kernel(adj, s, require_edge, collect_all, stack_sel, stack_cand, stack_inc,
                  state, solutions, node_budget):
    """Depth-first include/exclude search over candidates in index order.

    Records every feasible selection that reaches the incumbent size (all of
    them when ``collect_all``, the first otherwise). With ``require_edge``
    only selections containing a Kneser edge count, and pruning is against
    that constrained incumbent. Returns DONE or PAUSED.
    """
    cap = solutions.shape[0]
    budget = node_budget
    while state[SP] > 0:
        if budget <= 0:
            return PAUSED
        budget -= 1
        state[SP] -= 1
        sp = state[SP]
        sel = stack_sel[sp]
        cand = stack_cand[sp]
        inc = stack_inc[sp]
        state[NODES] += 1
        size = popcount(sel)

        if inc:
            if size > state[BEST_ANY]:
                state[BEST_ANY] = size
            if (not require_edge) or has_edge(adj, sel):
                if size > state[BEST]:
                    state[BEST] = size
                    solutions[0] = sel
                    state[COUNT] = 1
                    state[OVERFLOW] = 0
                elif size == state[BEST] and collect_all:
                    if state[COUNT] < cap:
                        solutions[state[COUNT]] = sel
                        state[COUNT] += 1
                    else:
                        state[OVERFLOW] = 1

        if cand == 0:
            continue
        ub = upper_bound(adj, sel, cand, s)
        if ub < state[BEST] or (ub == state[BEST] and not collect_all):
            state[PRUNES] += 1
            continue
        if require_edge and not edge_possible(adj, sel, cand):
            state[PRUNES] += 1
            continue

        v = lowbit_index(cand)
        vb = np.int64(1) << v
        rest = cand & ~vb
        # exclude branch below, include branch on top so it runs first
        stack_sel[sp] = sel
        stack_cand[sp] = rest
        stack_inc[sp] = 0
        sp += 1
        nsel = sel | vb
        stack_sel[sp] = nsel
        stack_cand[sp] = feasible_candidates(adj, nsel, rest, s)
        stack_inc[sp] = 1
        sp += 1
        state[SP] = sp
    return DONE

