"""Canonical forms of set families under relabeling of the ground set.

Only the support (elements lying in some member) is relabeled; unused
ambient points are interchangeable and carry no information.

The labeling search works level by level. Elements are first split into
colour classes by an incidence refinement, and labels are handed out class
by class in colour order. A labeled family is scored by the sequence of its
member prefixes: level ``j`` is the multiset of members restricted to the
first ``j`` labels. Only partial labelings with the best score so far are
kept, and two candidates whose transposition is an automorphism ("twins")
are explored once. The surviving complete labelings all give the same
relabeled family, which is the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..core import Family, ParameterError

MAX_SUPPORT = 12
MAX_FRONTIER = 500_000


@dataclass(frozen=True)
class CanonicalForm:
    data: bytes

    def __str__(self) -> str:
        return self.data.decode("ascii")

    def decode(self) -> Family:
        """The canonical representative as a family over ``[support size]``."""
        head, _, body = str(self).partition("|")
        fields = dict(part.split("=") for part in head.split(";"))
        k, m = int(fields["k"]), int(fields["m"])
        sets = [[int(e) for e in chunk.split(",")] for chunk in body.split("/") if chunk]
        return Family.from_sets(sets, max(m, k, 1), k)


def _local(family: Family) -> tuple[list[int], int]:
    """Members re-indexed onto ``0..m-1`` following the support order."""
    support = family.support()
    pos = {}
    for i in range(support.bit_length()):
        if support >> i & 1:
            pos[i] = len(pos)
    out = []
    for mask in family.masks:
        x = 0
        for i, p in pos.items():
            if mask >> i & 1:
                x |= 1 << p
        out.append(x)
    return out, len(pos)


def _refine_colours(members: list[int], m: int) -> list[int]:
    colours = [0] * m
    for _ in range(m + 1):
        member_sig = [tuple(sorted(colours[e] for e in range(m) if x >> e & 1)) for x in members]
        sigs = []
        for e in range(m):
            around = sorted(member_sig[i] for i, x in enumerate(members) if x >> e & 1)
            sigs.append((colours[e], tuple(around)))
        # Rank signatures in sorted order so colours do not depend on labels.
        ranks = {sig: r for r, sig in enumerate(sorted(set(sigs), reverse=True))}
        new = [ranks[sig] for sig in sigs]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new
    return colours


def _twin_classes(members: list[int], m: int) -> list[int]:
    """Representative index for each element under the twin relation."""
    fam = set(members)
    rep = list(range(m))
    for a in range(m):
        if rep[a] != a:
            continue
        for b in range(a + 1, m):
            if rep[b] != b:
                continue
            ab = (1 << a) | (1 << b)
            if all((x ^ ab) in fam for x in members if (x & ab) and (x & ab) != ab):
                rep[b] = a
    return rep


def _canonical_members(members: list[int], m: int) -> list[int]:
    if m == 0:
        return []
    colours = _refine_colours(members, m)
    twins = _twin_classes(members, m)
    # slot p takes an element of colour order[p]
    order = sorted(colours)
    frontier = [((), tuple(0 for _ in members))]
    for p in range(m):
        want = order[p]
        best_level = None
        nxt = []
        for assigned, prefixes in frontier:
            used = set(assigned)
            seen_twins = set()
            for e in range(m):
                if e in used or colours[e] != want:
                    continue
                if twins[e] in seen_twins:
                    continue
                seen_twins.add(twins[e])
                new_prefixes = tuple((pv << 1) | (x >> e & 1) for pv, x in zip(prefixes, members))
                level = tuple(sorted(new_prefixes, reverse=True))
                if best_level is None or level > best_level:
                    best_level = level
                    nxt = [(assigned + (e,), new_prefixes)]
                elif level == best_level:
                    nxt.append((assigned + (e,), new_prefixes))
        if len(nxt) > MAX_FRONTIER:
            raise ParameterError("canonical labeling search exceeded its frontier limit")
        frontier = nxt
    # every survivor yields the same multiset of full masks
    return sorted(frontier[0][1], reverse=True)


@lru_cache(maxsize=65536)
def _canon_cached(masks: tuple[int, ...], n: int, k: int) -> CanonicalForm:
    fam = Family(masks, n, k)
    members, m = _local(fam)
    codes = _canonical_members(members, m)
    sets = []
    for c in codes:
        # label p sits at bit m-1-p; emit 1-indexed labels
        sets.append(sorted(m - i for i in range(m) if c >> i & 1))
    sets.sort()
    body = "/".join(",".join(map(str, s)) for s in sets)
    return CanonicalForm(f"k={k};m={m};size={len(sets)}|{body}".encode("ascii"))


def canonicalize(family: Family, max_support: int = MAX_SUPPORT) -> CanonicalForm:
    m = family.support().bit_count()
    if m > max_support:
        raise ParameterError(f"support of size {m} exceeds the canonicalization limit {max_support}")
    return _canon_cached(family.masks, family.n, family.k)


def are_isomorphic(a: Family, b: Family) -> bool:
    if a.k != b.k or len(a) != len(b):
        return False
    return canonicalize(a) == canonicalize(b)
