"""Ground sets, k-subsets and families with exact set algebra.

Elements are 1-indexed: element ``i`` of ``[n]`` lives in bit ``i - 1``.
Enumeration mode caps the ground set at 64 so that a subset fits one
machine word; the formula side works on unbounded Python integers instead.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

MAX_GROUND = 64


class ParameterError(ValueError):
    """Raised when arguments fall outside an operation's domain."""


class FamilyFormatError(ValueError):
    """Raised when serialized family data cannot be parsed."""


def _check_ground(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"ground set size must be a positive integer, got {n!r}")
    if n > MAX_GROUND:
        raise ParameterError(f"ground set size {n} exceeds the {MAX_GROUND}-element word limit")


def mask_of(elements: Iterable[int], n: int) -> int:
    """Bit mask of a collection of 1-indexed elements of ``[n]``."""
    bits = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ParameterError(f"element {e} outside ground set [1..{n}]")
        bits |= 1 << (e - 1)
    return bits


def elements_of(bits: int) -> tuple[int, ...]:
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True, order=True)
class KSubset:
    """A subset of ``[n]`` stored as a bit vector (bit ``i-1`` is element ``i``)."""

    bits: int
    n: int

    def __post_init__(self):
        _check_ground(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ParameterError(f"bits {self.bits:#x} set outside ground set [1..{self.n}]")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> KSubset:
        return cls(mask_of(elements, n), n)

    @property
    def k(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.bits >> (element - 1) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


def as_mask(h, n: int) -> int:
    """Accept a KSubset, a raw bit mask, or an iterable of elements."""
    if isinstance(h, KSubset):
        if h.n != n:
            raise ParameterError(f"subset over [{h.n}] used with ground set [{n}]")
        return h.bits
    if isinstance(h, int):
        if h < 0 or h >> n:
            raise ParameterError(f"mask {h:#x} outside ground set [1..{n}]")
        return h
    return mask_of(h, n)


def intersection_size(a: KSubset, b: KSubset) -> int:
    if a.n != b.n:
        raise ParameterError(f"ground sets differ: [{a.n}] vs [{b.n}]")
    return (a.bits & b.bits).bit_count()


def k_subset_masks(n: int, k: int) -> Iterator[int]:
    # Gosper's hack walks k-bit masks in increasing numeric order.
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def enumerate_k_subsets(n: int, k: int) -> Iterator[KSubset]:
    """All k-subsets of ``[n]`` in ascending bit-pattern order."""
    _check_ground(n)
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    for bits in k_subset_masks(n, k):
        yield KSubset(bits, n)


class Family:
    """Immutable family of distinct k-subsets of ``[n]``.

    Members are kept sorted by bit pattern, so two families are equal exactly
    when they hold the same sets.
    """

    __slots__ = ("n", "k", "_masks")

    def __init__(self, masks: Iterable[int], n: int, k: int):
        _check_ground(n)
        if not 0 <= k <= n:
            raise ParameterError(f"uniformity k={k} invalid for ground set [{n}]")
        ms = sorted(set(int(m) for m in masks))
        for m in ms:
            if m < 0 or m >> n:
                raise ParameterError(f"member {m:#x} outside ground set [1..{n}]")
            if m.bit_count() != k:
                raise ParameterError(f"member {elements_of(m)} is not a {k}-set")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_masks", tuple(ms))

    def __setattr__(self, name, value):
        raise AttributeError("Family is immutable")

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int, k: int | None = None) -> Family:
        masks = [mask_of(s, n) for s in sets]
        if k is None:
            if not masks:
                raise ParameterError("k is required for an empty family")
            k = masks[0].bit_count()
        return cls(masks, n, k)

    @classmethod
    def from_subsets(cls, subsets: Iterable[KSubset], n: int, k: int) -> Family:
        masks = []
        for a in subsets:
            if a.n != n:
                raise ParameterError(f"subset over [{a.n}] in family over [{n}]")
            masks.append(a.bits)
        return cls(masks, n, k)

    @classmethod
    def complete(cls, n: int, k: int) -> Family:
        _check_ground(n)
        if not 1 <= k <= n:
            raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
        return cls(k_subset_masks(n, k), n, k)

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def members(self) -> tuple[KSubset, ...]:
        return tuple(KSubset(m, self.n) for m in self._masks)

    def sets(self) -> list[tuple[int, ...]]:
        """Members as sorted element tuples, ordered lexicographically."""
        return sorted(elements_of(m) for m in self._masks)

    def support(self) -> int:
        u = 0
        for m in self._masks:
            u |= m
        return u

    def with_ground(self, n: int) -> Family:
        """The same sets viewed inside a larger (or equal) ground set."""
        return Family(self._masks, n, self.k)

    def __len__(self) -> int:
        return len(self._masks)

    def __iter__(self) -> Iterator[KSubset]:
        return (KSubset(m, self.n) for m in self._masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, KSubset):
            return item.n == self.n and item.bits in set(self._masks)
        return int(item) in set(self._masks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return (self.n, self.k, self._masks) == (other.n, other.k, other._masks)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._masks))

    def __repr__(self) -> str:
        body = ",".join("{" + ",".join(map(str, s)) + "}" for s in self.sets())
        return f"Family(n={self.n}, k={self.k}, [{body}])"

    # serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"n": self.n, "k": self.k, "members": [list(s) for s in self.sets()]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> Family:
        try:
            n = obj["n"]
            k = obj["k"]
            members = obj["members"]
        except (KeyError, TypeError) as exc:
            raise FamilyFormatError(f"family object needs keys n, k, members ({exc})") from None
        if not isinstance(n, int) or not isinstance(k, int) or not isinstance(members, list):
            raise FamilyFormatError("n and k must be integers and members a list")
        seen = set()
        masks = []
        for row in members:
            if not isinstance(row, list) or not all(isinstance(e, int) for e in row):
                raise FamilyFormatError(f"member {row!r} is not a list of integers")
            if len(set(row)) != len(row):
                raise FamilyFormatError(f"member {row!r} repeats an element")
            try:
                m = mask_of(row, n)
            except ParameterError as exc:
                raise FamilyFormatError(str(exc)) from None
            if m in seen:
                raise FamilyFormatError(f"member {sorted(row)} listed twice")
            seen.add(m)
            masks.append(m)
        try:
            return cls(masks, n, k)
        except ParameterError as exc:
            raise FamilyFormatError(str(exc)) from None

    @classmethod
    def from_json(cls, text: str) -> Family:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FamilyFormatError(f"invalid JSON: {exc}") from None
        return cls.from_json_obj(obj)


def load_family(path) -> Family:
    with open(path, encoding="utf-8") as fh:
        return Family.from_json(fh.read())


def save_family(family: Family, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(family.to_json(indent=None))
        fh.write("\n")


def permute_mask(bits: int, perm: Sequence[int]) -> int:
    """Image of a mask under ``perm`` given as a 0-indexed image list."""
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out |= 1 << perm[i]
        bits >>= 1
        i += 1
    return out


def _normalize_perm(perm, n: int) -> list[int]:
    if isinstance(perm, Mapping):
        images = [perm.get(i, i) for i in range(1, n + 1)]
    else:
        images = list(perm)
        if len(images) != n:
            raise ParameterError(f"permutation has {len(images)} images, expected {n}")
    if sorted(images) != list(range(1, n + 1)):
        raise ParameterError(f"not a bijection on [1..{n}]: {images}")
    return [x - 1 for x in images]


def apply_permutation(f: Family, perm) -> Family:
    """Relabel the ground set.

    ``perm`` is either a sequence whose ``i-1``-th entry is the image of
    ``i``, or a mapping ``{i: image}`` (unlisted points stay fixed).
    """
    p = _normalize_perm(perm, f.n)
    return Family((permute_mask(m, p) for m in f.masks), f.n, f.k)


def binomial(n: int, r: int) -> int:
    """Exact C(n, r), zero when n < r."""
    if r < 0:
        raise ParameterError(f"binomial lower index must be nonnegative, got {r}")
    if n < r:
        return 0
    return math.comb(n, r)


def binom0(n: int, r: int) -> int:
    """C(n, r) extended by zero to negative r, for sums over boundary terms."""
    return 0 if r < 0 else binomial(n, r)


@dataclass(frozen=True)
class Params:
    """Parameter tuple ``(n, k, t, s)`` with the theorems' hypotheses."""

    n: int
    k: int
    t: int
    s: int

    def __post_init__(self):
        for name in ("n", "k", "t", "s"):
            if not isinstance(getattr(self, name), int):
                raise ParameterError(f"{name} must be an integer")
        if not (self.n >= self.k >= self.t >= 1):
            raise ParameterError(f"need n >= k >= t >= 1, got n={self.n}, k={self.k}, t={self.t}")
        if self.s < 0:
            raise ParameterError(f"s must be nonnegative, got {self.s}")

    def thm1_threshold(self) -> int:
        return 2 * (self.t + 1) * ((self.k - self.t + 1) ** 2 + self.s)

    def thm1_hypothesis(self) -> bool:
        return self.s >= 1 and self.k >= self.t + 1 and self.n >= self.thm1_threshold()

    def thm2_threshold(self) -> Fraction:
        # (k - t)/2 kept rational, no rounding.
        factor = max(Fraction(binomial(self.t + 2, 2)), Fraction(self.k - self.t, 2))
        return 3 * factor * ((self.k - self.t + 1) ** 2 + self.s)

    def thm2_hypothesis(self) -> bool:
        return self.s >= 1 and self.k >= self.t + 2 and self.n >= self.thm2_threshold()

    def thm3_hypothesis(self) -> bool:
        return self.s >= 1 and self.k == self.t + 1 and self.n >= self.t + self.s + 2

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "t": self.t, "s": self.s}


def all_subsets_of(mask: int, size: int) -> Iterator[int]:
    """Every ``size``-subset of the set bits of ``mask``, as masks."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for combo in itertools.combinations(bits, size):
        yield sum(combo)
