"""The named extremal families, each paired with its predicted size."""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass

from .core import (
    MAX_GROUND,
    Family,
    Params,
    ParameterError,
    binomial,
    k_subset_masks,
    mask_of,
)
from .formulas import eval_h, hm_threshold
from .predicates import is_s_almost_t_intersecting, is_t_intersecting

# Largest C(n, k) we are willing to walk when materializing a family.
MATERIALIZE_LIMIT = 2_000_000


class ConstructionId(str, enum.Enum):
    STAR = "STAR"
    HM_TYPE = "HM_TYPE"
    EX51 = "EX51"
    EX52 = "EX52"
    EX53 = "EX53"
    THM3_I = "THM3_I"
    THM3_II = "THM3_II"
    THM3_III = "THM3_III"
    THM3_IV = "THM3_IV"
    THM3_V = "THM3_V"
    THM3_VI = "THM3_VI"
    THM3_VII = "THM3_VII"


THM3_CASES = ("i", "ii", "iii", "iv", "v", "vi", "vii")


@dataclass(frozen=True)
class NamedConstruction:
    id: ConstructionId
    family: Family | None
    predicted_size: int
    params: Params
    claims_not_t_intersecting: bool

    @property
    def materialized(self) -> bool:
        return self.family is not None

    def check(self) -> dict:
        """Predicate results for the materialized family."""
        if self.family is None:
            return {"materialized": False}
        p = self.params
        almost, report = is_s_almost_t_intersecting(self.family, p.t, p.s)
        t_int = is_t_intersecting(self.family, p.t)
        ok = almost and len(self.family) == self.predicted_size
        if self.claims_not_t_intersecting:
            ok = ok and not t_int
        return {
            "materialized": True,
            "size": len(self.family),
            "size_matches": len(self.family) == self.predicted_size,
            "s_almost_t_intersecting": almost,
            "max_defect": report.max_defect,
            "t_intersecting": t_int,
            "claims_hold": ok,
        }

    def to_json_obj(self) -> dict:
        obj = {
            "id": self.id.value,
            "params": self.params.as_dict(),
            "predicted_size": self.predicted_size,
            "checks": self.check(),
        }
        if self.family is not None:
            obj["family"] = self.family.to_json_obj()
        return obj


def _prefix(m: int) -> int:
    """Mask of ``[m]``; ``[0]`` is empty."""
    return (1 << m) - 1 if m > 0 else 0


def _filtered(n: int, k: int, ground: int, keep) -> Family:
    """All k-subsets of ``[ground]`` passing ``keep``, viewed inside ``[n]``."""
    return Family((m for m in k_subset_masks(ground, k) if keep(m)), n, k)


def _ambient(n: int | None, natural: int) -> int:
    if n is None:
        n = natural
    if n < natural:
        raise ParameterError(f"construction needs ground set of size >= {natural}, got n={n}")
    if n > MAX_GROUND:
        raise ParameterError(f"n={n} exceeds the {MAX_GROUND}-element enumeration limit")
    return n


def star_family(n: int, k: int, t: int, s: int = 0) -> NamedConstruction:
    """All k-subsets containing ``[t]``; t-intersecting, hence s-almost for every s."""
    params = Params(n, k, t, s)
    size = binomial(n - t, k - t)
    if n > MAX_GROUND or binomial(n, k) > MATERIALIZE_LIMIT:
        return NamedConstruction(ConstructionId.STAR, None, size, params, False)
    core = _prefix(t)
    fam = Family((m | core for m in _shifted(n - t, k - t, t)), n, k)
    return NamedConstruction(ConstructionId.STAR, fam, size, params, False)


def _shifted(m: int, r: int, shift: int):
    if r == 0:
        yield 0
        return
    for x in k_subset_masks(m, r):
        yield x << shift


def _choose(pool: list[int], count: int, seed) -> list[int]:
    if count > len(pool):
        raise ParameterError(f"need {count} sets but only {len(pool)} are available")
    if seed is None:
        return pool[:count]
    return random.Random(seed).sample(pool, count)


def _lex_key(m: int):
    return [i + 1 for i in range(m.bit_length()) if m >> i & 1]


def hm_family(n: int, k: int, t: int, s: int, a_choice=None, b_choice=None) -> NamedConstruction:
    """HM-type family: the ``[t]``-star cut down to ``|F ∩ [k+1]| >= t+1``, plus
    ``s`` sets meeting ``[k+1]`` exactly in ``[t]`` and ``min(t, s)`` k-subsets of
    ``[k+1]`` missing a point of ``[t]``.

    ``a_choice``/``b_choice`` are RNG seeds; ``None`` takes the
    lexicographically first sets of each pool.
    """
    if s < 1 or k < t + 1 or n < hm_threshold(k, t, s):
        raise ParameterError(f"HM-type family needs s >= 1, k >= t+1, n >= 2k-t+s; got {n, k, t, s}")
    params = Params(n, k, t, s)
    size = eval_h(n, k, t, s)
    if n > MAX_GROUND or binomial(n, k) > MATERIALIZE_LIMIT:
        return NamedConstruction(ConstructionId.HM_TYPE, None, size, params, True)
    core_t = _prefix(t)
    head = _prefix(k + 1)
    main = [
        m for m in k_subset_masks(n, k)
        if m & core_t == core_t and (m & head).bit_count() >= t + 1
    ]
    outside = range(k + 2, n + 1)
    a_pool = [core_t | mask_of(c, n) for c in itertools.combinations(outside, k - t)]
    b_pool = sorted((head & ~(1 << (i - 1)) for i in range(1, t + 1)), key=_lex_key)
    extra = _choose(a_pool, s, a_choice) + _choose(b_pool, min(t, s), b_choice)
    fam = Family(main + extra, n, k)
    return NamedConstruction(ConstructionId.HM_TYPE, fam, size, params, True)


def ex51_family(n: int | None, t: int) -> NamedConstruction:
    """(t+1)-subsets of ``[t+3]`` containing ``[t-1]``: size 6, 1-almost."""
    n = _ambient(n, t + 3)
    core = _prefix(t - 1)
    fam = _filtered(n, t + 1, t + 3, lambda m: m & core == core)
    return NamedConstruction(ConstructionId.EX51, fam, 6, Params(n, t + 1, t, 1), True)


def ex52_family(n: int | None, t: int) -> NamedConstruction:
    """(t+1)-subsets of ``[t+4]`` containing ``[t-1]``: size 10, 3-almost."""
    n = _ambient(n, t + 4)
    core = _prefix(t - 1)
    fam = _filtered(n, t + 1, t + 4, lambda m: m & core == core)
    return NamedConstruction(ConstructionId.EX52, fam, 10, Params(n, t + 1, t, 3), True)


def ex53_family(n: int | None, t: int, s: int) -> NamedConstruction:
    """(t+1)-subsets of ``[t+s+2]`` containing ``[t-1]`` and meeting ``[t+1]`` in >= t points."""
    if s < 1:
        raise ParameterError(f"s must be positive, got {s}")
    n = _ambient(n, t + s + 2)
    core = _prefix(t - 1)
    head = _prefix(t + 1)
    fam = _filtered(
        n, t + 1, t + s + 2, lambda m: m & core == core and (m & head).bit_count() >= t
    )
    return NamedConstruction(ConstructionId.EX53, fam, 2 * s + 3, Params(n, t + 1, t, s), True)


def _thm3_shape(case: str, t: int, s: int):
    """``(id, natural ground, fixed core size, needs head condition, size)``."""
    if case == "i":
        ok, shape = s == 1, (ConstructionId.THM3_I, t + 3, t - 1, False, 6)
    elif case == "ii":
        ok, shape = s == 3, (ConstructionId.THM3_II, t + 4, t - 1, False, 10)
    elif case == "iii":
        ok, shape = s == 3 and t >= 2, (ConstructionId.THM3_III, t + 3, t - 2, False, 10)
    elif case == "iv":
        ok, shape = s == 6, (ConstructionId.THM3_IV, t + 5, t - 1, False, 15)
    elif case == "v":
        ok, shape = s == 6 and t >= 3, (ConstructionId.THM3_V, t + 3, t - 3, False, 15)
    elif case == "vi":
        ok, shape = s not in (1, 3), (ConstructionId.THM3_VI, t + s + 2, t - 1, True, 2 * s + 3)
    elif case == "vii":
        ok, shape = s not in (1, 3) and t >= s, (ConstructionId.THM3_VII, t + 3, t - s, True, 2 * s + 3)
    else:
        raise ParameterError(f"unknown case {case!r}; expected one of {THM3_CASES}")
    return ok, shape


def thm3_applicable(case: str, t: int, s: int) -> bool:
    return t >= 1 and s >= 1 and _thm3_shape(case, t, s)[0]


def thm3_family(case: str, t: int, s: int, n: int | None = None) -> NamedConstruction:
    """One of the seven extremal shapes for (t+1)-uniform families.

    ``n`` embeds the family into a larger ground set; by default it is the
    case's own ground set.
    """
    case = case.lower()
    if t < 1 or s < 1:
        raise ParameterError(f"t and s must be positive, got t={t}, s={s}")
    ok, (cid, ground, core_size, with_head, size) = _thm3_shape(case, t, s)
    if not ok:
        raise ParameterError(f"case ({case}) side conditions fail for t={t}, s={s}")
    n = _ambient(n, ground)
    core = _prefix(core_size)
    head = _prefix(t + 1)
    if with_head:
        keep = lambda m: m & core == core and (m & head).bit_count() >= t  # noqa: E731
    else:
        keep = lambda m: m & core == core  # noqa: E731
    fam = _filtered(n, t + 1, ground, keep)
    return NamedConstruction(cid, fam, size, Params(n, t + 1, t, s), True)


def thm3_natural_ground(case: str, t: int, s: int) -> int:
    return _thm3_shape(case.lower(), t, s)[1][1]


def applicable_thm3_cases(t: int, s: int, n: int | None = None) -> list[str]:
    """Cases whose side conditions hold and whose ground set fits in ``[n]``."""
    out = []
    for case in THM3_CASES:
        if thm3_applicable(case, t, s) and (n is None or thm3_natural_ground(case, t, s) <= n):
            out.append(case)
    return out


def build(cid: str, n: int | None, k: int | None, t: int, s: int, seed=None) -> NamedConstruction:
    """Dispatch by construction id (as used by the CLI)."""
    cid = cid.upper()
    if cid == "STAR":
        return star_family(n, k, t, s)
    if cid in ("HM", "HM_TYPE"):
        return hm_family(n, k, t, s, seed, seed)
    if cid == "EX51":
        return ex51_family(n, t)
    if cid == "EX52":
        return ex52_family(n, t)
    if cid == "EX53":
        return ex53_family(n, t, s)
    if cid.startswith("THM3_"):
        return thm3_family(cid[5:].lower(), t, s, n)
    raise ParameterError(f"unknown construction id {cid!r}")
