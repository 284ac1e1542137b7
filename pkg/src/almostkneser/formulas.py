"""Exact bound functions f, g, h and sweep checks of the binomial inequalities.

Everything here is exact integer arithmetic, so the checks stay valid at any
magnitude of ``n``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import ParameterError, binom0, binomial
from .predicates import Outcome

LEMMAS = ("lemma21", "lemma22", "lemma23", "lemma24")


def _require_positive(**kw) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise ParameterError(f"{name} must be a positive integer, got {v!r}")


def eval_f(n: int, k: int, t: int, s: int, x: int) -> int:
    _require_positive(n=n, k=k, t=t, s=s, x=x)
    if x < t:
        raise ParameterError(f"f needs x >= t, got x={x}, t={t}")
    q = k - t + 1
    cx = binomial(x, t)
    head = q ** (x - t) * cx * binomial(n - x, k - x)
    tail = sum(s * q**i * cx for i in range(x - t))
    return head + tail


def eval_g(n: int, k: int, t: int, s: int, x: int) -> int:
    # Terms with a negative lower index (k = t + 1) read as zero.
    _require_positive(n=n, k=k, t=t, s=s, x=x)
    return (
        (x - t) * binom0(n - t - 1, k - t - 1)
        + (k - x + 1) * (k - t + 1) * binom0(n - t - 2, k - t - 2)
        + t * (k - t) * binom0(n - x, k - x)
        + s * (k - x + 3)
    )


def hm_threshold(k: int, t: int, s: int) -> int:
    return 2 * k - t + s


def hm_core_size(n: int, k: int, t: int) -> int:
    """``|{F : [t] ⊆ F, |F ∩ [k+1]| >= t+1}|`` by conditioning on ``|F ∩ [k+1]|``."""
    return sum(
        binomial(k + 1 - t, j - t) * binomial(n - k - 1, k - j) for j in range(t + 1, k + 1)
    )


def eval_h(n: int, k: int, t: int, s: int, strict: bool = True) -> int:
    """Size of the HM-type family: core block plus ``s`` + ``min(t, s)`` extra sets."""
    _require_positive(n=n, k=k, t=t, s=s)
    if strict and (k < t + 1 or n < hm_threshold(k, t, s)):
        raise ParameterError(
            f"h needs k >= t+1 and n >= 2k-t+s; got n={n}, k={k}, t={t}, s={s}"
        )
    return hm_core_size(n, k, t) + s + min(t, s)


# thresholds ---------------------------------------------------------------


def lemma21_min_n(k: int, t: int) -> int:
    return (t + 1) * (k - t + 1) ** 2


def lemma22_min_n(k: int, t: int, s: int) -> int:
    return 2 * (t + 1) * ((k - t + 1) ** 2 + s)


def lemma23_min_n(k: int, t: int, s: int) -> int:
    return 3 * binomial(t + 2, 2) * ((k - t + 1) ** 2 + s)


lemma24_min_n = lemma23_min_n


# single-instance checks ---------------------------------------------------


def check_lemma21(n: int, k: int, t: int, i: int, j: int) -> Outcome:
    if k < t + 1 or n < lemma21_min_n(k, t) or not (t <= i <= j):
        return Outcome.SKIPPED
    lhs = (k - t + 1) ** (j - i) * binom0(n - j, k - j)
    rhs = binom0(n - i, k - i)
    return Outcome.HOLDS if lhs <= rhs else Outcome.VIOLATED


def lemma22_failures(n: int, k: int, t: int, s: int) -> list[int]:
    """x values in ``t+1..k-1`` where f fails to drop strictly at ``x -> x+1``."""
    vals = {x: eval_f(n, k, t, s, x) for x in range(t + 1, k + 1)}
    return [x for x in range(t + 1, k) if not vals[x] > vals[x + 1]]


def lemma23_failures(n: int, k: int, t: int, s: int) -> list[int]:
    vals = {x: eval_g(n, k, t, s, x) for x in range(t + 2, k + 1)}
    return [x for x in range(t + 2, k) if not vals[x] < vals[x + 1]]


def lemma24_parts(n: int, k: int, t: int, s: int) -> tuple[int, int, int]:
    """``(h, two-term lower bound, (k-t+1) C(n-t-1, k-t-1))``."""
    q = k - t + 1
    lead = q * binomial(n - t - 1, k - t - 1)
    lower = lead - binomial(q, 2) * binomial(n - t - 2, k - t - 2)
    return eval_h(n, k, t, s), lower, lead


def check_lemma24(n: int, k: int, t: int, s: int) -> Outcome:
    if s < 1 or k < t + 2 or n < lemma24_min_n(k, t, s):
        return Outcome.SKIPPED
    h, lower, lead = lemma24_parts(n, k, t, s)
    # 17/18 compared by cross-multiplication.
    ok = h > lower and 18 * lower >= 17 * lead
    return Outcome.HOLDS if ok else Outcome.VIOLATED


# sweeps -------------------------------------------------------------------


@dataclass
class SweepRow:
    lemma: str
    n: int
    k: int
    t: int
    s: int | None
    extra: str
    outcome: Outcome

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "s": "" if self.s is None else self.s,
            "extra": self.extra,
            "outcome": self.outcome.value,
        }


@dataclass
class BoundSweepReport:
    params_range: dict
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if r.outcome is Outcome.VIOLATED]

    @property
    def checked(self) -> int:
        return sum(r.outcome is Outcome.HOLDS for r in self.rows)

    @property
    def skipped(self) -> int:
        return sum(r.outcome is Outcome.SKIPPED for r in self.rows)

    def merge(self, other: BoundSweepReport) -> BoundSweepReport:
        return BoundSweepReport({**self.params_range, **other.params_range}, self.rows + other.rows)

    def to_json_obj(self) -> dict:
        return {
            "params_range": self.params_range,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": [r.as_dict() for r in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["lemma", "n", "k", "t", "s", "extra", "outcome"])
        w.writeheader()
        for r in self.rows:
            w.writerow(r.as_dict())
        return buf.getvalue()


@dataclass(frozen=True)
class SweepGrid:
    """Grid of ``(t, k, s)`` with ``n`` placed relative to each lemma's threshold.

    ``k`` runs over ``t + k_offsets`` and ``n`` over ``n_min + n_offsets``.
    Negative ``n_offsets`` produce sub-threshold rows that report as skipped.
    """

    t_values: tuple[int, ...] = (1, 2, 3)
    k_offsets: tuple[int, ...] = (2, 3, 4, 5, 6)
    s_values: tuple[int, ...] = (1, 2, 3, 4)
    n_offsets: tuple[int, ...] = (0, 1, 7)

    def as_dict(self) -> dict:
        return {
            "t": list(self.t_values),
            "k_minus_t": list(self.k_offsets),
            "s": list(self.s_values),
            "n_minus_min": list(self.n_offsets),
        }

    def tks(self) -> Iterator[tuple[int, int, int]]:
        for t in self.t_values:
            for dk in self.k_offsets:
                for s in self.s_values:
                    yield t, t + dk, s


def _ns(n_min: int, offsets: Iterable[int]) -> list[int]:
    return [n_min + d for d in offsets if n_min + d >= 1]


def sweep_lemma21(grid: SweepGrid = SweepGrid()) -> BoundSweepReport:
    rep = BoundSweepReport({"lemma21": grid.as_dict()})
    seen = set()
    for t, k, _ in grid.tks():
        if (t, k) in seen:
            continue
        seen.add((t, k))
        for n in _ns(lemma21_min_n(k, t), grid.n_offsets):
            for i in range(t, k + 2):
                for j in range(i, k + 2):
                    rep.rows.append(
                        SweepRow("lemma21", n, k, t, None, f"i={i};j={j}", check_lemma21(n, k, t, i, j))
                    )
    return rep


def check_lemma22(n: int, k: int, t: int, s: int) -> BoundSweepReport:
    rep = BoundSweepReport({"lemma22": {"n": n, "k": k, "t": t, "s": s}})
    if s < 1 or k < t + 2 or n < lemma22_min_n(k, t, s):
        rep.rows.append(SweepRow("lemma22", n, k, t, s, "", Outcome.SKIPPED))
        return rep
    bad = set(lemma22_failures(n, k, t, s))
    for x in range(t + 1, k):
        out = Outcome.VIOLATED if x in bad else Outcome.HOLDS
        rep.rows.append(SweepRow("lemma22", n, k, t, s, f"x={x}", out))
    return rep


def check_lemma23(n: int, k: int, t: int, s: int) -> BoundSweepReport:
    rep = BoundSweepReport({"lemma23": {"n": n, "k": k, "t": t, "s": s}})
    if s < 1 or k < t + 3 or n < lemma23_min_n(k, t, s):
        rep.rows.append(SweepRow("lemma23", n, k, t, s, "", Outcome.SKIPPED))
        return rep
    bad = set(lemma23_failures(n, k, t, s))
    for x in range(t + 2, k):
        out = Outcome.VIOLATED if x in bad else Outcome.HOLDS
        rep.rows.append(SweepRow("lemma23", n, k, t, s, f"x={x}", out))
    return rep


def sweep_lemma22(grid: SweepGrid = SweepGrid()) -> BoundSweepReport:
    rep = BoundSweepReport({"lemma22": grid.as_dict()})
    for t, k, s in grid.tks():
        for n in _ns(lemma22_min_n(k, t, s), grid.n_offsets):
            rep.rows.extend(check_lemma22(n, k, t, s).rows)
    return rep


def sweep_lemma23(grid: SweepGrid = SweepGrid()) -> BoundSweepReport:
    rep = BoundSweepReport({"lemma23": grid.as_dict()})
    for t, k, s in grid.tks():
        for n in _ns(lemma23_min_n(k, t, s), grid.n_offsets):
            rep.rows.extend(check_lemma23(n, k, t, s).rows)
    return rep


def sweep_lemma24(grid: SweepGrid = SweepGrid()) -> BoundSweepReport:
    rep = BoundSweepReport({"lemma24": grid.as_dict()})
    for t, k, s in grid.tks():
        for n in _ns(lemma24_min_n(k, t, s), grid.n_offsets):
            rep.rows.append(SweepRow("lemma24", n, k, t, s, "", check_lemma24(n, k, t, s)))
    return rep


SWEEPS = {
    "lemma21": sweep_lemma21,
    "lemma22": sweep_lemma22,
    "lemma23": sweep_lemma23,
    "lemma24": sweep_lemma24,
}


def sweep_all(grid: SweepGrid = SweepGrid(), lemmas: Iterable[str] = LEMMAS) -> BoundSweepReport:
    rep = BoundSweepReport({})
    for name in lemmas:
        rep = rep.merge(SWEEPS[name](grid))
    return rep
