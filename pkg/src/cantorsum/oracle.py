"""Depth-bounded brute force over cylinder structure.

Everything here is exact integer geometry; no floating point.  At
depth m the sumset IFS places one cylinder of width w units over each
*start*

    S = b_1 n^{m-1} + b_2 n^{m-2} + ... + b_m,   b_i in the sumset,

where a unit is n^(-m) and w = ceil(max_sum / (n-1)) (w = 2 for
canonical sets).  The depth-m outer cover E_m is the union of the
cylinders [S, S+w]; it shrinks onto the attractor as m grows.  The
oracle answers three kinds of questions, each an independent check on
the closed-form machinery:

* components of E_m (is [0,2] covered? where are the gaps?),
* counts of uniquely covered unit intervals (level-m L/R typing),
* growth of those counts against the adjacency-matrix prediction.

Start sets are kept as runs of consecutive integers, so dense covers
cost almost nothing no matter the depth.  Multiplicities (number of
digit words producing a start, weighted by ordered-pair counts) are
only needed saturated at 2 -- unique / not unique is all the typing
rules consume -- and live in a flat array indexed by start.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .digitset import DigitSet, sumset_profile
from .gdifs import TypingProfile, classify_intervals

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceededError",
    "LevelSet",
    "level_set",
    "level_start_counts",
    "level_typing_counts",
    "typing_count_evolution",
    "growth_check",
    "GrowthReport",
    "is_refinement",
    "GDIFS_ORIENTATION",
]

DEFAULT_BUDGET = 10**7

# How level-m unique-interval counts evolve under the adjacency matrix:
# (L, R) advances by the TRANSPOSE acting on column vectors, i.e.
# L' = a L + c R, R' = b L + d R.  Pinned empirically on an asymmetric
# instance (see tests); growth_check still reports what it sees.
GDIFS_ORIENTATION = "transpose"

# Piece buffers for run expansion are processed in chunks of this many
# starts to bound peak memory.
_EXPAND_CHUNK = 2_000_000


class BudgetExceededError(RuntimeError):
    """Requested depth needs more starts/words than the budget allows."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"depth requires ~{required} aggregated starts, budget is {budget}; "
            f"reduce the depth or raise the budget"
        )
        self.required = required
        self.budget = budget


def _budget(budget: int | None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("CANTORSUM_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class LevelSet:
    """Exact depth-m cover: start runs and merged components.

    Runs are inclusive integer intervals of starts; components are
    inclusive unit intervals [lo, hi] standing for [lo/n^m, hi/n^m].
    """

    n: int
    m: int
    width: int
    run_lo: np.ndarray = field(repr=False)
    run_hi: np.ndarray = field(repr=False)
    components: tuple[tuple[int, int], ...]

    @property
    def n_starts(self) -> int:
        return int(np.sum(self.run_hi - self.run_lo + 1))

    @property
    def denominator(self) -> int:
        return self.n**self.m

    def component_fractions(self) -> list[tuple[Fraction, Fraction]]:
        den = self.denominator
        return [(Fraction(lo, den), Fraction(hi, den)) for lo, hi in self.components]

    def covers_point(self, x: Fraction) -> bool:
        den = self.denominator
        return any(Fraction(lo, den) <= x <= Fraction(hi, den) for lo, hi in self.components)

    def covers_interval(self, lo: Fraction, hi: Fraction) -> bool:
        den = self.denominator
        return any(
            Fraction(c0, den) <= lo and hi <= Fraction(c1, den)
            for c0, c1 in self.components
        )

    def misses_open_interval(self, lo: Fraction, hi: Fraction) -> bool:
        """True when the open interval (lo, hi) avoids the cover."""
        den = self.denominator
        for c0, c1 in self.components:
            if Fraction(c1, den) <= lo or hi <= Fraction(c0, den):
                continue
            # component overlaps (lo, hi) in more than endpoints?
            if max(lo, Fraction(c0, den)) < min(hi, Fraction(c1, den)):
                return False
        return True

    def csv_rows(self) -> list[tuple[int, int, int, int]]:
        den = self.denominator
        return [(self.m, lo, hi, den) for lo, hi in self.components]


def _merge_runs(lo: np.ndarray, hi: np.ndarray, link: int) -> tuple[np.ndarray, np.ndarray]:
    """Merge inclusive integer intervals; neighbors within `link` join.

    link=1 merges adjacent integer runs ([0,2],[3,5] -> [0,5]);
    link=0 merges only overlapping/touching closed intervals.
    """
    if len(lo) == 0:
        return lo, hi
    order = np.argsort(lo, kind="stable")
    lo = lo[order]
    hi = hi[order]
    cm = np.maximum.accumulate(hi)
    new = np.empty(len(lo), dtype=bool)
    new[0] = True
    new[1:] = lo[1:] > cm[:-1] + link
    idx = np.flatnonzero(new)
    out_lo = lo[idx]
    out_hi = np.empty(len(idx), dtype=np.int64)
    out_hi[:-1] = cm[idx[1:] - 1]
    out_hi[-1] = cm[-1]
    return out_lo, out_hi


def _split_long_runs(run_lo, run_hi, cap):
    """Split runs longer than cap so chunked expansion stays bounded."""
    lengths = run_hi - run_lo + 1
    if not np.any(lengths > cap):
        return run_lo, run_hi
    out_lo, out_hi = [], []
    for lo, hi in zip(run_lo.tolist(), run_hi.tolist()):
        while hi - lo + 1 > cap:
            out_lo.append(lo)
            out_hi.append(lo + cap - 1)
            lo += cap
        out_lo.append(lo)
        out_hi.append(hi)
    return np.array(out_lo, dtype=np.int64), np.array(out_hi, dtype=np.int64)


def _advance_runs(run_lo, run_hi, n, b_runs):
    """Start runs of the next level: images n*S + b over all b."""
    pieces_lo: list[np.ndarray] = []
    pieces_hi: list[np.ndarray] = []
    long_runs = [(p, q) for p, q in b_runs if q - p + 1 >= n]
    short_runs = [(p, q) for p, q in b_runs if q - p + 1 < n]
    for p, q in long_runs:
        # consecutive images chain into one run per parent run
        pieces_lo.append(run_lo * n + p)
        pieces_hi.append(run_hi * n + q)
    if short_runs:
        # expand parent runs to individual starts, chunked, merging each
        # chunk immediately so peak memory stays ~chunk * len(short_runs)
        e_lo, e_hi = _split_long_runs(run_lo, run_hi, _EXPAND_CHUNK)
        lengths = (e_hi - e_lo + 1).astype(np.int64)
        i = 0
        while i < len(e_lo):
            j = i + 1
            cnt = int(lengths[i])
            while j < len(e_lo) and cnt + lengths[j] <= _EXPAND_CHUNK:
                cnt += int(lengths[j])
                j += 1
            seg_len = lengths[i:j]
            offs = np.repeat(np.cumsum(seg_len) - seg_len, seg_len)
            starts = np.repeat(e_lo[i:j], seg_len) + (np.arange(len(offs)) - offs)
            base = starts * n
            c_lo = np.concatenate([base + p for p, _ in short_runs])
            c_hi = np.concatenate([base + q for _, q in short_runs])
            m_lo, m_hi = _merge_runs(c_lo, c_hi, link=1)
            pieces_lo.append(m_lo)
            pieces_hi.append(m_hi)
            i = j
    lo = np.concatenate(pieces_lo)
    hi = np.concatenate(pieces_hi)
    return _merge_runs(lo, hi, link=1)


def _b_runs(support: np.ndarray) -> list[tuple[int, int]]:
    breaks = np.flatnonzero(np.diff(support) > 1)
    starts = np.concatenate([[0], breaks + 1])
    ends = np.concatenate([breaks, [len(support) - 1]])
    return [(int(support[s]), int(support[e])) for s, e in zip(starts, ends)]


def _check_feasible(n: int, support_len: int, max_sum: int, m: int, budget: int) -> None:
    word_bound = support_len**m
    range_bound = max_sum * (n**m - 1) // (n - 1) + 2
    if range_bound >= 1 << 62:
        # starts are kept in 64-bit arrays
        raise ValueError(f"depth {m} places starts beyond the 64-bit range")
    if min(word_bound, range_bound) > budget:
        raise BudgetExceededError(min(word_bound, range_bound), budget)


def level_set(A: DigitSet, m: int, budget: int | None = None) -> LevelSet:
    """Exact components of the depth-m cover E_m.

    Accepts canonical and general digit sets.  Raises
    :class:`BudgetExceededError` when both the word count |B|^m and the
    start-range bound exceed the budget (default 10^7, or the
    CANTORSUM_BUDGET environment variable).
    """
    if m < 1:
        raise ValueError("depth must be >= 1")
    budget = _budget(budget)
    profile = sumset_profile(A)
    support = profile.support.astype(np.int64)
    max_sum = int(support[-1])
    n = A.n
    _check_feasible(n, len(support), max_sum, m, budget)
    width = -(-max_sum // (n - 1))
    runs = _b_runs(support)
    run_lo = np.array([r[0] for r in runs], dtype=np.int64)
    run_hi = np.array([r[1] for r in runs], dtype=np.int64)
    for _ in range(m - 1):
        run_lo, run_hi = _advance_runs(run_lo, run_hi, n, runs)
        if len(run_lo) > budget:
            raise BudgetExceededError(len(run_lo), budget)
    comp_lo, comp_hi = _merge_runs(run_lo.copy(), run_hi + width, link=0)
    components = tuple((int(a), int(b)) for a, b in zip(comp_lo, comp_hi))
    return LevelSet(n, m, width, run_lo, run_hi, components)


def level_start_counts(A: DigitSet, m: int, budget: int | None = None) -> list[int]:
    """Number of distinct starts at each depth 1..m (box counting)."""
    budget = _budget(budget)
    profile = sumset_profile(A)
    support = profile.support.astype(np.int64)
    n = A.n
    _check_feasible(n, len(support), int(support[-1]), m, budget)
    runs = _b_runs(support)
    run_lo = np.array([r[0] for r in runs], dtype=np.int64)
    run_hi = np.array([r[1] for r in runs], dtype=np.int64)
    counts = [int(np.sum(run_hi - run_lo + 1))]
    for _ in range(m - 1):
        run_lo, run_hi = _advance_runs(run_lo, run_hi, n, runs)
        if len(run_lo) > budget:
            raise BudgetExceededError(len(run_lo), budget)
        counts.append(int(np.sum(run_hi - run_lo + 1)))
    return counts


def is_refinement(fine: LevelSet, coarse: LevelSet) -> bool:
    """E_fine contained in E_coarse (after rescaling units)."""
    if fine.n != coarse.n or fine.m < coarse.m:
        raise ValueError("need same base and fine.m >= coarse.m")
    f = fine.n ** (fine.m - coarse.m)
    scaled = [(lo * f, hi * f) for lo, hi in coarse.components]
    i = 0
    for lo, hi in fine.components:
        while i < len(scaled) and scaled[i][1] < hi:
            i += 1
        if i == len(scaled) or not (scaled[i][0] <= lo and hi <= scaled[i][1]):
            return False
    return True


# --- multiplicity-aware path (typing counts) --------------------------


def typing_count_evolution(A: DigitSet, m_max: int, budget: int | None = None):
    """Yield (L_m, R_m) for m = 1..m_max.

    L_m counts unit intervals at resolution n^-m covered by exactly one
    cylinder left half and no right half; R_m symmetrically.  A start's
    multiplicity is the sum over digit words producing it of the
    product of ordered-pair counts, saturated at 2 (the typing rules
    only distinguish 0 / 1 / many).
    """
    if not A.canonical:
        raise ValueError("level typing is defined for canonical digit sets only")
    budget = _budget(budget)
    profile = sumset_profile(A)
    n = A.n
    max_sum = 2 * n - 2
    if max_sum * (n**m_max - 1) // (n - 1) + 2 > budget:
        raise BudgetExceededError(max_sum * (n**m_max - 1) // (n - 1) + 2, budget)
    support = profile.support.astype(np.int64)
    sat = np.minimum(profile.counts, 2).astype(np.int32)
    dense = sat.copy()
    for m in range(1, m_max + 1):
        if m > 1:
            size = max_sum * (n**m - 1) // (n - 1) + 1
            nxt = np.zeros(size, dtype=np.int32)
            for b in support:
                cb = int(sat[b])
                view = nxt[b : b + n * len(dense) : n]
                view += dense * cb
            np.minimum(nxt, 2, out=nxt)
            dense = nxt
        padded = np.concatenate([[0], dense, [0]])
        cur = padded[1:]
        prev = padded[:-1]
        L = int(np.count_nonzero((cur == 1) & (prev == 0)))
        R = int(np.count_nonzero((prev == 1) & (cur == 0)))
        yield L, R


def level_typing_counts(A: DigitSet, m: int, budget: int | None = None) -> tuple[int, int]:
    """(L_m, R_m) at a single depth."""
    out = (0, 0)
    for out in typing_count_evolution(A, m, budget):
        pass
    return out


@dataclass(frozen=True)
class GrowthReport:
    """Observed vs. predicted unique-interval counts by depth."""

    n: int
    matrix: tuple[tuple[int, int], tuple[int, int]]
    counts: tuple[tuple[int, int], ...]
    predicted: tuple[tuple[int, int], ...]
    matches_transpose: bool
    matches_direct: bool
    dim: float
    dim_estimates: tuple[float, ...]

    @property
    def orientation(self) -> str:
        if self.matches_transpose and self.matches_direct:
            return "ambiguous"
        if self.matches_transpose:
            return "transpose"
        if self.matches_direct:
            return "direct"
        return "mismatch"

    @property
    def final_estimate_gap(self) -> float:
        return abs(self.dim_estimates[-1] - self.dim)


def _evolve(v: tuple[int, int], M, transpose: bool) -> tuple[int, int]:
    (a, b), (c, d) = M
    L, R = v
    if transpose:
        return (a * L + c * R, b * L + d * R)
    return (a * L + b * R, c * L + d * R)


def growth_check(A: DigitSet, m_max: int, budget: int | None = None,
                 typing: TypingProfile | None = None) -> GrowthReport:
    """Compare oracle typing counts with the matrix-power prediction.

    The closed-form dimension comes from the adjacency matrix; here the
    same matrix must also reproduce the exact unique-interval counts
    level by level, starting from (L_1, R_1) = column sums.  The report
    carries both orientations; `ambiguous` means the matrix is too
    symmetric for the data to tell them apart.
    """
    if typing is None:
        typing = classify_intervals(sumset_profile(A))
    M = typing.matrix
    counts = list(typing_count_evolution(A, m_max, budget))
    pred_t = [counts[0]]
    pred_d = [counts[0]]
    for _ in range(1, len(counts)):
        pred_t.append(_evolve(pred_t[-1], M, transpose=True))
        pred_d.append(_evolve(pred_d[-1], M, transpose=False))
    matches_t = counts == pred_t
    matches_d = counts == pred_d
    (a, b), (c, d) = M
    lam = ((a + d) + math.sqrt((a - d) ** 2 + 4 * b * c)) / 2.0
    trivial = b * c == 0 and max(a, d) <= 1
    dim = 0.0 if trivial else math.log(lam) / math.log(A.n)
    ests = tuple(
        math.log(L + R) / (m * math.log(A.n)) if L + R > 0 else 0.0
        for m, (L, R) in enumerate(counts, start=1)
    )
    return GrowthReport(
        n=A.n,
        matrix=M,
        counts=tuple(counts),
        predicted=tuple(pred_t),
        matches_transpose=matches_t,
        matches_direct=matches_d,
        dim=dim,
        dim_estimates=ests,
    )
