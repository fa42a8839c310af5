"""Exhaustive and randomized search for large uniqueness dimensions.

Digit sets live in machine words: bit d of a mask means digit d is
present.  For one mask the whole analysis is a handful of word
operations:

* The sumset support is the OR of the mask shifted by each of its own
  digits (bit s set iff some ordered pair sums to s).
* Saturated multiplicities come from a carry-save pass over the same
  shifted words: m1 collects bits seen at least once, m2 bits seen at
  least twice.  The number of shifted words covering s *is* the
  ordered-pair count of s, so m1 & ~m2 marks the unique sums -- all the
  typing rules ever need.
* Goodness is "support dilated by two shifts covers 0..2n-2".
* L/R interval words follow from the unique and support words, and the
  quadrant counts a, b, c, d are four popcounts.

This evaluates one digit set in O(n) word ops with no per-pair loop,
which is what makes full enumeration at base 27 (2^25 sets) a matter
of seconds to minutes.  The same formulas are implemented twice: once
over numpy arrays of masks (exhaustive batches, optionally threaded)
and once over Python ints (hill climbing); tests hold the two kernels
and the reference interval-typing path to identical answers.

Every batch also asserts the cheap integer invariants inline
(eigenvalue dichotomy, lambda <= |A|, good sets need >= sqrt(n)
digits, the missing-edge-digit bound) and any record whose dimension
exceeds log(2)/log(3) + 1e-9 is collected for the conjecture monitor
rather than silently kept.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constructions import chain_to_target, load_base_table, sqrt_good_set
from .digitset import DigitSet

__all__ = [
    "SearchRecord",
    "SearchResult",
    "InfeasibleSearchError",
    "search_exhaustive",
    "iter_exhaustive_records",
    "search_heuristic",
    "figure_data",
    "LOG2_OVER_LOG3",
    "MONITOR_TOL",
    "EXHAUSTIVE_MAX_N",
]

LOG2_OVER_LOG3 = math.log(2) / math.log(3)
MONITOR_TOL = 1e-9
EXHAUSTIVE_MAX_N = 30
_BATCH = 1 << 20

# 16-bit reversal table; two lookups reverse the <= 30-bit masks.
_REV16 = np.zeros(1 << 16, dtype=np.uint64)
for _i in range(16):
    _REV16 |= ((np.arange(1 << 16, dtype=np.uint64) >> _i) & 1) << (15 - _i)


class InfeasibleSearchError(ValueError):
    """Exhaustive enumeration refused; use the heuristic search."""


@dataclass(frozen=True)
class SearchRecord:
    """One analyzed digit set, as a table row."""

    n: int
    digits: tuple[int, ...]
    good: bool
    very_good: bool
    a: int
    b: int
    c: int
    d: int
    lam: float
    dim: float

    def csv_row(self) -> tuple:
        return (
            self.n, ";".join(map(str, self.digits)), self.good, self.very_good,
            self.a, self.b, self.c, self.d, self.lam, self.dim,
        )

    @property
    def digitset(self) -> DigitSet:
        return DigitSet(self.n, self.digits)


@dataclass(frozen=True)
class SearchResult:
    """Best record plus bookkeeping for manifests and the monitor."""

    best: SearchRecord | None
    n_enumerated: int
    n_matching: int
    evaluations: int
    exceedances: tuple[SearchRecord, ...]
    source: str


def _mask_digits(n: int, mask: int) -> tuple[int, ...]:
    return tuple(d for d in range(n) if (mask >> d) & 1)


def _reflect_mask(n: int, mask: np.ndarray) -> np.ndarray:
    rev32 = (_REV16[mask & np.uint64(0xFFFF)] << np.uint64(16)) | _REV16[mask >> np.uint64(16)]
    return rev32 >> np.uint64(32 - n)


def _kernel(n: int, masks: np.ndarray):
    """Vectorized analysis of a batch of digit-set masks."""
    m1 = np.zeros_like(masks)
    m2 = np.zeros_like(masks)
    one = np.uint64(1)
    for d in range(n):
        has = ((masks >> np.uint64(d)) & one).astype(bool)
        w = np.where(has, masks << np.uint64(d), np.uint64(0))
        m2 |= m1 & w
        m1 |= w
    word_mask = np.uint64((1 << (2 * n)) - 1)
    low_mask = np.uint64((1 << n) - 1)
    below_top = np.uint64((1 << (2 * n - 2)) - 1)
    m1 &= word_mask
    m2 &= word_mask
    # a gap > 2 shows as a support bit with the next two bits clear
    bad = m1 & ~(m1 >> one) & ~(m1 >> np.uint64(2)) & below_top
    good = bad == 0
    unique = m1 & ~m2
    l_word = (unique & ~(m1 << one)) & word_mask
    r_word = ((unique << one) & ~m1) & word_mask
    a = np.bitwise_count(l_word & low_mask).astype(np.int64)
    b = np.bitwise_count(r_word & low_mask).astype(np.int64)
    c = np.bitwise_count(l_word >> np.uint64(n)).astype(np.int64)
    d = np.bitwise_count(r_word >> np.uint64(n)).astype(np.int64)
    lam = ((a + d) + np.sqrt((a - d) ** 2 + 4 * b * c)) / 2.0
    trivial = (b * c == 0) & (np.maximum(a, d) <= 1)
    dim = np.where(trivial, 0.0, np.log(np.maximum(lam, 1.0)) / math.log(n))
    size = np.bitwise_count(masks).astype(np.int64)
    bit1 = ((masks >> one) & one).astype(bool)
    bitn2 = ((masks >> np.uint64(n - 2)) & one).astype(bool)
    very_good = good & ~bit1 & ~bitn2 & ((a + b == c + d) | (a + c == b + d))
    # inline integer invariants: dichotomy, containment, size bounds
    assert np.all(trivial | (lam >= 2 - 1e-9)), "eigenvalue dichotomy violated"
    assert np.all(lam <= size + 1e-9), "lambda exceeded |A|"
    assert np.all(~good | (size * size >= n)), "good set smaller than sqrt(n)"
    assert np.all(
        ~(good & ~bit1 & ~bitn2) | (lam >= 2 - 1e-9)
    ), "missing-edge-digit bound violated"
    return good, very_good, a, b, c, d, lam, dim


def eval_mask(n: int, mask: int):
    """Pure-Python twin of the batch kernel for a single mask."""
    m1 = 0
    m2 = 0
    for d in range(n):
        if (mask >> d) & 1:
            w = mask << d
            m2 |= m1 & w
            m1 |= w
    word_mask = (1 << (2 * n)) - 1
    below_top = (1 << (2 * n - 2)) - 1
    m1 &= word_mask
    m2 &= word_mask
    good = m1 & ~(m1 >> 1) & ~(m1 >> 2) & below_top == 0
    unique = m1 & ~m2
    l_word = (unique & ~(m1 << 1)) & word_mask
    r_word = ((unique << 1) & ~m1) & word_mask
    low_mask = (1 << n) - 1
    a = (l_word & low_mask).bit_count()
    b = (r_word & low_mask).bit_count()
    c = (l_word >> n).bit_count()
    d = (r_word >> n).bit_count()
    lam = ((a + d) + math.sqrt((a - d) ** 2 + 4 * b * c)) / 2.0
    trivial = b * c == 0 and max(a, d) <= 1
    dim = 0.0 if trivial else math.log(lam) / math.log(n)
    very_good = (
        good
        and not (mask >> 1) & 1
        and not (mask >> (n - 2)) & 1
        and (a + b == c + d or a + c == b + d)
    )
    return good, very_good, a, b, c, d, lam, dim


def _record(n: int, mask: int, row) -> SearchRecord:
    good, very_good, a, b, c, d, lam, dim = row
    return SearchRecord(
        n=n, digits=_mask_digits(n, mask), good=bool(good),
        very_good=bool(very_good), a=int(a), b=int(b), c=int(c), d=int(d),
        lam=float(lam), dim=float(dim),
    )


def _better(cand: SearchRecord, best: SearchRecord | None) -> bool:
    """Maximize dim; break exact ties toward the smaller digit list."""
    if best is None:
        return True
    if cand.dim != best.dim:
        return cand.dim > best.dim
    return cand.digits < best.digits


def _masks_for(n: int, lo: int, hi: int) -> np.ndarray:
    inner = np.arange(lo, hi, dtype=np.uint64)
    return np.uint64(1) | (inner << np.uint64(1)) | np.uint64(1 << (n - 1))


def _scan_range(n: int, lo: int, hi: int, require_good: bool,
                require_very_good: bool):
    best: SearchRecord | None = None
    n_enumerated = 0
    n_matching = 0
    exceed: list[SearchRecord] = []
    for start in range(lo, hi, _BATCH):
        stop = min(start + _BATCH, hi)
        masks = _masks_for(n, start, stop)
        canonical = _reflect_mask(n, masks) >= masks
        masks = masks[canonical]
        if len(masks) == 0:
            continue
        good, very_good, a, b, c, d, lam, dim = _kernel(n, masks)
        n_enumerated += len(masks)
        keep = np.ones(len(masks), dtype=bool)
        if require_very_good:
            keep &= very_good
        elif require_good:
            keep &= good
        n_matching += int(np.count_nonzero(keep))
        over = keep & (dim > LOG2_OVER_LOG3 + MONITOR_TOL)
        for i in np.flatnonzero(over):
            exceed.append(_record(n, int(masks[i]), (
                good[i], very_good[i], a[i], b[i], c[i], d[i], lam[i], dim[i])))
        if not np.any(keep):
            continue
        dims = np.where(keep, dim, -1.0)
        top = dims.max()
        if best is not None and top < best.dim:
            continue
        for i in np.flatnonzero(dims == top):
            cand = _record(n, int(masks[i]), (
                good[i], very_good[i], a[i], b[i], c[i], d[i], lam[i], dim[i]))
            if _better(cand, best):
                best = cand
    return best, n_enumerated, n_matching, exceed


def search_exhaustive(n: int, require_good: bool = False,
                      require_very_good: bool = False,
                      threads: int = 1) -> SearchResult:
    """Enumerate every canonical digit set for base n (n <= 30).

    Sets are deduplicated under reflection (the kept representative is
    the one whose mask is not larger than its mirror's).  The best
    record maximizes dim under the constraints, ties broken by the
    lexicographically smallest digit list.  Work splits over
    subset-index ranges; the merge is associative and commutative, so
    the result does not depend on the thread count.
    """
    if n < 3:
        raise ValueError("base must be >= 3")
    if n > EXHAUSTIVE_MAX_N:
        raise InfeasibleSearchError(
            f"2^{n - 2} digit sets is beyond exhaustive reach; "
            f"use search_heuristic"
        )
    total = 1 << (n - 2)
    threads = max(1, int(threads))
    if threads == 1 or total < 4 * _BATCH:
        parts = [_scan_range(n, 0, total, require_good, require_very_good)]
    else:
        bounds = np.linspace(0, total, threads + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda se: _scan_range(n, int(se[0]), int(se[1]),
                                       require_good, require_very_good),
                zip(bounds[:-1], bounds[1:]),
            ))
    best: SearchRecord | None = None
    n_enumerated = 0
    n_matching = 0
    exceed: list[SearchRecord] = []
    for b_part, ne, nm, ex in parts:
        n_enumerated += ne
        n_matching += nm
        exceed.extend(ex)
        if b_part is not None and _better(b_part, best):
            best = b_part
    exceed.sort(key=lambda r: (r.n, r.digits))
    return SearchResult(best=best, n_enumerated=n_enumerated,
                        n_matching=n_matching, evaluations=n_enumerated,
                        exceedances=tuple(exceed), source="exhaustive")


def iter_exhaustive_records(n: int, require_good: bool = False,
                            require_very_good: bool = False):
    """Stream every reflection-canonical record (small n)."""
    if n > EXHAUSTIVE_MAX_N:
        raise InfeasibleSearchError("too many sets to stream")
    total = 1 << (n - 2)
    for start in range(0, total, _BATCH):
        stop = min(start + _BATCH, total)
        masks = _masks_for(n, start, stop)
        masks = masks[_reflect_mask(n, masks) >= masks]
        if len(masks) == 0:
            continue
        good, very_good, a, b, c, d, lam, dim = _kernel(n, masks)
        for i in range(len(masks)):
            if require_very_good and not very_good[i]:
                continue
            if require_good and not good[i]:
                continue
            yield _record(n, int(masks[i]), (
                good[i], very_good[i], a[i], b[i], c[i], d[i], lam[i], dim[i]))


def _random_inner(rng, bits: int) -> int:
    """Uniform random integer with the given bit width (any width)."""
    val = 0
    for off in range(0, bits, 32):
        width = min(32, bits - off)
        val |= int(rng.integers(0, 1 << width)) << off
    return val


def _seed_masks(n: int) -> list[int]:
    """Deterministic warm starts: tower chain, table row, sqrt family."""
    seeds = []
    if n >= 9:
        try:
            chain = chain_to_target(n)
            seeds.append(sum(1 << d for d in chain.final.digitset.digits))
        except Exception:
            pass
        table = load_base_table()
        if n in table:
            seeds.append(sum(1 << d for d in table[n].digits))
        try:
            seeds.append(sum(1 << d for d in sqrt_good_set(n).digits))
        except ValueError:
            pass
    seeds.append((1 << n) - 1)  # the full digit set is always good
    out = []
    for s in seeds:
        if s not in out:
            out.append(s)
    return out


def search_heuristic(n: int, budget: int = 10_000, seed: int = 0,
                     require_good: bool = True,
                     require_very_good: bool = False) -> SearchResult:
    """Randomized hill climbing over digit flips, deterministic by seed.

    Starts from tower/table/sqrt seeds plus random restarts, flipping
    one interior digit at a time and keeping strict improvements;
    non-good proposals are evaluated (they cost budget) but never
    climbed onto when goodness is required.  For tiny n the whole
    space is enumerated instead.  `budget` caps the number of
    single-set evaluations.
    """
    if n < 3:
        raise ValueError("base must be >= 3")
    base = 1 | (1 << (n - 1))
    inner_bits = n - 2

    def meets(row) -> bool:
        if require_very_good:
            return bool(row[1])
        if require_good:
            return bool(row[0])
        return True

    if (1 << inner_bits) <= 64:
        # space is smaller than any sensible budget: enumerate
        best = None
        matching = 0
        exceed = []
        for inner in range(1 << inner_bits):
            mask = base | (inner << 1)
            row = eval_mask(n, mask)
            if not meets(row):
                continue
            matching += 1
            cand = _record(n, mask, row)
            if cand.dim > LOG2_OVER_LOG3 + MONITOR_TOL:
                exceed.append(cand)
            if _better(cand, best):
                best = cand
        return SearchResult(best=best, n_enumerated=1 << inner_bits,
                            n_matching=matching, evaluations=1 << inner_bits,
                            exceedances=tuple(exceed), source="heuristic")
    rng = np.random.default_rng(seed)
    evals = 0
    best: SearchRecord | None = None
    exceed: list[SearchRecord] = []
    matching = 0

    def consider(mask: int):
        """Evaluate one mask; returns (record-or-None, climbable)."""
        nonlocal evals, best, matching
        evals += 1
        row = eval_mask(n, mask)
        climbable = row[0] or not (require_good or require_very_good)
        if not meets(row):
            return None, climbable, row
        matching += 1
        cand = _record(n, mask, row)
        if cand.dim > LOG2_OVER_LOG3 + MONITOR_TOL:
            exceed.append(cand)
        if _better(cand, best):
            best = cand
        return cand, climbable, row

    seeds = _seed_masks(n)
    stack = list(seeds)
    current_mask: int | None = None
    current_dim = -1.0
    stuck = 0
    max_stuck = 4 * n
    while evals < budget:
        if current_mask is None:
            if stack:
                mask = stack.pop(0)
            else:
                mask = base | (_random_inner(rng, inner_bits) << 1)
            _, climbable, row = consider(mask)
            if climbable:
                current_mask = mask
                current_dim = row[7]
            stuck = 0
            continue
        d = int(rng.integers(1, n - 1))
        mask = current_mask ^ (1 << d)
        _, climbable, row = consider(mask)
        if climbable and row[7] > current_dim:
            current_mask = mask
            current_dim = row[7]
            stuck = 0
        else:
            stuck += 1
            if stuck > max_stuck:
                current_mask = None
    exceed.sort(key=lambda r: (r.n, r.digits))
    return SearchResult(best=best, n_enumerated=evals, n_matching=matching,
                        evaluations=evals, exceedances=tuple(exceed),
                        source="heuristic")


def figure_data(n_lo: int, n_hi: int, budget: int = 10_000, seed: int = 0,
                threads: int = 1, exhaustive_limit: int = 18):
    """Best known dimension per base, for plotting against log2/log3.

    Per base: exhaustive search when feasible, otherwise hill climbing
    floored by the tower-chain value.  Returns (rows, exceedances)
    where rows are (n, best_dim, reference).
    """
    rows: list[tuple[int, float, float]] = []
    exceed: list[SearchRecord] = []
    for n in range(n_lo, n_hi + 1):
        if n <= exhaustive_limit:
            res = search_exhaustive(n, require_good=True, threads=threads)
        else:
            res = search_heuristic(n, budget=budget, seed=seed)
        best = res.best.dim if res.best is not None else 0.0
        if n >= 9:
            best = max(best, chain_to_target(n).final.dim)
        exceed.extend(res.exceedances)
        rows.append((n, best, LOG2_OVER_LOG3))
    return rows, exceed
