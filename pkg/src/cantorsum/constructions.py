"""Explicit families: square-root-size good sets and doubling towers.

Two constructions carry the asymptotics:

* :func:`sqrt_good_set` builds an n-good set of ~3*sqrt(n) digits from
  a low block, a high block and an arithmetic ladder between them.  Its
  uniqueness set is trivial, which is optimal: any good set must have
  at least sqrt(n) digits.

* :func:`tower` doubles a very-good set.  Appending a shifted copy of
  A at offset 2n-k (k in {0,1,2}) gives a very-good set in base 3n-k
  whose Perron eigenvalue obeys lambda' = 2*lambda - k.  Chaining
  towers from a table of small bases (9..27) reaches any target base
  while the dimension climbs toward log(2)/log(3).

Nothing here trusts the recurrences: every tower output is re-typed
from scratch, and a mismatch with the predicted adjacency matrix or
eigenvalue raises instead of propagating silently.

A bookkeeping note on predicted matrices: with Lam = a + c and
Rho = b + d (total L and R counts of the input typing), the output
adjacency matrix is

    k=0: [[Lam, Rho], [Lam, Rho]]
    k=1: [[Lam, Rho-1], [Lam-1, Rho]]
    k=2: [[Lam-1, Rho-1], [Lam-1, Rho-1]]

The seam between the copies erases one boundary L/R per overlap; the
eigenvalue comes out 2*lambda - k in all three cases because very-good
sets have equal row or column sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import isqrt

import numpy as np

from .digitset import DigitSet, sumset_profile
from .gdifs import (
    DIM_TOL,
    TypingProfile,
    UniquenessReport,
    classify_intervals,
    uniqueness_report,
)

__all__ = [
    "sqrt_good_set",
    "tower",
    "tower_dim",
    "predicted_tower_matrix",
    "chain_to_target",
    "TowerChain",
    "ChainRow",
    "load_base_table",
    "VeryGoodPreconditionError",
    "TowerVerificationError",
    "BaseMissingError",
]


class VeryGoodPreconditionError(ValueError):
    """Tower input is not very-good."""


class TowerVerificationError(RuntimeError):
    """Re-derived tower output disagrees with the predicted recurrence."""


class BaseMissingError(LookupError):
    """Chain reduction landed on a base absent from the table."""


def sqrt_good_set(n: int) -> DigitSet:
    """An n-good set with at most 3*ceil(sqrt(n)) + 3 digits (n >= 9).

    Union of {0..k}, {n-1-k..n-1} and the multiples of k up to n-1,
    with k the smallest integer whose square reaches n-1.  Every sum
    s <= n-1 splits as (multiple of k) + (remainder in the low block);
    sums above n-1 use the high block instead, so the sumset has no
    gaps at all and the set is good with trivial uniqueness set.
    """
    if n < 9:
        raise ValueError("construction needs n >= 9")
    k = isqrt(n - 2) + 1  # smallest k with k*k >= n-1
    low = set(range(k + 1))
    high = set(range(n - 1 - k, n))
    ladder = set(range(0, n, k))
    return DigitSet.of(n, low | high | ladder)


def tower_dim(lam: float, n: int, k: int) -> tuple[float, int]:
    """Eigenvalue/base recurrence of one tower step: (2*lam-k, 3*n-k)."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    return 2 * lam - k, 3 * n - k


def predicted_tower_matrix(matrix, k: int):
    """Adjacency matrix the tower output must re-derive to."""
    (a, b), (c, d) = matrix
    lam_l, rho = a + c, b + d
    if k == 0:
        return ((lam_l, rho), (lam_l, rho))
    if k == 1:
        return ((lam_l, rho - 1), (lam_l - 1, rho))
    if k == 2:
        return ((lam_l - 1, rho - 1), (lam_l - 1, rho - 1))
    raise ValueError("k must be 0, 1 or 2")


def _typed_report(A: DigitSet) -> tuple[TypingProfile, UniquenessReport]:
    profile = sumset_profile(A)
    typing = classify_intervals(profile)
    good = bool(np.all(profile.gaps <= 2))
    return typing, uniqueness_report(typing, A, good=good)


def tower(A: DigitSet, k: int) -> DigitSet:
    """One doubling step: A united with A + (2n - k), in base 3n - k.

    Requires a very-good input (raises
    :class:`VeryGoodPreconditionError` otherwise) and re-derives
    very-goodness of the output from scratch.
    """
    typing, report = _typed_report(A)
    out, _, _ = _tower_step(A, k, typing, report)
    return out


def _tower_step(A: DigitSet, k: int, typing: TypingProfile,
                report: UniquenessReport):
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    if not report.very_good:
        raise VeryGoodPreconditionError(f"{A} is not {A.n}-very-good")
    n = A.n
    shift = 2 * n - k
    out = DigitSet(3 * n - k, A.digits + tuple(a + shift for a in A.digits))
    out_typing, out_report = _typed_report(out)
    if not out_report.very_good:
        raise TowerVerificationError(
            f"tower({A}, k={k}) produced a set that is not very-good"
        )
    want_matrix = predicted_tower_matrix(typing.matrix, k)
    want_lam = 2 * report.lam - k
    if out_typing.matrix != want_matrix or abs(out_report.lam - want_lam) > DIM_TOL:
        raise TowerVerificationError(
            f"tower({A}, k={k}): derived matrix {out_typing.matrix} / "
            f"lambda {out_report.lam} vs predicted {want_matrix} / {want_lam}"
        )
    return out, out_typing, out_report


def load_base_table() -> dict[int, DigitSet]:
    """Bundled table of very-good sets for bases 9..27."""
    text = resources.files("cantorsum.data").joinpath("base_table.json").read_text()
    raw = json.loads(text)
    return {int(n): DigitSet.of(int(n), row["digits"]) for n, row in raw.items()}


def load_base_table_dims() -> dict[int, float]:
    """Reference dimensions quoted alongside the bundled base table."""
    text = resources.files("cantorsum.data").joinpath("base_table.json").read_text()
    raw = json.loads(text)
    return {int(n): float(row["dim"]) for n, row in raw.items()}


@dataclass(frozen=True)
class ChainRow:
    """One verified station of a tower chain."""

    step: int
    k: int | None  # None on the base row
    digitset: DigitSet
    matrix: tuple[tuple[int, int], tuple[int, int]]
    lam: float
    dim: float

    @property
    def n(self) -> int:
        return self.digitset.n


@dataclass(frozen=True)
class TowerChain:
    """Base set plus tower steps reaching a target base.

    Each row's eigenvalue and matrix come from direct typing of the
    row's set; construction fails loudly if they ever disagree with
    the recurrence.
    """

    base: DigitSet
    steps: tuple[int, ...]
    rows: tuple[ChainRow, ...]

    @property
    def final(self) -> ChainRow:
        return self.rows[-1]

    def csv_rows(self) -> list[tuple[int, int, str, float, float]]:
        return [
            (r.step, r.n, r.digitset.csv_cell(), r.lam, r.dim) for r in self.rows
        ]

    def error_terms(self) -> tuple[float, float]:
        """Accumulated corrections (x, y) in the chained dimension.

        dim_t = (t log2 + d log n0 + log(1-x)) / (t log3 + log n0 + log(1-y))
        with d the base dimension; both sums stay small, which is what
        makes the chain dimensions converge to log(2)/log(3).
        """
        n0 = self.base.n
        d = self.rows[0].dim
        x = sum(k / (n0**d * 2**i) for i, k in enumerate(self.steps, start=1))
        y = sum(k / (n0 * 3**i) for i, k in enumerate(self.steps, start=1))
        return x, y


def chain_to_target(n_target: int,
                    base_table: dict[int, DigitSet] | None = None) -> TowerChain:
    """Tower chain from a tabled base to exactly base n_target.

    Reduction picks, at each stage, the unique k in {0,1,2} making
    n + k divisible by 3, until the base falls inside the table range
    (9..27 by default).  Raises :class:`BaseMissingError` when no
    tabled base can reach the target (n_target < 9, or a custom table
    with holes).
    """
    if base_table is None:
        base_table = load_base_table()
    if n_target < 9:
        raise BaseMissingError(f"no tabled base reaches {n_target} (need >= 9)")
    top = max(base_table)
    ks: list[int] = []
    n = n_target
    while n > top:
        k = (-n) % 3
        ks.append(k)
        n = (n + k) // 3
    if n not in base_table:
        raise BaseMissingError(f"chain reduction reached base {n}, not in table")
    ks.reverse()
    A = base_table[n]
    typing, report = _typed_report(A)
    if not report.very_good:
        raise VeryGoodPreconditionError(f"table base {A} is not very-good")
    rows = [ChainRow(0, None, A, typing.matrix, report.lam, report.dim)]
    for i, k in enumerate(ks, start=1):
        A, typing, report = _tower_step(A, k, typing, report)
        rows.append(ChainRow(i, k, A, typing.matrix, report.lam, report.dim))
    assert rows[-1].n == n_target
    return TowerChain(base=rows[0].digitset, steps=tuple(ks), rows=tuple(rows))
