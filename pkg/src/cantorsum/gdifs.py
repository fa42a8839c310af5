"""Interval typing and the dimension of the uniqueness set.

Partition [0, 2] into 2n intervals I_l = [l/n, (l+1)/n].  Each sumset
element s places one IFS image over I_s and I_{s+1}: its left half
covers I_s, its right half covers I_{s+1}.  An interval is typed

  L  covered by exactly one left half and no right half
     (counts[l] == 1 and counts[l-1] == 0),
  R  covered by exactly one right half and no left half
     (counts[l-1] == 1 and counts[l] == 0),
  O  anything else.

Points interior to an O interval always carry several representations
as x + y, so only L/R intervals can meet the uniqueness set (the points
with exactly one representation).  Tracking how L/R intervals of the
lower half [0, 1] and upper half [1, 2] map into each other yields a
two-node graph-directed IFS whose adjacency matrix

    M = [[a, b],
         [c, d]]

counts typed intervals per quadrant: a = L's below n, b = R's below n,
c = L's at or above n, d = R's at or above n.  The uniqueness set has
Hausdorff dimension log(lambda)/log(n) with lambda the Perron
eigenvalue of M, except in the degenerate lambda = 1 case where it is
just the two endpoints {0, 2}.

Since a, d >= 1 for every canonical set (the extreme intervals are
always typed L and R), integer arithmetic shows lambda is either 1 or
at least 2; there is nothing in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .digitset import DigitSet, SumsetProfile, is_n_good

__all__ = [
    "TYPE_O",
    "TYPE_L",
    "TYPE_R",
    "TypingProfile",
    "UniquenessReport",
    "classify_intervals",
    "uniqueness_report",
    "edge_digit_dimension_bound",
    "perron_eigenvalue",
]

TYPE_O, TYPE_L, TYPE_R = 0, 1, 2
_TYPE_CHARS = np.array(["O", "L", "R"])

# All floating-point comparisons of eigenvalues/dimensions use this.
DIM_TOL = 1e-9


@dataclass(frozen=True)
class TypingProfile:
    """L/R/O labels of the 2n unit intervals plus the quadrant matrix."""

    n: int
    types: np.ndarray = field(repr=False)  # uint8 codes, length 2n
    matrix: tuple[tuple[int, int], tuple[int, int]]

    @property
    def a(self) -> int:
        return self.matrix[0][0]

    @property
    def b(self) -> int:
        return self.matrix[0][1]

    @property
    def c(self) -> int:
        return self.matrix[1][0]

    @property
    def d(self) -> int:
        return self.matrix[1][1]

    def typing_string(self) -> str:
        """The 2n labels, lower and upper halves separated by a space."""
        chars = _TYPE_CHARS[self.types]
        return "".join(chars[: self.n]) + " " + "".join(chars[self.n :])


def classify_intervals(P: SumsetProfile) -> TypingProfile:
    """Type the 2n unit intervals from a canonical sumset profile."""
    n = P.n
    if P.max_sum != 2 * n - 2:
        raise ValueError("typing requires a canonical digit set")
    # counts padded with a leading zero so slot l holds counts[l-1].
    counts = np.zeros(2 * n + 1, dtype=np.int64)
    counts[1 : 1 + len(P.counts)] = P.counts
    cur = counts[1 : 2 * n + 1]   # counts[l] for l = 0..2n-1
    prev = counts[0 : 2 * n]      # counts[l-1]
    types = np.zeros(2 * n, dtype=np.uint8)
    types[(cur == 1) & (prev == 0)] = TYPE_L
    types[(prev == 1) & (cur == 0)] = TYPE_R
    a = int(np.count_nonzero(types[:n] == TYPE_L))
    b = int(np.count_nonzero(types[:n] == TYPE_R))
    c = int(np.count_nonzero(types[n:] == TYPE_L))
    d = int(np.count_nonzero(types[n:] == TYPE_R))
    return TypingProfile(n, types, ((a, b), (c, d)))


def perron_eigenvalue(a: int, b: int, c: int, d: int) -> float:
    """Largest eigenvalue of [[a, b], [c, d]], closed form."""
    return ((a + d) + math.sqrt((a - d) ** 2 + 4 * b * c)) / 2.0


@dataclass(frozen=True)
class UniquenessReport:
    """Dimension data for the set of uniquely representable sums.

    When ``good`` is False the digit set does not cover [0, 2] and the
    numbers describe the graph-directed attractor built from the same
    typing; they still lower-bound what survives of the uniqueness set.
    """

    lam: float
    dim: float
    trivial: bool
    very_good: bool
    good: bool

    @property
    def nontrivial(self) -> bool:
        return not self.trivial


def uniqueness_report(T: TypingProfile, A: DigitSet,
                      good: bool | None = None) -> UniquenessReport:
    """Perron eigenvalue, dimension and flags for a typed digit set.

    Pass ``good`` when goodness is already known to skip rebuilding the
    sumset profile.
    """
    a, b, c, d = T.a, T.b, T.c, T.d
    lam = perron_eigenvalue(a, b, c, d)
    # Exact integer form of lambda == 1: with bc = 0 the eigenvalue is
    # max(a, d), and bc >= 1 already forces lambda >= 2.
    trivial = b * c == 0 and max(a, d) <= 1
    dim = 0.0 if trivial else math.log(lam) / math.log(A.n)
    if good is None:
        good = is_n_good(A)
    very_good = (
        good
        and 1 not in A
        and A.n - 2 not in A
        and (a + b == c + d or a + c == b + d)
    )
    return UniquenessReport(lam=lam, dim=dim, trivial=trivial,
                            very_good=very_good, good=good)


def edge_digit_dimension_bound(A: DigitSet, R: UniquenessReport) -> bool:
    """Check: if neither 1 nor n-2 is a digit, the report is non-trivial.

    Omitting those two digits forces all four quadrant counts positive,
    so lambda >= 2.  Returns True when the implication holds for this
    set (vacuously if 1 or n-2 is present).
    """
    if 1 in A or A.n - 2 in A:
        return True
    return R.lam >= 2 - DIM_TOL
