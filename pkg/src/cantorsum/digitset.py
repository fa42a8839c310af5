"""Digit sets and their sumsets, in exact integer arithmetic.

A digit set is a pair (n, A) with A a strictly increasing list of
non-negative integers and n >= 3 the base.  It describes the linear
Cantor set obtained by keeping only base-n expansions whose digits lie
in A, i.e. the attractor of the maps x -> (x + a)/n for a in A.

Two modes are distinguished:

  canonical  0 and n-1 belong to A and A is a subset of {0..n-1}.
             All dimension theory (typing, towers, search) lives here.
  general    digits may exceed n-1 (still >= 0, smallest digit 0).
             Only the finite-depth oracle accepts these.

The central object downstream is the sumset A + A with ordered-pair
multiplicities: counts[s] = #{(a, a') in A x A : a + a' = s}.  The sum
of two copies of the Cantor set equals the Cantor set of the sumset in
the same base, so questions about C_A + C_A reduce to questions about
the sumset's support and multiplicities.

A canonical A is called *good* when C_A + C_A = [0, 2].  At level one
the maps of the sumset IFS cover intervals of length 2/n placed at the
support elements; the union is all of [0, 2] exactly when consecutive
support elements are at most 2 apart, and an invariant interval equals
the attractor.  Hence goodness is the integer gap condition tested by
:func:`is_n_good`.  The finite-depth oracle cross-validates this rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "DigitSet",
    "SumsetProfile",
    "sumset_profile",
    "is_n_good",
    "reflect",
]

# Pair-sum histograms are built in chunks of at most this many pairs so
# that sets with thousands of digits stay within a few hundred MB.
_PAIR_CHUNK = 4_000_000


@dataclass(frozen=True)
class DigitSet:
    """A base together with an increasing tuple of digits."""

    n: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise ValueError(f"base must be an integer >= 3, got {self.n!r}")
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        if len(digits) < 2:
            raise ValueError("need at least two digits")
        if any(d < 0 for d in digits):
            raise ValueError("digits must be non-negative")
        if any(digits[i] >= digits[i + 1] for i in range(len(digits) - 1)):
            raise ValueError("digits must be strictly increasing (no duplicates)")
        if digits[0] != 0:
            raise ValueError("smallest digit must be 0 (translate the set first)")

    @classmethod
    def of(cls, n: int, digits: Iterable[int]) -> "DigitSet":
        """Build from any iterable, sorting and checking for duplicates."""
        ds = sorted(int(d) for d in digits)
        return cls(n, tuple(ds))

    @classmethod
    def general(cls, n: int, digits: Iterable[int]) -> "DigitSet":
        """Build a general-mode set, translating so the smallest digit is 0."""
        ds = sorted(int(d) for d in digits)
        if not ds:
            raise ValueError("empty digit set")
        lo = ds[0]
        return cls(n, tuple(d - lo for d in ds))

    @property
    def canonical(self) -> bool:
        """True when 0, n-1 are digits and every digit is below n."""
        return self.digits[-1] == self.n - 1

    @property
    def size(self) -> int:
        return len(self.digits)

    def __contains__(self, d: int) -> bool:
        return d in set(self.digits)

    def __iter__(self):
        return iter(self.digits)

    # --- serialization ------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "digits": list(self.digits)})

    @classmethod
    def from_json(cls, text: str) -> "DigitSet":
        obj = json.loads(text)
        return cls(int(obj["n"]), tuple(int(d) for d in obj["digits"]))

    def csv_cell(self) -> str:
        return ";".join(str(d) for d in self.digits)

    @classmethod
    def from_csv_cell(cls, n: int, cell: str) -> "DigitSet":
        return cls.of(n, (int(p) for p in cell.split(";")))

    def __str__(self) -> str:
        return f"{{{','.join(map(str, self.digits))}}} base {self.n}"


@dataclass(frozen=True)
class SumsetProfile:
    """Ordered-pair multiplicity table of A + A.

    counts[s] is the number of ordered pairs of digits summing to s;
    support lists the s with counts[s] > 0.  For canonical sets the
    table spans 0..2n-2 and its two endpoints have multiplicity one.
    """

    n: int
    counts: np.ndarray = field(repr=False)
    support: np.ndarray = field(repr=False)

    def count_at(self, s: int) -> int:
        """Multiplicity of s, zero outside the table."""
        if 0 <= s < len(self.counts):
            return int(self.counts[s])
        return 0

    @property
    def max_sum(self) -> int:
        return int(self.support[-1])

    @property
    def gaps(self) -> np.ndarray:
        """Differences between consecutive support elements."""
        return np.diff(self.support)


def sumset_profile(A: DigitSet) -> SumsetProfile:
    """Multiplicity table of A + A over ordered pairs.

    Works in either mode.  Cost is |A|^2 increments, chunked so that
    even the million-base tower sets (|A| ~ 6000) run in well under a
    second.
    """
    digits = np.asarray(A.digits, dtype=np.int64)
    top = 2 * int(digits[-1])
    counts = np.zeros(top + 1, dtype=np.int64)
    k = len(digits)
    rows_per_chunk = max(1, _PAIR_CHUNK // k)
    for i in range(0, k, rows_per_chunk):
        block = (digits[i : i + rows_per_chunk, None] + digits[None, :]).ravel()
        counts += np.bincount(block, minlength=top + 1)
    support = np.flatnonzero(counts)
    return SumsetProfile(A.n, counts, support)


def is_n_good(A: DigitSet) -> bool:
    """Decide whether C_A + C_A = [0, 2].

    True exactly when consecutive elements of the sumset support are at
    most 2 apart.  Canonical sets only; general-mode sets have no fixed
    target interval and belong to the oracle.
    """
    if not A.canonical:
        raise ValueError("goodness is defined for canonical digit sets only")
    profile = sumset_profile(A)
    return bool(np.all(profile.gaps <= 2))


def reflect(A: DigitSet) -> DigitSet:
    """Mirror image {n-1-a : a in A}; canonical sets only."""
    if not A.canonical:
        raise ValueError("reflection is defined for canonical digit sets only")
    return DigitSet(A.n, tuple(A.n - 1 - a for a in reversed(A.digits)))
