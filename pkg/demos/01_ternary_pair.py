"""The classical starting point: digits {0, 2} in base 3.

The set of reals whose ternary expansion avoids the digit 1, added to
itself, fills [0, 2] -- yet the points with only one representation as
x + y form a fractal of dimension log(2)/log(3).  This script walks the
whole pipeline on that one example.
"""

import math

from cantorsum import DigitSet, analyze, sumset_profile

A = DigitSet.of(3, [0, 2])
print(f"digit set: {A}")

profile = sumset_profile(A)
print("\nsumset multiplicities (ordered pairs):")
for s in profile.support:
    print(f"  sum {int(s)}: {profile.count_at(int(s))} pair(s)")
print("sum 2 = 0+2 = 2+0 has two representations; 0 and 4 only one.")

rep = analyze(A)
print(f"\ncovers [0, 2]:   {rep.good}")
print(f"interval typing: {rep.typing.typing_string()}")
print("  L = covered once, from the left half of an image")
print("  R = covered once, from the right half")
print("  O = covered several times (no unique sums inside)")

(a, b), (c, d) = rep.typing.matrix
print(f"\nadjacency matrix of the two-node system: [[{a}, {b}], [{c}, {d}]]")
print(f"largest eigenvalue: {rep.uniqueness.lam}")
print(f"dimension of the uniqueness set: {rep.uniqueness.dim:.10f}")
print(f"log(2)/log(3)                  = {math.log(2) / math.log(3):.10f}")
print(f"\nstructure: {rep.structure.case.value}")
print(f"very good: {rep.uniqueness.very_good}")
