"""Doubling towers: from base 5 to base one million.

Appending a shifted copy of a very-good set produces a very-good set in
roughly triple the base with eigenvalue 2*lambda - k.  Chaining the
step from a small tabled base reaches any target, and the dimension
climbs toward log(2)/log(3).
"""

import math

from cantorsum import DigitSet, chain_to_target, tower, analyze

A = DigitSet.of(5, [0, 2, 4])
print(f"start: {A}, dim {analyze(A).uniqueness.dim:.6f}\n")
for k in (0, 1, 2):
    out = tower(A, k)
    rep = analyze(out)
    print(f"k={k}: {out}")
    print(f"      typing {rep.typing.typing_string()}")
    print(f"      lambda {rep.uniqueness.lam:.0f}, dim {rep.uniqueness.dim:.6f} "
          f"= log({2 * 2 - k})/log({15 - k})")

print("\nchain to one million (every row re-typed from scratch):")
chain = chain_to_target(10**6)
print(f"{'step':>4} {'base':>9} {'digits':>7} {'lambda':>7} {'dim':>13}")
for row in chain.rows:
    print(f"{row.step:>4} {row.n:>9} {row.digitset.size:>7} "
          f"{row.lam:>7.0f} {row.dim:>13.10f}")
print(f"\nlimit of the construction: log(2)/log(3) = "
      f"{math.log(2) / math.log(3):.10f}")
x, y = chain.error_terms()
print(f"accumulated correction terms: x = {x:.5f} (bound 0.75708), "
      f"y = {y:.5f} (bound 1/9)")
