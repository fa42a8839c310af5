"""What the exact finite-depth oracle can and cannot see.

The oracle expands cylinder starts level by level in integer
arithmetic: components of the depth-m cover, counts of uniquely covered
intervals, and their growth.  It refutes or corroborates the
closed-form results at finite depth -- it never proves infinite-depth
facts, which is exactly why it makes a good independent witness.
"""

from cantorsum import DigitSet, growth_check, level_set, level_typing_counts

print("general-mode digits {0,1,7,8} in base 5 (digits exceed the base):")
A = DigitSet.of(5, [0, 1, 7, 8])
for m in (1, 2, 4):
    ls = level_set(A, m)
    comps = ", ".join(f"[{lo}, {hi}]" for lo, hi in ls.component_fractions())
    print(f"  depth {m}: {ls.n_starts} starts, components {comps}")
print("  the three components are already exact at depth 1.")

print("\nternary pair, unique-interval counts double per level:")
A3 = DigitSet.of(3, [0, 2])
for m in (1, 2, 3, 4):
    L, R = level_typing_counts(A3, m)
    print(f"  depth {m}: L={L}, R={R}")

print("\ndimension estimates sharpen with depth (base 8 example):")
g = growth_check(DigitSet.of(8, [0, 2, 5, 7]), 6)
for m, est in enumerate(g.dim_estimates, start=1):
    print(f"  depth {m}: log(L+R)/(m log n) = {est:.5f}")
print(f"  closed form: {g.dim:.5f}")

print("\nbudget discipline: the oracle refuses blowups instead of thrashing")
try:
    level_set(DigitSet.of(12, [0, 2, 3, 5, 9, 11]), 9)
except Exception as exc:
    print(f"  {type(exc).__name__}: {exc}")
