"""Interval typing in base 8: the set {0, 2, 5, 7}.

Among the sums 0..14, exactly 0, 4, 10 and 14 have a single ordered
representation.  Typing the sixteen covering intervals turns those into
a two-node graph system whose eigenvalue gives the dimension.
"""

from cantorsum import DigitSet, analyze, growth_check, sumset_profile

A = DigitSet.of(8, [0, 2, 5, 7])
profile = sumset_profile(A)
print(f"digit set: {A}")
print(f"sumset support: {profile.support.tolist()}")
print(f"unique sums:    {[int(s) for s in profile.support if profile.count_at(int(s)) == 1]}")
print(f"largest gap:    {int(profile.gaps.max())}  (gaps of at most 2 mean the sum fills [0, 2])")

rep = analyze(A)
print(f"\ntyping: {rep.typing.typing_string()}")
(a, b), (c, d) = rep.typing.matrix
print(f"matrix: [[{a}, {b}], [{c}, {d}]]  ->  lambda = {rep.uniqueness.lam}")
print(f"dimension = log({rep.uniqueness.lam:.0f})/log(8) = {rep.uniqueness.dim:.5f}")

print("\nthe finite-depth oracle sees the same growth:")
g = growth_check(A, 5)
for m, (L, R) in enumerate(g.counts, start=1):
    print(f"  depth {m}: {L} left-unique and {R} right-unique intervals")
print(f"counts follow the matrix powers: {g.matches_transpose}")
print("each level multiplies the counts by lambda = 3.")
