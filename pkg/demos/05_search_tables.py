"""Searching for the largest uniqueness dimension per base.

Full enumeration (bit-parallel, reflection-deduplicated) for small
bases; seeded hill climbing with tower warm starts beyond.  The best
known value never crosses log(2)/log(3), and hits it exactly at powers
of three.
"""

from cantorsum import (
    LOG2_OVER_LOG3,
    figure_data,
    search_exhaustive,
    search_heuristic,
)

print("best very-good set per base (exhaustive):")
print(f"{'n':>3} {'digits':<30} {'dim':>13}")
for n in range(9, 19):
    res = search_exhaustive(n, require_very_good=True)
    digits = ",".join(map(str, res.best.digits))
    print(f"{n:>3} {digits:<30} {res.best.dim:>13.10f}")

print("\nheuristic at larger bases (seeded, deterministic):")
for n in (27, 51, 81):
    res = search_heuristic(n, budget=5000, seed=0)
    print(f"{n:>3} dim {res.best.dim:.10f} from {res.evaluations} evaluations")

print("\nfigure data (best known dim vs the log(2)/log(3) ceiling):")
rows, exceed = figure_data(3, 30, budget=2000, seed=0)
for n, best, ref in rows:
    bar = "#" * int(round(best * 60))
    marker = " <- power of 3" if n in (3, 9, 27) else ""
    print(f"{n:>3} {best:.6f} {bar}{marker}")
print(f"\nreference line: {LOG2_OVER_LOG3:.10f}")
print(f"records above the ceiling: {len(exceed)} (expected 0)")
