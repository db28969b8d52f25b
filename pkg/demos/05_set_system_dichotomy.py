"""Why the one-sided bound is the right target: an exact counterexample.

Take all N-subsets of {1, ..., 2N} as points and give each ground element i
the function f_i = (1/N) * indicator(i in A). The f_i are tiny in sup norm
and sum to 1 everywhere, yet every sub-collection S pins to an endpoint:
|S| <= N forces min 0, |S| >= N forces max 1. No sub-collection is confined
to an interval (delta, 1 - delta), so no two-sided analogue of the frame
selection theorem can hold in this generality.
"""

from fractions import Fraction

from framesel import build_katz, closed_form_range, dichotomy_check, subset_sum_range

N = 4
system = build_katz(N)
print(f"ground set {{1..{2 * N}}}, points = all {N}-subsets: {system.num_points} of them")
print(f"functions: f_i = 1/{N} on points containing i; sup norm 1/{N} each, sum = 1 everywhere")

for members in [(1,), (1, 2, 3), (1, 2, 3, 4), (1, 2, 3, 4, 5), tuple(range(1, 2 * N + 1))]:
    lo, hi = subset_sum_range(system, members)
    print(f"  S = {members}: range [{lo}, {hi}]  (closed form {closed_form_range(N, len(members))})")

report = dichotomy_check(system, mode="exhaustive")
print(f"\nexhaustive check over all {report.subsets_checked} subsets of the ground set:")
print(f"  min pinned to 0: {report.min_pinned}, max pinned to 1: {report.max_pinned}, "
      f"both (|S| = N): {report.both_pinned}")
print(f"  confined subsets: {len(report.violations)} (the dichotomy says none can exist)")

# exact arithmetic end to end: every value is an integer count of 1/N units
lo, hi = subset_sum_range(system, (2, 4, 6))
assert isinstance(lo, Fraction) and isinstance(hi, Fraction)
print(f"\nvalues are exact rationals, e.g. range of S = (2, 4, 6): [{lo}, {hi}]")

print("""
contrast: in the frame setting, selecting n = m/2 vectors keeps the norm
below 1/2 + 1/sqrt(N) + 1/(2(sqrt(N)-1)), strictly inside [0, 1) once N is
large, while this set system pins every half-sized sub-collection to 1.
the one-sided cap is what survives; two-sided confinement does not.""")
