"""Greedy selection under the receding barrier, step by step.

The schedule a_j = 1/sqrt(N) + (1 + 1/(sqrt(N)-1)) * j/m stays ahead of the
growing rank-one sum. At each step every unused vector gets a feasibility
value U; U <= 1 certifies that adding the vector keeps the norm below the
next barrier without raising the potential, and the average of U over the
unused vectors never exceeds 1, so the greedy minimum is always feasible.
"""

import numpy as np

from framesel import (
    averaging_identity_check,
    barrier_schedule,
    harmonic_frame,
    initial_selection_state,
    select_subset,
    selection_step,
)

F = harmonic_frame(8, 25)
n = 100
print(f"frame: k={F.k}, N={F.N}, m={F.m}; selecting n={n}")

schedule = barrier_schedule(F.N, F.m, n)
print(f"schedule: a_0 = {schedule.start:.4f}, step = {schedule.step:.5f}, a_n = {schedule.bound:.4f}")

# drive a few steps by hand to watch the quantities move
state = initial_selection_state(F)
print("\n  j  index      U        Phi^{a_j}   lambda_max      a_j")
for _ in range(6):
    total, count = averaging_identity_check(state, schedule)
    state, step = selection_step(state, schedule)
    print(f"{step.j:4d} {step.index:6d}  {step.feasibility:8.5f}  {step.potential:10.5f}"
          f"  {step.lambda_max:10.6f}  {schedule.values[step.j]:8.5f}"
          f"   (mean U over unused: {total / count:.5f})")

# the full run, via the one-call API
cert = select_subset(F, n)
print(f"\nfull run: |S| = {cert.n}")
print(f"  lambda_max = {cert.lambda_max:.6f}")
print(f"  a_n        = {cert.bound:.6f}")
print(f"  margin     = {cert.margin:.6f}")
print(f"  excess over n/m = {cert.excess:.6f}  (theory: O(1/sqrt(N)))")

phis = [s.potential for s in cert.steps]
print(f"  potential fell from {phis[0]:.4f} to {phis[-1]:.4f}, nonincreasing: "
      f"{all(b <= a + 1e-9 for a, b in zip(phis, phis[1:]))}")

us = np.array([s.feasibility for s in cert.steps])
print(f"  feasibility values: min {us.min():.4f}, max {us.max():.4f} (never above 1)")
