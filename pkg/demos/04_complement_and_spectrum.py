"""The complement bound, and where the selected spectrum actually sits.

The m - n unselected vectors sum to I - T_n, so the upper bound a_n on the
selected sum becomes the lower bound 1 - a_n on the complement: a one-sided
theorem gives a two-sided picture across the partition. The spectrum of T_n
itself clusters near n/m; the barrier only caps the top.
"""

import numpy as np

from framesel import (
    complement_lower_bound,
    eigenvalue_histogram,
    harmonic_frame,
    select_subset,
)

F = harmonic_frame(8, 25)
n = 100
cert = select_subset(F, n)

lam_min, bound = complement_lower_bound(F, cert)
print(f"selected side:   lambda_max(T_n)      = {cert.lambda_max:.6f} < a_n = {cert.bound:.6f}")
print(f"complement side: lambda_min(I - T_n)  = {lam_min:.6f} >= 1 - a_n = {bound:.6f}")
print(f"complement sums over m - n = {F.m - n} vectors")

# spectral mapping: the two sides are mirror images
print(f"check: 1 - lambda_max(T_n) = {1 - cert.lambda_max:.6f} = lambda_min of the complement")

print(f"\nspectrum of T_n (n/m = {n / F.m}):")
for lam in cert.eigenvalues:
    print(f"  {lam:.6f}")

counts, edges = eigenvalue_histogram(cert, bins=8)
print("\nhistogram over [0, a_n]:")
for c, lo, hi in zip(counts, edges, edges[1:]):
    bar = "#" * int(c)
    print(f"  [{lo:.3f}, {hi:.3f})  {bar}")
print("most of the mass sits near n/m; the barrier caps only the top of the spectrum")

print(f"\ntrace check: Tr(T_n) = {np.sum(cert.eigenvalues):.6f} = n/N = {n / F.N}")
