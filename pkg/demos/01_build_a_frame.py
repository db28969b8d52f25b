"""Construct equal-norm Parseval frames and round-trip them through JSON.

A frame here is m = k*N vectors in C^k, each of squared norm 1/N, whose
rank-one sum is the identity. The harmonic construction takes the first k
columns of the m-point DFT character table; the modulated variant picks a
random row subset and rephases each vector, which changes nothing a
selection run can see.
"""

import tempfile
from pathlib import Path

import numpy as np

from framesel import (
    frame_to_projection,
    harmonic_frame,
    load_frame,
    modulated_harmonic_frame,
    projection_to_frame,
    save_frame,
    validate_frame,
)

k, N = 4, 9
F = harmonic_frame(k, N)
print(f"harmonic frame: k={F.k}, N={F.N}, m={F.m}")
print(" ", validate_frame(F).summary())

norms2 = np.sum(np.abs(F.vectors) ** 2, axis=1)
print(f"  squared norms all equal 1/N: max deviation {np.max(np.abs(norms2 - 1 / N)):.2e}")

T = F.rank_one_sum()
print(f"  rank-one sum vs identity:    {np.linalg.norm(T - np.eye(k)):.2e}")

G = modulated_harmonic_frame(k, N, seed=11)
print(f"modulated variant (seed 11):   {validate_frame(G).summary()}")

# The Gram matrix of a Parseval frame is a rank-k projection with constant
# diagonal 1/N, and any such projection compresses back to a frame.
P = frame_to_projection(F)
print(f"Gram projection: ||P^2 - P|| = {np.linalg.norm(P @ P - P):.2e}, "
      f"trace = {np.trace(P).real:.6f} (rank k = {k})")

F2 = projection_to_frame(P, N)
P2 = frame_to_projection(F2)
print(f"projection -> frame -> projection round trip: {np.max(np.abs(P2 - P)):.2e}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "frame.json"
    save_frame(F, path)
    back = load_frame(path)
    identical = np.array_equal(back.vectors, F.vectors)
    print(f"JSON round trip bit-identical: {identical}")
