"""Certificates: what a selection run records and how verification replays it.

A certificate carries the schedule, the per-step choices with their
feasibility values, potentials, and norms, and the final spectrum. The
verifier recomputes all of it from the frame alone, so edited claims or a
swapped frame are caught.
"""

import tempfile
from pathlib import Path

from framesel import (
    certificate_from_dict,
    certificate_to_dict,
    harmonic_frame,
    load_certificate,
    save_certificate,
    select_subset,
    verify_certificate,
)

F = harmonic_frame(4, 9)
cert = select_subset(F, 18)
print(f"selected {cert.n} of {F.m}; lambda_max = {cert.lambda_max:.6f} < a_n = {cert.bound:.6f}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "certificate.json"
    save_certificate(cert, path)
    print(f"\ncertificate JSON is {path.stat().st_size} bytes; reloading and verifying:")
    report = verify_certificate(F, load_certificate(path))
    print(report.summary())

# tamper with a recorded eigenvalue: the replay notices
data = certificate_to_dict(cert)
data["final"]["eigenvalues"][-1] -= 0.03
data["steps"][-1]["lambda_max"] -= 0.03
forged = certificate_from_dict(data)
report = verify_certificate(F, forged)
print(f"\nafter shaving the recorded top eigenvalue: passed = {report.passed}")
for line in report.failures():
    print(f"  {line}")

# a frame with different dimensions is rejected before any replay
other = harmonic_frame(2, 6)
report = verify_certificate(other, cert)
print(f"\nwrong frame (k=2, N=6): passed = {report.passed}")
for line in report.failures():
    print(f"  {line}")
