"""Greedy subset selection under a receding spectral barrier.

Given an equal-norm Parseval frame, vectors are chosen one at a time so that
the running rank-one sum T_j keeps its spectral norm strictly below the
schedule value a_j, where

    a_j = 1/sqrt(N) + (1 + 1/(sqrt(N) - 1)) * j / m.

The tool that makes this work is the upper potential

    Phi^a(T) = Tr((aI - T)^{-1}),

which blows up as eigenvalues approach the barrier. A candidate vector v is
safe to add exactly when its feasibility value

    U(v) = <(a'I - T)^{-2} v, v> / (Phi^a(T) - Phi^{a'}(T)) + <(a'I - T)^{-1} v, v>

is at most 1 (with a' the next barrier): then ||T + v (x) v|| < a' and the
potential does not increase. Averaging U over the unused vectors gives
exactly their count, so a qualifying vector always exists and the greedy
loop never stalls. After n steps ||T_n|| < a_n, which is n/m plus an
O(1/sqrt(N)) term.

Every run emits a SelectionCertificate recording per-step choices, margins,
and potentials; ``verify_certificate`` recomputes all of it from scratch.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    BarrierError,
    CertificateMismatchError,
    FrameError,
    SelectionError,
    ToleranceBreachError,
)
from .frames import FrameFamily, validate_frame
from .hermitian import EigenSystem, eigh, outer_product_accumulate, resolvent_quadratic_form


@dataclass(frozen=True, eq=False)
class BarrierSchedule:
    """The bounds a_0 < a_1 < ... < a_n receding ahead of the growing sum."""

    N: int
    m: int
    n: int
    values: np.ndarray  # (n + 1,) float64, strictly increasing

    @property
    def step(self) -> float:
        """Constant increment (1 + 1/(sqrt(N) - 1)) / m."""
        root = math.sqrt(self.N)
        return (1.0 + 1.0 / (root - 1.0)) / self.m

    @property
    def start(self) -> float:
        return float(self.values[0])

    @property
    def bound(self) -> float:
        return float(self.values[-1])


def barrier_schedule(N: int, m: int, n: int) -> BarrierSchedule:
    """a_j = 1/sqrt(N) + (1 + 1/(sqrt(N) - 1)) * j/m for j = 0..n."""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if not 0 <= n < m:
        raise ValueError(f"n must satisfy 0 <= n < m, got n={n}, m={m}")
    root = math.sqrt(N)
    j = np.arange(n + 1, dtype=np.float64)
    values = 1.0 / root + (1.0 + 1.0 / (root - 1.0)) * j / m
    values.setflags(write=False)
    return BarrierSchedule(N=N, m=m, n=n, values=values)


def _potential(eigenvalues: np.ndarray, a: float) -> float:
    if a <= eigenvalues[-1]:
        raise BarrierError(f"barrier violated: a = {a} <= lambda_max = {eigenvalues[-1]}")
    return float(np.sum(1.0 / (a - eigenvalues)))


def _potential_gap(eigenvalues: np.ndarray, a: float, a_next: float) -> float:
    # Phi^a - Phi^{a_next} without cancellation: sum (a_next - a)/((a - l)(a_next - l))
    return float((a_next - a) * np.sum(1.0 / ((a - eigenvalues) * (a_next - eigenvalues))))


def upper_potential(T: np.ndarray, a: float, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Phi^a(T) = Tr((aI - T)^{-1}); requires a above the top eigenvalue."""
    return _potential(eigh(T, tols).eigenvalues, a)


def feasibility_value(
    T: np.ndarray, v: np.ndarray, a: float, a_next: float, tols: Tolerances = DEFAULT_TOLS
) -> float:
    """The quantity U(v) certifying that T + v (x) v stays under the shifted barrier.

    Requires lambda_max(T) < a < a_next. U is nonnegative, vanishes only at
    v = 0, and U <= 1 guarantees both barrier and potential conclusions.
    """
    eig = eigh(T, tols)
    if not eig.lambda_max < a < a_next:
        raise BarrierError(
            f"need lambda_max < a < a_next, got lambda_max={eig.lambda_max}, a={a}, a_next={a_next}"
        )
    gap = _potential_gap(eig.eigenvalues, a, a_next)
    if gap <= tols.gap_floor:
        raise BarrierError(f"potential gap {gap:.3e} at or below the floor {tols.gap_floor:.1e}")
    q2 = resolvent_quadratic_form(eig, a_next, v, 2)
    q1 = resolvent_quadratic_form(eig, a_next, v, 1)
    return q2 / gap + q1


def barrier_push_check(
    T: np.ndarray, v: np.ndarray, a: float, a_next: float, tols: Tolerances = DEFAULT_TOLS
) -> tuple[bool, float]:
    """Add v (x) v and confirm the two certified conclusions.

    For U(v) <= 1 the norm of T + v (x) v must stay below a_next and the
    potential must not rise; a numerical failure of either raises
    ToleranceBreachError with the margins spelled out rather than passing
    silently. Returns (norm_ok, potential at a_next after the update).
    """
    eig_before = eigh(T, tols)
    phi_before = _potential(eig_before.eigenvalues, a)
    updated = outer_product_accumulate(T, v)
    eig_after = eigh(updated, tols)
    norm_ok = eig_after.lambda_max < a_next
    if not norm_ok:
        raise ToleranceBreachError(
            f"norm bound breached: lambda_max = {eig_after.lambda_max} >= a_next = {a_next} "
            f"(margin {a_next - eig_after.lambda_max:.3e})"
        )
    phi_after = _potential(eig_after.eigenvalues, a_next)
    if phi_after > phi_before + tols.potential_slack:
        raise ToleranceBreachError(
            f"potential rose: {phi_after} > {phi_before} (excess {phi_after - phi_before:.3e}, "
            f"slack {tols.potential_slack:.1e})"
        )
    return norm_ok, phi_after


@dataclass(frozen=True, eq=False)
class SelectionState:
    """Mid-run snapshot: chosen prefix, unused indices, and the running sum."""

    frame: FrameFamily
    chosen: tuple[int, ...]     # 1-based, in selection order
    remaining: tuple[int, ...]  # 1-based, ascending
    T: np.ndarray               # (k, k) rank-one sum over chosen
    step: int                   # j = len(chosen)
    eig: EigenSystem | None = field(default=None, compare=False)  # cached factorization of T


@dataclass(frozen=True)
class SelectionStep:
    """Per-step certificate entry (index and values after adding vector j)."""

    j: int                # 1-based step number
    index: int            # 1-based chosen vector
    feasibility: float    # U of the chosen vector, computed before adding
    potential: float      # Phi^{a_j}(T_j)
    lambda_max: float     # top eigenvalue of T_j
    # diagnostics carried in memory only, not serialized
    feasibility_sum: float | None = None   # sum of U over the unused set before the step
    remaining_count: int | None = None     # |S'| before the step


@dataclass(frozen=True, eq=False)
class SelectionCertificate:
    """Replayable record of one greedy run: schedule, steps, final spectrum."""

    schedule: BarrierSchedule
    steps: tuple[SelectionStep, ...]
    indices: tuple[int, ...]    # final set S, 1-based ascending
    eigenvalues: np.ndarray     # spectrum of T_n, ascending
    bound: float                # a_n
    norm_deviation: float = 0.0  # worst input-norm deviation seen at selection time

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def margin(self) -> float:
        """Distance from the final norm to the final barrier (positive iff valid)."""
        return self.bound - self.lambda_max

    @property
    def excess(self) -> float:
        """lambda_max minus the trivial average n/m."""
        return self.lambda_max - self.n / self.schedule.m


def initial_selection_state(F: FrameFamily) -> SelectionState:
    T = np.zeros((F.k, F.k), dtype=np.complex128)
    eig = EigenSystem(
        eigenvalues=np.zeros(F.k, dtype=np.float64),
        eigenvectors=np.eye(F.k, dtype=np.complex128),
    )
    return SelectionState(
        frame=F, chosen=(), remaining=tuple(range(1, F.m + 1)), T=T, step=0, eig=eig
    )


def _feasibility_profile(eig: EigenSystem, candidates: np.ndarray, a: float, a_next: float, gap: float) -> np.ndarray:
    """U values for a batch of candidate row vectors, through one eigenbasis."""
    w2 = np.abs(candidates @ eig.eigenvectors.conj()) ** 2
    inv_next = 1.0 / (a_next - eig.eigenvalues)
    return (w2 @ inv_next**2) / gap + w2 @ inv_next


def selection_step(
    state: SelectionState, schedule: BarrierSchedule, tols: Tolerances = DEFAULT_TOLS
) -> tuple[SelectionState, SelectionStep]:
    """One greedy step: pick the unused vector with the smallest U and add it.

    Exact ties go to the smallest index, so runs are deterministic. Raises
    SelectionError (with the full U profile attached) if no candidate is
    feasible, and ToleranceBreachError if a certified inequality fails after
    the update.
    """
    j = state.step
    if j >= schedule.n:
        raise ValueError(f"schedule exhausted: step {j} of {schedule.n}")
    if not state.remaining:
        raise ValueError("no vectors remain")
    a = float(schedule.values[j])
    a_next = float(schedule.values[j + 1])
    eig = state.eig if state.eig is not None else eigh(state.T, tols)
    if eig.lambda_max >= a:
        raise ToleranceBreachError(
            f"state invalid at step {j}: lambda_max = {eig.lambda_max} >= a_j = {a}"
        )
    gap = _potential_gap(eig.eigenvalues, a, a_next)
    if gap <= tols.gap_floor:
        raise BarrierError(f"potential gap {gap:.3e} at or below the floor {tols.gap_floor:.1e}")
    phi_now = _potential(eig.eigenvalues, a)

    remaining = np.asarray(state.remaining, dtype=np.int64)
    candidates = state.frame.vectors[remaining - 1]
    profile = _feasibility_profile(eig, candidates, a, a_next, gap)
    pos = int(np.argmin(profile))  # first minimum = smallest index on ties
    u_best = float(profile[pos])
    if u_best > 1.0 + tols.feasibility_slack:
        raise SelectionError(
            f"no feasible candidate at step {j}: min U = {u_best} over {len(profile)} vectors "
            f"(frame invalid or tolerances breached)",
            u_profile=profile,
            remaining=state.remaining,
        )

    index = int(remaining[pos])
    v = state.frame.vectors[index - 1]
    T_next = outer_product_accumulate(state.T, v)
    eig_next = eigh(T_next, tols)
    lam = eig_next.lambda_max
    if lam >= a_next:
        raise ToleranceBreachError(
            f"norm bound breached at step {j + 1}: lambda_max = {lam} >= a = {a_next} "
            f"(margin {a_next - lam:.3e})"
        )
    phi_next = _potential(eig_next.eigenvalues, a_next)
    if phi_next > phi_now + tols.potential_slack:
        raise ToleranceBreachError(
            f"potential rose at step {j + 1}: {phi_next} > {phi_now} "
            f"(excess {phi_next - phi_now:.3e})"
        )

    record = SelectionStep(
        j=j + 1,
        index=index,
        feasibility=u_best,
        potential=phi_next,
        lambda_max=lam,
        feasibility_sum=float(profile.sum()),
        remaining_count=len(profile),
    )
    next_state = SelectionState(
        frame=state.frame,
        chosen=state.chosen + (index,),
        remaining=tuple(int(i) for i in remaining[remaining != index]),
        T=T_next,
        step=j + 1,
        eig=eig_next,
    )
    return next_state, record


def select_subset(F: FrameFamily, n: int, tols: Tolerances = DEFAULT_TOLS) -> SelectionCertificate:
    """Greedily select n of the m frame vectors with ||T_n|| < a_n.

    The frame must satisfy m = k N and stay within ``tols.rescale_limit`` of
    the exact norm and Parseval contracts; deviations beyond ``tols.frame_tol``
    are tolerated (the guarantee degrades gracefully) and recorded on the
    certificate. Requires 1 <= n < m.
    """
    report = validate_frame(F, tols.frame_tol, tols)
    if not report.count_ok:
        raise FrameError(f"invalid frame: {report.summary()}")
    if report.norm_deviation > tols.rescale_limit or report.parseval_deviation > tols.rescale_limit:
        raise FrameError(f"frame too far from contract: {report.summary()}")
    if not 1 <= n < F.m:
        raise ValueError(f"n must satisfy 1 <= n < m = {F.m}, got {n}")

    schedule = barrier_schedule(F.N, F.m, n)
    state = initial_selection_state(F)
    steps = []
    for _ in range(n):
        state, record = selection_step(state, schedule, tols)
        steps.append(record)
    return SelectionCertificate(
        schedule=schedule,
        steps=tuple(steps),
        indices=tuple(sorted(state.chosen)),
        eigenvalues=state.eig.eigenvalues.copy(),
        bound=schedule.bound,
        norm_deviation=report.norm_deviation,
    )


def averaging_identity_check(
    state: SelectionState, schedule: BarrierSchedule, tols: Tolerances = DEFAULT_TOLS
) -> tuple[float, int]:
    """Sum of U over the unused vectors, and their count m - j.

    For exact frames the sum never exceeds the count (the proof's averaging
    step), which is why the greedy choice always finds U <= 1.
    """
    j = state.step
    if j >= schedule.n:
        raise ValueError(f"state at step {j} has no next barrier in a schedule of length {schedule.n}")
    a = float(schedule.values[j])
    a_next = float(schedule.values[j + 1])
    eig = state.eig if state.eig is not None else eigh(state.T, tols)
    if eig.lambda_max >= a:
        raise BarrierError(f"lambda_max = {eig.lambda_max} >= a_j = {a}")
    gap = _potential_gap(eig.eigenvalues, a, a_next)
    remaining = np.asarray(state.remaining, dtype=np.int64)
    candidates = state.frame.vectors[remaining - 1]
    profile = _feasibility_profile(eig, candidates, a, a_next, gap)
    return float(profile.sum()), len(profile)


def complement_lower_bound(
    F: FrameFamily, cert: SelectionCertificate, tols: Tolerances = DEFAULT_TOLS
) -> tuple[float, float]:
    """Smallest eigenvalue of the complement sum, against its bound 1 - a_n.

    The unselected m - n vectors sum to I - T_n, so the upper barrier on the
    selected set becomes a uniform lower bound on the complement.
    """
    _require_matching(F, cert)
    selected = set(cert.indices)
    complement = [i for i in range(1, F.m + 1) if i not in selected]
    comp_sum = F.rank_one_sum(complement)
    eig = eigh(comp_sum, tols)
    return eig.lambda_min, 1.0 - cert.bound


def _require_matching(F: FrameFamily, cert: SelectionCertificate) -> None:
    sched = cert.schedule
    if sched.m != F.m or sched.N != F.N:
        raise CertificateMismatchError(
            f"frame/certificate mismatch: frame has (m, N) = ({F.m}, {F.N}), "
            f"certificate has ({sched.m}, {sched.N})"
        )
    if cert.eigenvalues.shape[0] != F.k:
        raise CertificateMismatchError(
            f"frame/certificate mismatch: frame dimension {F.k}, certificate spectrum "
            f"has {cert.eigenvalues.shape[0]} entries"
        )
    for i in cert.indices:
        if not 1 <= i <= F.m:
            raise CertificateMismatchError(f"certificate index {i} outside 1..{F.m}")


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of replaying a certificate from scratch against a frame."""

    checks: tuple[tuple[str, bool, str], ...]
    final_margin: float
    min_step_margin: float

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]

    def summary(self) -> str:
        lines = []
        for name, ok, detail in self.checks:
            lines.append(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        lines.append(f"final margin a_n - lambda_max = {self.final_margin:.6e}")
        lines.append(f"smallest per-step margin      = {self.min_step_margin:.6e}")
        return "\n".join(lines)


def verify_certificate(
    F: FrameFamily, cert: SelectionCertificate, tols: Tolerances = DEFAULT_TOLS
) -> CertificateReport:
    """Recompute every certificate claim from the frame alone.

    Replays the recorded choices step by step: feasibility of each recorded
    U, the strict norm bound at every step, potential monotonicity from the
    exact start k sqrt(N), agreement of the recorded numbers with recomputed
    ones, and the final set, spectrum, and bound.
    """
    checks: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str) -> None:
        checks.append((name, bool(ok), detail))

    try:
        _require_matching(F, cert)
        check("compatibility", True, "frame and certificate dimensions agree")
    except CertificateMismatchError as exc:
        check("compatibility", False, str(exc))
        return CertificateReport(checks=tuple(checks), final_margin=math.nan, min_step_margin=math.nan)

    sched = cert.schedule
    expected = barrier_schedule(sched.N, sched.m, sched.n)
    sched_ok = np.allclose(sched.values, expected.values, rtol=1e-12, atol=0.0)
    check("schedule", sched_ok, "values match the formula" if sched_ok else "schedule values off formula")

    n = sched.n
    count_ok = len(cert.steps) == n and len(cert.indices) == n
    check("counts", count_ok, f"|S| = {len(cert.indices)}, steps = {len(cert.steps)}, n = {n}")
    chosen_order = [s.index for s in cert.steps]
    set_ok = sorted(chosen_order) == list(cert.indices) and len(set(chosen_order)) == len(chosen_order)
    check("index-set", set_ok, "step indices are distinct and match the final set")
    if not (count_ok and set_ok):
        return CertificateReport(checks=tuple(checks), final_margin=math.nan, min_step_margin=math.nan)

    T = np.zeros((F.k, F.k), dtype=np.complex128)
    eig = eigh(T, tols)
    phi_prev = _potential(eig.eigenvalues, float(sched.values[0]))
    min_margin = math.inf
    steps_ok = True
    details = []
    for step in cert.steps:
        a = float(sched.values[step.j - 1])
        a_next = float(sched.values[step.j])
        v = F.vectors[step.index - 1]
        gap = _potential_gap(eig.eigenvalues, a, a_next)
        u = resolvent_quadratic_form(eig, a_next, v, 2) / gap + resolvent_quadratic_form(eig, a_next, v, 1)
        if abs(u - step.feasibility) > 1e-8 * max(1.0, abs(u)):
            steps_ok = False
            details.append(f"step {step.j}: recorded U {step.feasibility} != recomputed {u}")
        if u > 1.0 + tols.feasibility_slack:
            steps_ok = False
            details.append(f"step {step.j}: U = {u} exceeds 1 + slack")
        T = outer_product_accumulate(T, v)
        eig = eigh(T, tols)
        lam = eig.lambda_max
        min_margin = min(min_margin, a_next - lam)
        if not lam < a_next:
            steps_ok = False
            details.append(f"step {step.j}: lambda_max = {lam} >= a_j = {a_next}")
        if abs(lam - step.lambda_max) > 1e-8 * max(1.0, abs(lam)):
            steps_ok = False
            details.append(f"step {step.j}: recorded lambda_max {step.lambda_max} != recomputed {lam}")
        phi = _potential(eig.eigenvalues, a_next)
        if abs(phi - step.potential) > 1e-8 * max(1.0, abs(phi)):
            steps_ok = False
            details.append(f"step {step.j}: recorded potential {step.potential} != recomputed {phi}")
        if phi > phi_prev + tols.potential_slack:
            steps_ok = False
            details.append(f"step {step.j}: potential rose {phi_prev} -> {phi}")
        phi_prev = phi
    check("steps", steps_ok, "all per-step claims replay" if steps_ok else "; ".join(details[:4]))

    spec_ok = bool(np.allclose(np.sort(eig.eigenvalues), np.sort(cert.eigenvalues), rtol=0.0, atol=1e-8))
    check("spectrum", spec_ok, "final eigenvalues match" if spec_ok else "final eigenvalues differ")
    bound_ok = abs(cert.bound - float(sched.values[-1])) <= 1e-12 * max(1.0, cert.bound)
    check("bound", bound_ok, f"bound = a_n = {cert.bound}")
    final_margin = float(sched.values[-1]) - eig.lambda_max
    check("final-norm", final_margin > 0.0, f"lambda_max = {eig.lambda_max} < a_n = {sched.values[-1]}")

    return CertificateReport(checks=tuple(checks), final_margin=final_margin, min_step_margin=min_margin)


def eigenvalue_histogram(cert: SelectionCertificate, bins: int = 10) -> tuple[np.ndarray, np.ndarray]:
    """Histogram of the final spectrum (diagnostic; most mass sits near n/m)."""
    return np.histogram(cert.eigenvalues, bins=bins, range=(0.0, cert.bound))


# ---------------------------------------------------------------------------
# Certificate JSON. Indices are 1-based, matching {1, ..., m} everywhere in
# the API; the optional top-level "norm_deviation" preserves the input-norm
# disclosure for frames that are slightly off contract.
# ---------------------------------------------------------------------------

def certificate_to_dict(cert: SelectionCertificate) -> dict:
    return {
        "schedule": {
            "N": cert.schedule.N,
            "m": cert.schedule.m,
            "n": cert.schedule.n,
            "values": [float(v) for v in cert.schedule.values],
        },
        "steps": [
            {
                "j": s.j,
                "index": s.index,
                "U": float(s.feasibility),
                "phi": float(s.potential),
                "lambda_max": float(s.lambda_max),
            }
            for s in cert.steps
        ],
        "final": {
            "indices": [int(i) for i in cert.indices],
            "eigenvalues": [float(x) for x in cert.eigenvalues],
            "bound": float(cert.bound),
        },
        "norm_deviation": float(cert.norm_deviation),
    }


def certificate_from_dict(data: dict) -> SelectionCertificate:
    try:
        sched = data["schedule"]
        values = np.asarray([float(v) for v in sched["values"]], dtype=np.float64)
        schedule = BarrierSchedule(N=int(sched["N"]), m=int(sched["m"]), n=int(sched["n"]), values=values)
        steps = tuple(
            SelectionStep(
                j=int(s["j"]),
                index=int(s["index"]),
                feasibility=float(s["U"]),
                potential=float(s["phi"]),
                lambda_max=float(s["lambda_max"]),
            )
            for s in data["steps"]
        )
        final = data["final"]
        cert = SelectionCertificate(
            schedule=schedule,
            steps=steps,
            indices=tuple(int(i) for i in final["indices"]),
            eigenvalues=np.asarray([float(x) for x in final["eigenvalues"]], dtype=np.float64),
            bound=float(final["bound"]),
            norm_deviation=float(data.get("norm_deviation", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateMismatchError(f"malformed certificate JSON: {exc}") from exc
    numbers = list(cert.schedule.values) + list(cert.eigenvalues) + [cert.bound, cert.norm_deviation]
    numbers += [x for s in cert.steps for x in (s.feasibility, s.potential, s.lambda_max)]
    if not all(math.isfinite(x) for x in numbers):
        raise CertificateMismatchError("certificate contains NaN or Inf")
    return cert


def save_certificate(cert: SelectionCertificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(certificate_to_dict(cert), fh, allow_nan=False, indent=1)
        fh.write("\n")


def load_certificate(path) -> SelectionCertificate:
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_dict(json.load(fh))
