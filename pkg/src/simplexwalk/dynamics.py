"""Exact time evolution under piecewise-constant search generators.

Each stage's generator is a constant real symmetric matrix, so evolution goes
through the spectral decomposition (exact to machine precision, no step-size
tuning).  The canonical workload is the two-stage schedule: hold gamma at its
stage-1 critical value long enough to pile probability onto the marked
cluster, then drop to the stage-2 value for the short hop onto the marked
vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import theory
from .graph import GraphSpec
from .subspace import reduced_hamiltonian, reduced_initial_state

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Stage(NamedTuple):
    gamma: float
    duration: float


Schedule = Sequence[Stage] | Sequence[tuple[float, float]]


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Sampled probabilities at the marked vertex (prob_a) and its cluster
    mates (prob_b), plus the state norm, along one schedule."""

    times: np.ndarray
    prob_a: np.ndarray
    prob_b: np.ndarray
    norm: np.ndarray
    stage_boundaries: tuple[float, ...]


def evolve(hamiltonian: np.ndarray, state: np.ndarray, t: float) -> np.ndarray:
    """Propagate a state for time t under a constant symmetric generator."""
    hamiltonian = np.asarray(hamiltonian)
    if not np.array_equal(hamiltonian, hamiltonian.T):
        raise ValueError("hamiltonian must be symmetric")
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (hamiltonian.shape[0],):
        raise ValueError("state dimension does not match hamiltonian")
    lam, vecs = np.linalg.eigh(hamiltonian)
    return vecs @ (np.exp(-1j * lam * t) * (vecs.T @ psi))


def two_stage_schedule(spec: GraphSpec) -> list[Stage]:
    """The closed-form schedule: (gamma_c1, t1) then (gamma_c2, t2)."""
    pred = theory.predict(spec)
    return [Stage(pred.gamma_c1, pred.t1), Stage(pred.gamma_c2, pred.t2)]


def _validate_schedule(schedule: Schedule) -> list[Stage]:
    stages = [Stage(float(g), float(d)) for g, d in schedule]
    if not stages:
        raise ValueError("schedule must contain at least one stage")
    for stage in stages:
        if not stage.gamma > 0:
            raise ValueError("stage gamma must be > 0")
        if stage.duration < 0:
            raise ValueError("stage duration must be >= 0")
    return stages


class _Propagator:
    """Eigendecompositions and stage-start states for one schedule, so the
    state at an arbitrary global time costs one 7-vector contraction."""

    def __init__(self, spec: GraphSpec, schedule: Schedule):
        self.stages = _validate_schedule(schedule)
        self.boundaries = np.concatenate(
            [[0.0], np.cumsum([s.duration for s in self.stages])]
        )
        self._lams = []
        self._vecs = []
        self._coeffs = []
        psi = reduced_initial_state(spec)
        for stage in self.stages:
            lam, vecs = np.linalg.eigh(reduced_hamiltonian(spec, stage.gamma))
            coeff = vecs.T @ psi
            self._lams.append(lam)
            self._vecs.append(vecs)
            self._coeffs.append(coeff)
            psi = vecs @ (np.exp(-1j * lam * stage.duration) * coeff)

    @property
    def total_duration(self) -> float:
        return float(self.boundaries[-1])

    def _locate(self, t: float) -> tuple[int, float]:
        idx = int(np.searchsorted(self.boundaries, t, side="right")) - 1
        idx = min(max(idx, 0), len(self.stages) - 1)
        return idx, t - self.boundaries[idx]

    def state(self, t: float) -> np.ndarray:
        idx, tau = self._locate(t)
        lam, vecs, coeff = self._lams[idx], self._vecs[idx], self._coeffs[idx]
        return vecs @ (np.exp(-1j * lam * tau) * coeff)

    def prob(self, component: int, t: float) -> float:
        idx, tau = self._locate(t)
        lam, vecs, coeff = self._lams[idx], self._vecs[idx], self._coeffs[idx]
        return float(np.abs(vecs[component] @ (np.exp(-1j * lam * tau) * coeff)) ** 2)

    def prob_grid(self, component: int, times: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`prob` over sorted global times."""
        out = np.empty(times.shape)
        idx = np.clip(
            np.searchsorted(self.boundaries, times, side="right") - 1,
            0,
            len(self.stages) - 1,
        )
        for k in range(len(self.stages)):
            sel = idx == k
            if not np.any(sel):
                continue
            tau = times[sel] - self.boundaries[k]
            phases = np.exp(-1j * np.outer(self._lams[k], tau))
            amps = self._vecs[k][component] @ (phases * self._coeffs[k][:, None])
            out[sel] = np.abs(amps) ** 2
        return out


def run_schedule(
    spec: GraphSpec, schedule: Schedule, samples_per_stage: int = 2000
) -> TimeSeries:
    """Evolve the equal superposition through the schedule, sampling each
    stage uniformly; the state is continuous across stage boundaries."""
    if samples_per_stage < 1:
        raise ValueError("samples_per_stage must be >= 1")
    prop = _Propagator(spec, schedule)
    times = [0.0]
    for k, stage in enumerate(prop.stages):
        if stage.duration == 0.0:
            continue
        start = prop.boundaries[k]
        times.extend(start + stage.duration * np.arange(1, samples_per_stage + 1)
                     / samples_per_stage)
    times = np.asarray(times)
    states = np.stack([prop.state(t) for t in times])
    return TimeSeries(
        times=times,
        prob_a=np.abs(states[:, 0]) ** 2,
        prob_b=np.abs(states[:, 1]) ** 2,
        norm=np.linalg.norm(states, axis=1),
        stage_boundaries=tuple(float(b) for b in prop.boundaries[1:]),
    )


def _golden_max(f, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
    mid = 0.5 * (lo + hi)
    return mid, f(mid)


def peak_success(
    spec: GraphSpec, schedule: Schedule, grid_points: int = 10_000
) -> tuple[float, float]:
    """Time and value of the maximum marked-vertex probability over a schedule.

    A uniform grid (plus the stage boundaries) brackets the maximum, which is
    then refined by golden-section search to 1e-6 of the total duration.  The
    grid must stay dense because the success spike is narrow: roughly t2 wide
    inside a schedule of length ~t1.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    prop = _Propagator(spec, schedule)
    total = prop.total_duration
    if total == 0.0:
        return 0.0, prop.prob(0, 0.0)
    times = np.unique(
        np.concatenate([np.linspace(0.0, total, grid_points), prop.boundaries])
    )
    probs = prop.prob_grid(0, times)
    i = int(np.argmax(probs))
    lo = times[max(i - 1, 0)]
    hi = times[min(i + 1, len(times) - 1)]
    t_peak, p_peak = _golden_max(lambda t: prop.prob(0, t), lo, hi, 1e-6 * total)
    if probs[i] > p_peak:
        t_peak, p_peak = float(times[i]), float(probs[i])
    return t_peak, p_peak


def width_scan(
    spec: GraphSpec, stage: int, offsets: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """Peak success probability of the two-stage schedule as one stage's gamma
    is detuned by each offset; the other stage stays at its critical value."""
    if stage not in (1, 2):
        raise ValueError("stage must be 1 or 2")
    base = two_stage_schedule(spec)
    offsets = np.asarray(offsets, dtype=float)
    peaks = np.empty(offsets.shape)
    for i, eps in enumerate(offsets):
        stages = list(base)
        gamma, duration = stages[stage - 1]
        if gamma + eps <= 0:
            raise ValueError(f"offset {eps} drives gamma nonpositive")
        stages[stage - 1] = Stage(gamma + eps, duration)
        _, peaks[i] = peak_success(spec, stages)
    return offsets, peaks


def stage_half_width(spec: GraphSpec, stage: int) -> float:
    """Smallest positive gamma detuning that halves the peak success
    probability, found by geometric bracketing plus bisection."""
    scale = spec.M ** -1.5
    _, baseline = peak_success(spec, two_stage_schedule(spec))

    def peak(eps: float) -> float:
        _, peaks = width_scan(spec, stage, [eps])
        return float(peaks[0])

    eps = 1e-3 * scale
    while peak(eps) <= baseline / 2:
        eps /= 4.0
        if eps < 1e-12 * scale:
            raise RuntimeError("peak success is degraded at arbitrarily small detuning")
    lo, hi = eps, 1.5 * eps
    while peak(hi) > baseline / 2:
        lo = hi
        hi *= 1.5
        if hi > 10.0 / math.sqrt(spec.M):
            raise RuntimeError("no halving detuning found below 10/sqrt(M)")
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if peak(mid) > baseline / 2:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def optimal_stage1_duration(
    spec: GraphSpec, window: float = 1.6, grid_points: int = 20_001
) -> tuple[float, float]:
    """Stage-1 duration that maximizes the marked-cluster probability.

    Scans prob_b under the stage-1 critical generator over [0, window * t1]
    and refines the best grid point by golden-section search.  The measured
    optimum differs from the closed-form t1 by the subleading corrections the
    closed form drops.
    """
    pred = theory.predict(spec)
    lam, vecs = np.linalg.eigh(reduced_hamiltonian(spec, pred.gamma_c1))
    coeff = vecs.T @ reduced_initial_state(spec)
    times = np.linspace(0.0, window * pred.t1, grid_points)
    amps = vecs[1] @ (np.exp(-1j * np.outer(lam, times)) * coeff[:, None])
    probs = np.abs(amps) ** 2
    i = int(np.argmax(probs))

    def prob_b(t: float) -> float:
        return float(np.abs(vecs[1] @ (np.exp(-1j * lam * t) * coeff)) ** 2)

    lo = times[max(i - 1, 0)]
    hi = times[min(i + 1, len(times) - 1)]
    return _golden_max(prob_b, lo, hi, 1e-9 * pred.t1)
