"""Symmetric eigendecomposition, eigenstate overlaps, and jumping-rate scans.

The jumping-rate scans reproduce the avoided crossings that locate the two
critical rates: the equal superposition swaps between the lowest two
eigenstates near gamma_c1, and the b class vector swaps between the ground
and third excited states near gamma_c2.  Eigenstates are labeled by ascending
eigenvalue at each grid point; no continuity tracking across the scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .graph import GraphSpec
from .subspace import reduced_hamiltonian, reduced_initial_state

PROBE_TAGS = ("s", "a", "b")


class NoCrossingError(ValueError):
    """The overlap difference does not change sign on the given bracket."""


class Spectrum(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def eigh(matrix: np.ndarray) -> Spectrum:
    """Eigendecomposition of an exactly-symmetric real matrix.

    Output is deterministic: each eigenvector is flipped so its
    largest-magnitude component (lowest index on ties) is positive.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(matrix, matrix.T):
        raise ValueError("matrix must be symmetric")
    values, vectors = np.linalg.eigh(matrix)
    lead = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[lead, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return Spectrum(values=values, vectors=vectors * signs)


def overlaps(spectrum: Spectrum, probe: np.ndarray) -> np.ndarray:
    """Squared overlaps |<eigenvector_k | probe>|^2; they sum to 1 for a unit probe."""
    probe = np.asarray(probe)
    if probe.shape != (spectrum.vectors.shape[0],):
        raise ValueError("probe has wrong dimension")
    return np.abs(spectrum.vectors.T @ probe) ** 2


def probe_state(spec: GraphSpec, tag: str) -> np.ndarray:
    """Reduced probe vector: "s" the equal superposition, "a" or "b" a class vector."""
    if tag == "s":
        return reduced_initial_state(spec)
    if tag in ("a", "b"):
        probe = np.zeros(7, dtype=complex)
        probe[("a", "b").index(tag)] = 1.0
        return probe
    raise ValueError(f"unknown probe tag {tag!r}; expected one of {PROBE_TAGS}")


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Overlap curves on a uniform jumping-rate grid.

    ``curves[tag]`` has shape (points, 7): row i holds |<eigenvector_k |
    probe>|^2 at gamma = gammas[i] for k = 0..6.
    """

    spec: GraphSpec
    gammas: np.ndarray
    curves: dict[str, np.ndarray]


def gamma_sweep(
    spec: GraphSpec, gamma_range: tuple[float, float], points: int
) -> SweepResult:
    """Diagonalize the reduced search generator on a uniform gamma grid and
    record the overlap of each eigenstate with the s, a, and b probes."""
    lo, hi = gamma_range
    if not 0 < lo < hi:
        raise ValueError("gamma range must satisfy 0 < lo < hi")
    if points < 2:
        raise ValueError("points must be >= 2")
    gammas = np.linspace(lo, hi, points)
    probes = {tag: probe_state(spec, tag) for tag in PROBE_TAGS}
    curves = {tag: np.empty((points, 7)) for tag in PROBE_TAGS}
    for i, gamma in enumerate(gammas):
        spectrum = eigh(reduced_hamiltonian(spec, gamma))
        for tag, probe in probes.items():
            curves[tag][i] = overlaps(spectrum, probe)
    return SweepResult(spec=spec, gammas=gammas, curves=curves)


def find_crossing(
    spec: GraphSpec,
    probe: str,
    eig_pair: tuple[int, int],
    bracket: tuple[float, float],
    rel_tol: float = 1e-10,
) -> float:
    """Locate the gamma where the probe's overlap moves between two eigenstates.

    Bisects the sign change of |<psi_j|probe>|^2 - |<psi_k|probe>|^2 on the
    bracket.  At the crossing of an avoided degeneracy the probe splits half
    and half; for M >= 100 both overlaps are required to be within 0.1 of 1/2,
    otherwise the sign change is rejected as spurious.
    """
    j, k = eig_pair
    lo, hi = bracket
    if not 0 < lo < hi:
        raise ValueError("bracket must satisfy 0 < lo < hi")
    probe_vec = probe_state(spec, probe)

    def diff(gamma: float) -> float:
        ov = overlaps(eigh(reduced_hamiltonian(spec, gamma)), probe_vec)
        return float(ov[j] - ov[k])

    f_lo, f_hi = diff(lo), diff(hi)
    if f_lo * f_hi > 0:
        raise NoCrossingError(
            f"no overlap crossing for probe {probe!r} between eigenstates "
            f"{j} and {k} in [{lo:g}, {hi:g}]"
        )
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        f_mid = diff(mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    gamma_star = 0.5 * (lo + hi)
    if spec.M >= 100:
        ov = overlaps(eigh(reduced_hamiltonian(spec, gamma_star)), probe_vec)
        if abs(ov[j] - 0.5) > 0.1 or abs(ov[k] - 0.5) > 0.1:
            raise NoCrossingError(
                f"sign change at gamma={gamma_star:g} is not an avoided-crossing "
                f"split: overlaps are {ov[j]:.4f} and {ov[k]:.4f}"
            )
    return gamma_star
