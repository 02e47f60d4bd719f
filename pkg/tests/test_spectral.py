"""Eigendecomposition contract, overlaps, sweeps, and crossing location."""

import numpy as np
import pytest

from simplexwalk import (
    GraphSpec,
    NoCrossingError,
    eigh,
    find_crossing,
    gamma_sweep,
    overlaps,
    probe_state,
    reduced_hamiltonian,
)


def test_eigh_two_by_two():
    spectrum = eigh(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(spectrum.values, [-1.0, 1.0], atol=1e-14)


def test_eigh_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        eigh(np.array([[0.0, 1.0], [1.0 + 1e-14, 0.0]]))


def test_eigh_reconstruction_and_determinism():
    ham = reduced_hamiltonian(GraphSpec(50, 2.0), 0.03)
    s1 = eigh(ham)
    s2 = eigh(ham.copy())
    rebuilt = s1.vectors @ np.diag(s1.values) @ s1.vectors.T
    scale = max(1.0, np.max(np.abs(ham)))
    assert np.max(np.abs(ham - rebuilt)) <= 1e-9 * scale
    assert np.array_equal(s1.values, s2.values)
    assert np.array_equal(s1.vectors, s2.vectors)


def test_eigh_sign_convention():
    spectrum = eigh(reduced_hamiltonian(GraphSpec(12, 1.5), 0.1))
    for k in range(7):
        column = spectrum.vectors[:, k]
        assert column[np.argmax(np.abs(column))] > 0


def test_stage1_gap_value():
    lam = eigh(reduced_hamiltonian(GraphSpec(1000, 1.0), 0.002)).values
    assert lam[1] - lam[0] == pytest.approx(4 / 1000**1.5, rel=2e-3)


def test_stage2_gap_value():
    lam = eigh(reduced_hamiltonian(GraphSpec(1000, 1.0), 0.001)).values
    assert lam[3] - lam[0] == pytest.approx(2 / np.sqrt(1000), rel=1e-12)


@pytest.mark.parametrize("M", [250, 1000])
@pytest.mark.parametrize("w", [1.0, 2.0, 4.0])
def test_gap_stays_open_at_stage1_crossing(M, w):
    # avoided, not actual, crossing: the split never closes
    gamma_c1 = (1 + 1 / w) / M
    lam = eigh(reduced_hamiltonian(GraphSpec(M, w), gamma_c1)).values
    assert lam[1] - lam[0] > 0


@pytest.mark.parametrize("w", [1.0, 2.0, 4.0])
def test_stage1_gap_scaling_exponent(w):
    sizes = np.array([250, 500, 1000, 2000, 4000])
    gaps = []
    for M in sizes:
        lam = eigh(reduced_hamiltonian(GraphSpec(int(M), w), (1 + 1 / w) / M)).values
        gaps.append(lam[1] - lam[0])
    slope = np.polyfit(np.log(sizes), np.log(gaps), 1)[0]
    assert slope == pytest.approx(-1.5, abs=0.03)


def test_overlap_with_own_eigenvector():
    spectrum = eigh(reduced_hamiltonian(GraphSpec(8, 2.0), 0.2))
    ov = overlaps(spectrum, spectrum.vectors[:, 0])
    assert ov[0] == pytest.approx(1.0, abs=1e-12)
    assert np.max(ov[1:]) <= 1e-12


@pytest.mark.parametrize("tag", ["s", "a", "b"])
def test_overlap_completeness(tag):
    spec = GraphSpec(1000, 2.0)
    spectrum = eigh(reduced_hamiltonian(spec, 0.0015))
    assert overlaps(spectrum, probe_state(spec, tag)).sum() == pytest.approx(
        1.0, abs=1e-9
    )


def test_initial_state_splits_half_and_half_at_stage1_crossing():
    spec = GraphSpec(1000, 1.0)
    ov = overlaps(eigh(reduced_hamiltonian(spec, 0.002)), probe_state(spec, "s"))
    assert abs(ov[0] - 0.5) < 0.1
    assert abs(ov[1] - 0.5) < 0.1
    assert ov[0] + ov[1] == pytest.approx(1.0, abs=1e-6)


def test_cluster_state_splits_at_stage2_crossing():
    spec = GraphSpec(1000, 1.0)
    ov = overlaps(eigh(reduced_hamiltonian(spec, 0.001)), probe_state(spec, "b"))
    assert abs(ov[0] - 0.5) < 0.1
    assert abs(ov[3] - 0.5) < 0.1


def test_probe_state_rejects_unknown_tag():
    with pytest.raises(ValueError):
        probe_state(GraphSpec(5, 1.0), "x")


def test_sweep_grid_and_completeness():
    spec = GraphSpec(1000, 1.0)
    result = gamma_sweep(spec, (0.0005, 0.003), 101)
    assert result.gammas.shape == (101,)
    assert result.gammas[0] == 0.0005 and result.gammas[-1] == 0.003
    for tag in ("s", "a", "b"):
        assert np.allclose(result.curves[tag].sum(axis=1), 1.0, atol=1e-9)


def _grid_crossing(result, tag, pair):
    diff = result.curves[tag][:, pair[0]] - result.curves[tag][:, pair[1]]
    (idx,) = np.nonzero(np.sign(diff[:-1]) != np.sign(diff[1:]))
    assert len(idx) >= 1
    return 0.5 * (result.gammas[idx[0]] + result.gammas[idx[0] + 1])


def test_sweep_reproduces_both_crossings_w1():
    result = gamma_sweep(GraphSpec(1000, 1.0), (0.0005, 0.003), 500)
    assert _grid_crossing(result, "s", (0, 1)) == pytest.approx(0.002, rel=0.05)
    assert _grid_crossing(result, "b", (0, 3)) == pytest.approx(0.001, rel=0.05)


def test_sweep_stage1_crossing_moves_with_weight():
    result = gamma_sweep(GraphSpec(1000, 3.0), (0.0005, 0.003), 500)
    assert _grid_crossing(result, "s", (0, 1)) == pytest.approx(4 / 3000, rel=0.05)
    assert _grid_crossing(result, "b", (0, 3)) == pytest.approx(0.001, rel=0.05)


def test_sweep_rejects_bad_range():
    with pytest.raises(ValueError):
        gamma_sweep(GraphSpec(5, 1.0), (0.3, 0.1), 10)
    with pytest.raises(ValueError):
        gamma_sweep(GraphSpec(5, 1.0), (0.1, 0.3), 1)


def test_find_crossing_stage1():
    gamma = find_crossing(GraphSpec(1000, 1.0), "s", (0, 1), (0.0015, 0.0025))
    assert gamma == pytest.approx(0.002, rel=0.05)


def test_find_crossing_stage1_w3():
    gamma = find_crossing(GraphSpec(1000, 3.0), "s", (0, 1), (0.001, 0.002))
    assert gamma == pytest.approx(4 / 3000, rel=0.05)


@pytest.mark.parametrize("w", [1.0, 2.0, 3.0, 5.0])
def test_find_crossing_stage2_is_weight_independent(w):
    gamma = find_crossing(GraphSpec(1000, w), "b", (0, 3), (0.0008, 0.0012))
    assert gamma == pytest.approx(0.001, rel=0.05)


def test_find_crossing_requires_sign_change():
    with pytest.raises(NoCrossingError):
        find_crossing(GraphSpec(1000, 1.0), "s", (0, 1), (0.0024, 0.003))
