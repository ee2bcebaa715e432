"""Eigenpaare und Exceptional-Point-Suche."""

from __future__ import annotations

import math

import numpy as np
import pytest

from app.circuit.models import NormalizedCircuit
from app.exceptions import NoSignChange
from app.solver import discriminant, eigenpairs, find_ep, pt_circuit


def _analytic_ep(mt: float) -> float:
    u = 1.0 - mt * mt
    return math.sqrt((2 - 2 * math.sqrt(u)) / u)


# ---------------------------------------------------------------------------
# Eigenpaare
# ---------------------------------------------------------------------------

def test_lossless_symmetric_spectrum(pipeline, lossless) -> None:
    result = pipeline.solve(lossless(0.6))
    spectrum = result.spectrum((2, 3))
    assert spectrum is not None
    assert spectrum.discriminant == pytest.approx(0.15625, abs=1e-12)
    assert spectrum.omega_plus == pytest.approx(1.581139, abs=1e-6)
    assert spectrum.omega_minus == pytest.approx(0.790569, abs=1e-6)
    assert spectrum.dev_plus == -spectrum.dev_minus
    for v in (spectrum.v_plus, spectrum.v_minus):
        assert abs(abs(v[0] / v[1]) - 1.0) < 1e-9
    assert not spectrum.defective


def test_eigenvectors_satisfy_eigen_equation() -> None:
    H = np.array([[1.0 + 0.1j, 0.3], [0.2 - 0.05j, 0.8]])
    spectrum = eigenpairs(H)
    for omega, v in ((spectrum.omega_plus, spectrum.v_plus), (spectrum.omega_minus, spectrum.v_minus)):
        np.testing.assert_allclose(H @ v, omega * v, atol=1e-12)


def test_random_spectra_match_trace_and_determinant() -> None:
    rng = np.random.default_rng(17)
    for _ in range(1000):
        H = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        spectrum = eigenpairs(H)
        size = max(1.0, float(np.max(np.abs(H))))
        trace = H[0, 0] + H[1, 1]
        det = H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0]
        assert abs(spectrum.omega_plus + spectrum.omega_minus - trace) <= 1e-12 * size
        assert abs(spectrum.omega_plus * spectrum.omega_minus - det) <= 1e-12 * size * size

        root = np.sqrt(trace * trace / 4 - det + 0j)
        expected = [trace / 2 + root, trace / 2 - root]
        gap = min(
            max(abs(spectrum.omega_plus - expected[0]), abs(spectrum.omega_minus - expected[1])),
            max(abs(spectrum.omega_plus - expected[1]), abs(spectrum.omega_minus - expected[0])),
        )
        assert gap <= 1e-9 * size


def test_principal_branch_for_omega_plus() -> None:
    # Diskriminante −1 ± 0j: Ω̃+ erhält +j, auch bei negativer Null
    H = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
    H[0, 1] = complex(1.0, -0.0)
    spectrum = eigenpairs(H)
    assert spectrum.omega_plus == pytest.approx(1j)


def test_scalar_matrix_uses_coordinate_vectors() -> None:
    spectrum = eigenpairs(2.0 * np.eye(2))
    assert spectrum.omega_plus == spectrum.omega_minus == 2.0
    assert spectrum.v_plus.tolist() == [1.0, 0.0]
    assert spectrum.v_minus.tolist() == [0.0, 1.0]
    assert not spectrum.defective


def test_jordan_block_is_defective() -> None:
    spectrum = eigenpairs(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert spectrum.discriminant == 0
    assert spectrum.defective


def test_discriminant_formula() -> None:
    H = np.array([[3.0, 2.0], [0.5, 1.0]])
    assert discriminant(H) == pytest.approx(2.0 * 0.5 + 1.0)


# ---------------------------------------------------------------------------
# Exceptional Points
# ---------------------------------------------------------------------------

def test_pt_circuit_pairs_gain_and_loss() -> None:
    base = NormalizedCircuit(l2t=1.0, c2t=2.0, g1t=0.0, g2t=0.0, mt=0.3)
    circuit = pt_circuit(base, 0.4)
    assert circuit.g1t == 0.4
    assert circuit.g2t == -0.8


def test_find_ep_at_analytic_value(pt, tolerances) -> None:
    result = find_ep(pt(0.6, 0.0), (0.5, 1.0), tolerances.ep_tol, tolerances)
    assert result.g_ep == pytest.approx(math.sqrt(0.625), abs=1e-6)
    assert result.bracket[1] - result.bracket[0] <= tolerances.ep_tol
    assert result.bracket[0] <= result.g_ep <= result.bracket[1]
    assert not result.heuristic


@pytest.mark.parametrize("mt", [0.2, 0.45])
def test_find_ep_small_coupling(pt, tolerances, mt: float) -> None:
    expected = _analytic_ep(mt)
    result = find_ep(pt(mt, 0.0), (0.5 * mt, 2 * mt + 0.1), tolerances.ep_tol, tolerances)
    assert result.g_ep == pytest.approx(expected, abs=1e-6)


def test_find_ep_without_sign_change(pt, tolerances) -> None:
    with pytest.raises(NoSignChange):
        find_ep(pt(0.6, 0.0), (0.1, 0.3), tolerances.ep_tol, tolerances)


def test_find_ep_detuned_is_heuristic(tolerances) -> None:
    base = NormalizedCircuit(l2t=1.2, c2t=1.0, g1t=0.0, g2t=0.0, mt=0.5)
    result = find_ep(base, (0.1, 1.5), tolerances.ep_tol, tolerances)
    assert result.heuristic
    assert 0.1 <= result.g_ep <= 1.5
