"""Frequenzbereichs-System, monischer Pencil und Quartik."""

from __future__ import annotations

import numpy as np
import pytest

from app.circuit.models import NormalizedCircuit
from app.exceptions import SingularLeadingCoefficient
from app.solver import (
    VoltageState,
    char_quartic,
    coefficient_matrices,
    mode_shape,
    monic_pencil,
    system_matrix,
)
from app.verify import random_circuits

SAMPLE_OMEGAS = [0.3 + 0.1j, -1.2 + 0.7j, 2.0, 0.5j]


def test_coefficient_matrices(generic_circuit: NormalizedCircuit) -> None:
    B, D, U = coefficient_matrices(generic_circuit)
    assert B.tolist() == [[1.0, 0.4 * 0.8], [0.4, 1.3 * 0.8]]
    assert D[1, 0] == pytest.approx(0.4 * 0.2)
    assert U.tolist() == [[1.0, 0.0], [0.0, 1.0]]


@pytest.mark.parametrize("omega", SAMPLE_OMEGAS)
def test_system_matrix_matches_pencil(generic_circuit: NormalizedCircuit, omega: complex) -> None:
    pencil = monic_pencil(generic_circuit)
    np.testing.assert_allclose(pencil.system_matrix(omega), system_matrix(generic_circuit, omega), atol=1e-14)


@pytest.mark.parametrize("omega", SAMPLE_OMEGAS)
def test_monic_form(generic_circuit: NormalizedCircuit, omega: complex) -> None:
    pencil = monic_pencil(generic_circuit)
    expected = -np.linalg.solve(pencil.B, system_matrix(generic_circuit, omega))
    np.testing.assert_allclose(pencil.evaluate(omega), expected, atol=1e-12)


def test_lossless_quartic(lossless) -> None:
    quartic = char_quartic(monic_pencil(lossless(0.6)))
    np.testing.assert_allclose(quartic.as_array(), [1.0, 0.0, -3.125, 0.0, 1.5625], atol=1e-12)


@pytest.mark.parametrize("omega", SAMPLE_OMEGAS)
def test_quartic_is_determinant(generic_circuit: NormalizedCircuit, omega: complex) -> None:
    pencil = monic_pencil(generic_circuit)
    quartic = char_quartic(pencil)
    assert quartic.evaluate(omega) == pytest.approx(complex(np.linalg.det(pencil.evaluate(omega))), abs=1e-12)


def test_pencil_is_read_only(lossless) -> None:
    pencil = monic_pencil(lossless(0.6))
    with pytest.raises(ValueError):
        pencil.P[0, 0] = 1.0


def test_singular_leading_coefficient() -> None:
    # Nicht validiert: M̃² = L̃2
    with pytest.raises(SingularLeadingCoefficient):
        monic_pencil(NormalizedCircuit(l2t=1.0, c2t=1.0, g1t=0.0, g2t=0.0, mt=1.0))


def test_voltage_state_requires_finite_values() -> None:
    assert VoltageState(1.0, 1j).as_array().tolist() == [1.0, 1j]
    with pytest.raises(ValueError):
        VoltageState(float("nan"), 0.0)


# ---------------------------------------------------------------------------
# Eigenschaften über Zufallsschaltungen
# ---------------------------------------------------------------------------

def test_monic_identity_on_random_circuits() -> None:
    rng = np.random.default_rng(5)
    for norm in random_circuits(100, seed=5):
        pencil = monic_pencil(norm)
        radius = 2.0 * np.sqrt(rng.uniform(0.0, 1.0, 8))
        angle = rng.uniform(0.0, 2.0 * np.pi, 8)
        for w in radius * np.exp(1j * angle):
            expected = -np.linalg.solve(pencil.B, system_matrix(norm, w))
            gap = float(np.max(np.abs(pencil.evaluate(w) - expected)))
            assert gap <= 1e-12 * (1.0 + abs(w) ** 2) * pencil.scale, norm


def test_quartic_has_real_coefficients_in_s() -> None:
    # ω̃ = −j·s: a_k·(−j)^k muss reell sein
    for norm in random_circuits(20, seed=9):
        coeffs = char_quartic(monic_pencil(norm)).as_array()
        powers = np.arange(4, -1, -1)
        mapped = coeffs * (-1j) ** powers
        assert np.max(np.abs(mapped.imag)) <= 1e-14 * np.max(np.abs(mapped))


def test_decoupled_quartic_factors_into_tanks() -> None:
    norm = NormalizedCircuit(l2t=1.7, c2t=0.6, g1t=0.3, g2t=-0.2, mt=0.0)
    tank1 = [1.0, -1j * norm.g1t, -1.0]
    tank2 = [1.0, -1j * norm.g2t / norm.c2t, -1.0 / (norm.l2t * norm.c2t)]
    quartic = char_quartic(monic_pencil(norm))
    np.testing.assert_allclose(quartic.as_array(), np.polymul(tank1, tank2), rtol=1e-14, atol=1e-14)


# ---------------------------------------------------------------------------
# Modenform
# ---------------------------------------------------------------------------

def test_mode_shapes_of_lossless_pair(lossless) -> None:
    pencil = monic_pencil(lossless(0.6))
    symmetric = mode_shape(pencil, np.sqrt(0.625)).as_array()
    antisymmetric = mode_shape(pencil, np.sqrt(2.5)).as_array()
    assert symmetric[0] / symmetric[1] == pytest.approx(1.0, abs=1e-12)
    assert antisymmetric[0] / antisymmetric[1] == pytest.approx(-1.0, abs=1e-12)
    assert np.max(np.abs(symmetric)) == pytest.approx(1.0)


def test_mode_shape_is_null_vector(generic_circuit: NormalizedCircuit, pipeline) -> None:
    result = pipeline.solve(generic_circuit)
    for z in result.roots.roots:
        v = mode_shape(result.pencil, z)
        assert isinstance(v, VoltageState)
        assert np.max(np.abs(result.pencil.system_matrix(z) @ v.as_array())) < 1e-10


def test_mode_shape_of_decoupled_double_root(lossless) -> None:
    assert mode_shape(monic_pencil(lossless(0.0)), 1.0).as_array().tolist() == [1.0, 0.0]
