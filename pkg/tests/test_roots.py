"""Wurzel-Orakel: Begleitmatrix, Newton-Politur, Doppelwurzeln."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from app.exceptions import DegenerateLeadingCoefficient
from app.solver import QuarticCoefficients, char_quartic, monic_pencil, quartic_roots
from app.solver.roots import companion_roots
from app.verify import matched_gap


def _quartic(*coeffs: complex) -> QuarticCoefficients:
    return QuarticCoefficients(coeffs=tuple(complex(c) for c in coeffs))  # type: ignore[arg-type]


def test_lossless_roots_sorted(lossless) -> None:
    roots = quartic_roots(char_quartic(monic_pencil(lossless(0.6))))
    expected = [-math.sqrt(2.5), -math.sqrt(0.625), math.sqrt(0.625), math.sqrt(2.5)]
    np.testing.assert_allclose(roots.roots, expected, atol=1e-12)
    assert roots[3] == pytest.approx(1.581139, abs=1e-6)
    assert roots[2] == pytest.approx(0.790569, abs=1e-6)
    assert not roots.has_cluster


def test_pt_roots_below_ep_are_real(pt) -> None:
    roots = quartic_roots(char_quartic(monic_pencil(pt(0.6, 0.5))))
    assert max(abs(z.imag) for z in roots.roots) < 1e-9
    assert roots[2].real == pytest.approx(0.853016, abs=1e-6)
    assert roots[3].real == pytest.approx(1.465389, abs=1e-6)


def test_residuals_against_original_coefficients() -> None:
    # Skalierte Koeffizienten: Residuen beziehen sich auf die Eingabe
    roots = quartic_roots(_quartic(2.0, 0.0, -10.0, 0.0, 8.0))
    np.testing.assert_allclose(roots.roots, [-2.0, -1.0, 1.0, 2.0], atol=1e-13)
    assert max(roots.residuals) < 1e-11


def test_double_roots_are_exactly_repeated() -> None:
    roots = quartic_roots(_quartic(1.0, 0.0, -2.0, 0.0, 1.0))
    assert roots[0] == roots[1]
    assert roots[2] == roots[3]
    assert abs(roots[3] - 1.0) < 1e-12
    assert set(roots.clusters) == {(0, 1), (2, 3)}


def test_decoupled_identical_tanks(lossless) -> None:
    roots = quartic_roots(char_quartic(monic_pencil(lossless(0.0))))
    assert roots[0] == roots[1]
    assert roots[2] == roots[3]
    np.testing.assert_allclose(roots.roots, [-1.0, -1.0, 1.0, 1.0], atol=1e-12)
    assert roots.has_cluster


def test_complex_roots() -> None:
    # (z − (1+2j))(z − (1−2j))(z + 3)(z − 0.5j)
    planted = [1 + 2j, 1 - 2j, -3.0, 0.5j]
    roots = quartic_roots(_quartic(*np.poly(planted)))
    for z in planted:
        assert min(abs(z - r) for r in roots.roots) < 1e-12


def test_degenerate_leading_coefficient() -> None:
    with pytest.raises(DegenerateLeadingCoefficient):
        quartic_roots(_quartic(0.0, 1.0, 0.0, 0.0, 1.0))


def test_companion_roots_split_zero_roots() -> None:
    roots = companion_roots([1.0, -6.25, 1.44, 0.0])
    assert 0.0 in roots
    nonzero = sorted(r.real for r in roots if r != 0)
    assert nonzero == pytest.approx([0.239584, 6.010416], abs=1e-6)


def test_companion_roots_trim_leading_zeros() -> None:
    roots = companion_roots([0.0, 0.0, 1.0, -3.0, 2.0])
    assert sorted(r.real for r in roots) == pytest.approx([1.0, 2.0])


def test_recovers_planted_random_roots() -> None:
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(200):
        planted = rng.uniform(-2.0, 2.0, 4) + 1j * rng.uniform(-2.0, 2.0, 4)
        if min(abs(a - b) for a, b in itertools.combinations(planted, 2)) < 0.2:
            continue
        roots = quartic_roots(_quartic(*np.poly(planted)))
        assert matched_gap(list(roots.roots), list(planted)) <= 1e-9
        checked += 1
    assert checked > 100


@pytest.mark.parametrize("factor", [2.5 - 1.3j, -1e-3, 1e4j])
def test_scaling_covariance(pt, factor: complex) -> None:
    base = char_quartic(monic_pencil(pt(0.6, 1.0)))
    scaled = _quartic(*(factor * c for c in base.coeffs))
    assert matched_gap(list(quartic_roots(scaled).roots), list(quartic_roots(base).roots)) <= 1e-12
