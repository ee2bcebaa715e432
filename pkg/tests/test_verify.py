"""Invarianten-Suiten auf reduzierten Populationen."""

from __future__ import annotations

import math

import pytest

from app.solver import SolverPipeline
from app.verify import (
    analytic_pt_eps,
    matched_gap,
    random_circuits,
    suite_branch_count,
    suite_closed_forms,
    suite_conjugate,
    suite_identity,
    suite_lossless,
    suite_oracle,
    suite_pt_ep,
    suite_trends,
)


def test_random_circuits_are_reproducible() -> None:
    first = random_circuits(10, seed=42)
    assert first == random_circuits(10, seed=42)
    assert first != random_circuits(10, seed=43)
    for c in first:
        assert 0.1 <= c.l2t <= 10 and 0.1 <= c.c2t <= 10
        assert c.mt * c.mt <= 0.95 * c.l2t
        assert -1 <= c.g1t <= 1 and -1 <= c.g2t <= 1


def test_analytic_pt_eps() -> None:
    first, second = analytic_pt_eps(0.6)
    assert first == pytest.approx(math.sqrt(0.625))
    assert second == pytest.approx(2.371708, abs=1e-6)


def test_matched_gap_is_order_free() -> None:
    assert matched_gap([2.0, 1.0], [1.0, 2.0]) == 0.0
    assert matched_gap([1.0, 3.0], [1.0, 2.0]) == pytest.approx(0.5)


def test_random_population_suites(pipeline: SolverPipeline) -> None:
    results = [pipeline.solve(c) for c in random_circuits(25, seed=7)]
    for suite in (suite_oracle(results), suite_identity(results), suite_conjugate(results)):
        assert suite.passed, suite.failures
        assert suite.checked > 0


def test_fixed_suites(pipeline: SolverPipeline, tolerances) -> None:
    for suite in (
        suite_lossless(pipeline),
        suite_pt_ep(pipeline, tolerances),
        suite_closed_forms(pipeline, tolerances),
    ):
        assert suite.passed, suite.failures


def test_trend_suite(tolerances) -> None:
    suite = suite_trends(tolerances)
    assert suite.passed, suite.failures
    assert suite.checked > 40


def test_full_population_oracle_and_identity(pipeline: SolverPipeline) -> None:
    results = [pipeline.solve(c) for c in random_circuits(1000, seed=42)]
    for suite in (suite_oracle(results), suite_identity(results), suite_branch_count(results, pipeline)):
        assert suite.passed, suite.failures[:5]
    assert all(r.branches.covers_roots() for r in results)
