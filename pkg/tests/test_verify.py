# tests/test_verify.py
"""Harnesses de verificación sobre instancias concretas"""
from fractions import Fraction

import numpy as np
import pytest

from lelong_lab.core import (
    Max,
    Polynomial,
    Radial,
    SliceMap,
    evaluate,
    levelset_generators,
    make_phi_k,
    pullback_difference,
    verify_fiber_identity,
    verify_levelset_sandwich,
    verify_levelset_structure,
    verify_pullback_lemma,
    verify_radial_identity,
    verify_restriction_monotonicity,
    verify_theorem1,
    verify_unitary_invariance,
)
from lelong_lab.core.exceptions import ExpressionInputError

from conftest import SEED, monomial

DIAGONAL = SliceMap((0.0, 0.0), ((1.0,), (1.0,)))
AXIS_Z1 = SliceMap.coordinate(2, [0])
AXIS_Z2 = SliceMap.coordinate(2, [1])


@pytest.mark.parametrize("nu", [1, 2, 3])
def test_theorem1_at_origin_passes(nu, fast_schedule, opts):
    reports = verify_theorem1(monomial(1, coeff=nu), 1, [[0]], fast_schedule, opts)
    assert [r.statement for r in reports] == ["thm1-1", "thm1-2", "thm1-3"]
    assert all(r.verdict == "pass" for r in reports), [r.model_dump() for r in reports]
    c_hat = reports[2].measured["c_numeric"]
    assert c_hat["interval"][0] - 0.05 <= 2 / nu <= c_hat["interval"][1] + 0.05


def test_theorem1_at_smooth_point_is_inconclusive(fast_schedule, opts):
    reports = verify_theorem1(monomial(1), 1, [[0.5]], fast_schedule, opts)
    by_statement = {r.statement: r for r in reports}
    assert by_statement["thm1-1"].verdict == "pass"
    assert by_statement["thm1-2"].verdict == "pass"
    assert by_statement["thm1-3"].verdict == "inconclusive"
    assert "ν(φ,z) = 0" in by_statement["thm1-3"].note


def test_phi_1_identity_on_random_points(opts):
    rng = np.random.default_rng(SEED)
    points = list(rng.standard_normal((100, 1)) + 1j * rng.standard_normal((100, 1)))
    expr = monomial(1, coeff=2)
    phi_1 = make_phi_k(expr, 1)
    for z in points:
        assert evaluate(phi_1, [z[0], 0], opts) == pytest.approx(evaluate(expr, z, opts), rel=1e-9)


def test_block_larger_than_one_needs_sampled_mode(fast_schedule):
    with pytest.raises(ExpressionInputError):
        verify_theorem1(monomial(1, 1), 1, [[0, 0]], fast_schedule)


def test_reports_are_deterministic(fast_schedule, opts):
    a = verify_theorem1(monomial(1, coeff=2), 1, [[0], [0.5]], fast_schedule, opts)
    b = verify_theorem1(monomial(1, coeff=2), 1, [[0.5], [0]], fast_schedule, opts)
    dump = lambda reports: [r.model_dump(exclude={"runtime_s"}) for r in reports]
    assert dump(a) == dump(b)


def test_restriction_to_diagonal_of_product(fast_schedule):
    reports = verify_restriction_monotonicity(monomial(1, 1), [DIAGONAL], [0, 0], fast_schedule)
    by_statement = {r.statement: r for r in reports}
    assert by_statement["prop1"].measured["c_restricted"]["value"] == "1/2"
    assert by_statement["prop1"].measured["c_ambient"]["value"] == "1/1"
    assert by_statement["lemma2"].measured["nu_restricted"]["value"] == "2/1"
    assert all(r.verdict == "pass" for r in reports)


def test_restriction_to_axis_of_max(fast_schedule):
    expr = Max((monomial(1, 0), monomial(0, 1)))
    reports = verify_restriction_monotonicity(expr, [AXIS_Z1], [0, 0], fast_schedule)
    by_statement = {r.statement: r for r in reports}
    assert by_statement["prop1"].measured["c_restricted"]["value"] == "1/1"
    assert by_statement["prop1"].measured["c_ambient"]["value"] == "2/1"
    assert all(r.verdict == "pass" for r in reports)


def test_degenerate_slice_is_noted(fast_schedule):
    reports = verify_restriction_monotonicity(monomial(1, 0), [AXIS_Z2], [0, 0], fast_schedule)
    assert len(reports) == 2
    assert all(r.verdict == "inconclusive" and "degenerate-slice" in r.note for r in reports)


def test_random_monomials_have_no_restriction_violations(fast_schedule):
    rng = np.random.default_rng(SEED)
    failures = []
    for i in range(100):
        n = int(rng.integers(2, 4))
        exponents = rng.integers(0, 4, size=n)
        exponents[rng.integers(n)] += 1
        expr = monomial(*(int(e) for e in exponents), coeff=Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3))))
        keep = sorted(rng.choice(n, size=int(rng.integers(1, n)), replace=False).tolist())
        diagonal = SliceMap((0.0,) * n, tuple((1.0,) for _ in range(n)))
        slices = [SliceMap.coordinate(n, keep), diagonal]
        reports = verify_restriction_monotonicity(expr, slices, np.zeros(n), fast_schedule)
        failures += [(i, r.statement, r.instance) for r in reports if r.verdict == "fail"]
    assert failures == []


def test_radial_linear_profile(fast_schedule):
    report = verify_radial_identity(Radial(2, 1), fast_schedule)
    assert report.verdict == "pass"
    assert report.measured["c_exact"]["value"] == "2/1"


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("nu", [1, 2, 3])
def test_radial_identity_over_dimensions_and_slopes(n, nu, fast_schedule):
    c = Fraction(n, nu)
    report = verify_radial_identity(Radial(n, nu), fast_schedule)
    assert report.measured["c_exact"]["value"] == f"{c.numerator}/{c.denominator}"
    assert report.verdict == "pass", report.measured
    assert report.measured["numeric_product"] == pytest.approx(n, rel=0.05)


def test_radial_kinked_profile_uses_limiting_slope(fast_schedule):
    expr = Radial(1, 3, ((Fraction(-1, 2), Fraction(-3, 2)), (Fraction(0), Fraction(1, 2))))
    report = verify_radial_identity(expr, fast_schedule)
    assert report.measured["c_exact"]["value"] == "1/3"
    assert report.verdict == "pass"


def test_radial_flat_profile_is_vacuous(fast_schedule):
    report = verify_radial_identity(Radial(2, 0), fast_schedule)
    assert report.verdict == "inconclusive"
    assert report.measured["c_exact"]["value"] == "inf"


def test_radial_identity_requires_radial_node(fast_schedule):
    with pytest.raises(ExpressionInputError):
        verify_radial_identity(monomial(1), fast_schedule)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_sandwich_for_power_of_z(s, fast_schedule, opts):
    reports = verify_levelset_sandwich(monomial(s), s, 1, [[0], [0.5]], fast_schedule, opts)
    assert len(reports) == 2
    assert all(r.verdict == "pass" for r in reports), [r.model_dump() for r in reports]


def test_sandwich_at_rational_level(fast_schedule, opts):
    reports = verify_levelset_sandwich(monomial(2), "3/2", 1, [[0]], fast_schedule, opts)
    assert reports[0].predicted["lower_level"] == "3/4"
    assert reports[0].verdict == "pass"


def test_sandwich_rejects_nonpositive_level(fast_schedule):
    with pytest.raises(ExpressionInputError):
        verify_levelset_sandwich(monomial(1), 0, 1, [[0]], fast_schedule)


def test_levelset_generators_of_z1_squared_z2():
    f = Polynomial.from_dict(2, {(2, 1): 1})
    generators, contains = levelset_generators(f, 2)
    expected = {
        Polynomial.from_dict(2, {(2, 1): 1}).terms,
        Polynomial.from_dict(2, {(1, 1): 2}).terms,
        Polynomial.from_dict(2, {(2, 0): 1}).terms,
    }
    assert {g.terms for g in generators} == expected
    assert contains([0, 5])
    assert not contains([1, 0])


def test_fractional_level_rounds_up():
    f = Polynomial.from_dict(1, {(2,): 1})
    generators, contains = levelset_generators(f, 1.5)
    assert len(generators) == 2
    assert contains([0]) and not contains([0.3])


def test_level_above_degree_is_empty():
    f = Polynomial.from_dict(1, {(2,): 1})
    _, contains = levelset_generators(f, 3)
    assert not contains([0])


def test_levelset_of_zero_polynomial():
    with pytest.raises(ExpressionInputError):
        levelset_generators(Polynomial.from_dict(1, {(0,): 0}), 1)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_levelset_agrees_with_vanishing_order(c):
    rng = np.random.default_rng(SEED + c)
    for _ in range(20):
        coefficients = {}
        for _ in range(int(rng.integers(2, 6))):
            a, b = (int(v) for v in rng.integers(0, 4, size=2))
            coefficients[(a, b)] = int(rng.integers(-3, 4)) or 1
        # (z1 - 1/2)^2 · g: la recta z1 = 1/2 tiene orden >= 2
        g = Polynomial.from_dict(2, coefficients)
        shifted = {}
        for (a, b), coef in coefficients.items():
            for da, factor in ((2, Fraction(1)), (1, Fraction(-1)), (0, Fraction(1, 4))):
                key = (a + da, b)
                shifted[key] = shifted.get(key, 0) + factor * coef
        f = Polynomial.from_dict(2, shifted)
        assert not g.is_zero()
        on_line = [[0.5, float(v) / 8] for v in rng.integers(-8, 9, size=100)]
        dyadic = [[float(a) / 4, float(b) / 4] for a, b in rng.integers(-8, 9, size=(99, 2))]
        points = [[0, 0]] + on_line + dyadic
        report = verify_levelset_structure(f, c, points, seed=SEED)
        assert report.verdict == "pass", report.measured
        assert report.measured["disagreements"] == 0


def test_pullback_lemma(fast_schedule, opts):
    reports = verify_pullback_lemma(monomial(1, coeff=2), [[0], [0.5]], fast_schedule, opts)
    assert sorted({r.statement for r in reports}) == ["lemma5-1", "lemma5-2"]
    assert all(r.verdict == "pass" for r in reports)


def test_unitary_invariance(fast_schedule, opts):
    pulled = pullback_difference(monomial(1))
    reports = verify_unitary_invariance(pulled, 1, [[0]], fast_schedule, opts)
    assert reports[0].statement == "lemma6"
    assert reports[0].verdict == "pass"


def test_unitary_invariance_of_max(fast_schedule, opts):
    expr = Max((monomial(1, 0), monomial(0, 1)))
    reports = verify_unitary_invariance(expr, 1, [[0]], fast_schedule, opts)
    assert reports[0].verdict == "pass"


def test_fiber_identity(fast_schedule, opts):
    reports = verify_fiber_identity(monomial(1), 1, [[0], [0.5]], fast_schedule, opts)
    assert all(r.statement == "fiber-identity" for r in reports)
    assert all(r.verdict == "pass" for r in reports), [r.model_dump() for r in reports]
    at_origin = next(r for r in reports if "z=(0)" in r.instance)
    assert at_origin.predicted["c"] == pytest.approx(1.0)
