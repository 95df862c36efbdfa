# tests/test_estimators.py
"""Oráculo numérico: capas diádicas, veredictos, regresión de Lelong y bisección del umbral"""
import csv
import math

import numpy as np
import pytest
from pydantic import ValidationError

from lelong_lab.core import (
    AnnulusSchedule,
    LinearPullback,
    Max,
    bisect_threshold,
    integrability_verdict,
    lct_numeric,
    lelong_numeric,
    make_phi_k,
)
from lelong_lab.core.c_estimators import (
    DIVERGENT,
    INCONCLUSIVE,
    INTEGRABLE,
    LN2,
    ShellSamples,
    _verdict_from_shells,
    resolve_geometry,
)
from lelong_lab.core.exceptions import BracketError, DegenerateSampleError

from conftest import monomial

ORDER = {INTEGRABLE: 0, INCONCLUSIVE: 1, DIVERGENT: 2}


def test_schedule_bounds_are_validated():
    with pytest.raises(ValidationError):
        AnnulusSchedule(annuli=3)
    with pytest.raises(ValidationError):
        AnnulusSchedule(r0=1.5)
    with pytest.raises(ValidationError):
        AnnulusSchedule(samples_per_annulus=10)


def test_refined_halves_r0(fast_schedule):
    refined = fast_schedule.refined()
    assert refined.r0 == fast_schedule.r0 / 2
    assert refined.annuli == fast_schedule.annuli + 1
    assert refined.radius(0) == fast_schedule.radius(1)


def test_geometry_resolution(fast_schedule):
    assert resolve_geometry(monomial(1), fast_schedule) == "euclidean"
    assert resolve_geometry(monomial(1, 1), fast_schedule) == "toric"
    assert resolve_geometry(make_phi_k(monomial(1), 1), fast_schedule) == "euclidean"


@pytest.mark.parametrize(
    "expr,center,expected",
    [
        (Max((monomial(1, 0), monomial(0, 1))), [0, 0], "euclidean"),
        (Max((monomial(2, 1), monomial(0, 3))), [0, 0], "euclidean"),
        (Max((monomial(2, 0), monomial(0, 2))), [0, 0], "euclidean"),
        (monomial(2, 1), [0, 0], "toric"),
        (monomial(1, 1), [0, 0], "toric"),
        (Max((monomial(1, 0), monomial(0, 1))), [0.5, 0], "toric"),
    ],
)
def test_geometry_follows_singular_locus(fast_schedule, expr, center, expected):
    assert resolve_geometry(expr, fast_schedule, center) == expected


def test_explicit_geometry_wins(fast_schedule):
    toric = fast_schedule.model_copy(update={"geometry": "toric"})
    assert resolve_geometry(Max((monomial(1, 0), monomial(0, 1))), toric) == "toric"


@pytest.mark.parametrize("c,expected", [(0.9, INTEGRABLE), (1.1, DIVERGENT), (1.0, INCONCLUSIVE)])
def test_verdict_of_log_z(fast_schedule, c, expected):
    fit = integrability_verdict(monomial(1), c, [0], fast_schedule)
    assert fit.verdict == expected
    assert fit.slope == pytest.approx(2 - 2 * c, abs=0.05)


def test_verdict_is_seed_deterministic(fast_schedule):
    a = integrability_verdict(monomial(2, 1), 0.4, [0, 0], fast_schedule)
    b = integrability_verdict(monomial(2, 1), 0.4, [0, 0], fast_schedule)
    assert a == b
    assert a.rows() == b.rows()


def test_annulus_integrals_grow_with_c(fast_schedule):
    fits = [integrability_verdict(monomial(1), c, [0], fast_schedule) for c in (0.5, 0.9, 1.0, 1.1, 1.5)]
    for lower, upper in zip(fits, fits[1:]):
        for a, b in zip(lower.annuli, upper.annuli):
            assert a.log2_i_hat <= b.log2_i_hat
    ranks = [ORDER[f.verdict] for f in fits]
    assert ranks == sorted(ranks)


def test_refined_schedule_overlaps(fast_schedule):
    coarse = integrability_verdict(monomial(1), 0.5, [0], fast_schedule)
    fine = integrability_verdict(monomial(1), 0.5, [0], fast_schedule.refined())
    for a, b in zip(coarse.annuli[1:], fine.annuli):
        assert a.radius == b.radius
        se = math.hypot(a.rel_stderr, b.rel_stderr) / LN2
        assert abs(a.log2_i_hat - b.log2_i_hat) <= 3 * se + 1e-3


def test_heavy_tail_is_clamped(fast_schedule):
    fit = integrability_verdict(monomial(1, coeff=400), 1.0, [0], fast_schedule)
    assert fit.clamped > 0
    assert "clamped" in fit.flags
    assert fit.verdict != INTEGRABLE


def test_long_clamped_schedule_is_never_integrable(fast_schedule):
    # 50·log|z1 z2| tiene umbral 1/50: c = 1 diverge aunque el recorte aplane las capas profundas
    schedule = fast_schedule.model_copy(update={"annuli": 24})
    fit = integrability_verdict(monomial(1, 1, coeff=50), 1.0, [0, 0], schedule)
    assert fit.clamped > 0
    assert fit.verdict != INTEGRABLE


def _geometric_shells(schedule, spike_at=None):
    """Capas con Î_j = 2^{-2j} exacto; spike_at añade una muestra por encima del tope"""
    n = schedule.samples_per_annulus
    shells = []
    for j in range(schedule.annuli):
        phi = np.zeros(n)
        if j == spike_at:
            phi[0] = -1000.0
        shells.append(ShellSamples(
            j=j, radius=schedule.radius(j), log_weight=np.full(n, -2.0 * LN2 * j),
            phi=phi, group=np.arange(n) % schedule.groups,
        ))
    return shells


def test_clamped_fit_is_not_certified(fast_schedule):
    clean = _verdict_from_shells("euclidean", _geometric_shells(fast_schedule), 1.0, fast_schedule, 1)
    assert clean.verdict == INTEGRABLE
    assert clean.slope == pytest.approx(2.0, abs=1e-9)

    last = fast_schedule.annuli - 1
    spiked = _verdict_from_shells("euclidean", _geometric_shells(fast_schedule, last), 1.0, fast_schedule, 1)
    assert spiked.clamped == 1
    assert spiked.annuli[last].clamped == 1
    assert spiked.verdict == INCONCLUSIVE
    assert {"clamped", "clamp-limited"} <= set(spiked.flags)


def test_all_minus_infinity_is_degenerate(fast_schedule):
    dead = LinearPullback(((0.0,),), monomial(1))
    with pytest.raises(DegenerateSampleError):
        integrability_verdict(dead, 1.0, [0], fast_schedule)


def test_csv_columns(fast_schedule, tmp_path):
    fit = integrability_verdict(monomial(1), 0.9, [0], fast_schedule)
    path = fit.to_csv(tmp_path / "fit.csv")
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert list(rows[0]) == ["j", "radius", "I_hat", "stderr", "used_in_fit"]
    assert len(rows) == fast_schedule.annuli


def test_lelong_of_two_log_z(fast_schedule):
    est = lelong_numeric(monomial(1, coeff=2), [0], fast_schedule)
    assert est.value == pytest.approx(2.0, abs=0.05)
    assert est.lo <= 2.0 <= est.hi


def test_lelong_of_phi_1_at_origin(fast_schedule, opts):
    phi_1 = make_phi_k(monomial(1, coeff=2), 1)
    est = lelong_numeric(phi_1, [0, 0], fast_schedule, opts)
    assert est.value == pytest.approx(2.0, abs=0.05)


def test_lelong_of_product_of_coordinates(fast_schedule):
    est = lelong_numeric(monomial(1, 1), [0, 0], fast_schedule)
    assert est.value == pytest.approx(2.0, abs=0.1)


def test_lelong_at_smooth_point(fast_schedule):
    est = lelong_numeric(monomial(1), [0.5], fast_schedule.model_copy(update={"r0": 0.25}))
    assert est.value == pytest.approx(0.0, abs=0.05)


def test_lelong_on_degenerate_sphere(fast_schedule):
    with pytest.raises(DegenerateSampleError):
        lelong_numeric(LinearPullback(((0.0,),), monomial(1)), [0], fast_schedule)


def test_log_z_threshold(fast_schedule):
    est = lct_numeric(monomial(1), [0], tol=0.02, schedule=fast_schedule)
    assert est.lo <= 1.0 <= est.hi
    assert est.hi - est.lo <= 0.2
    assert est.value == pytest.approx(1.0, abs=0.05)


def test_symmetrized_threshold(fast_schedule, opts):
    phi_1 = make_phi_k(monomial(1, coeff=2), 1)
    est = lct_numeric(phi_1, [0, 0], schedule=fast_schedule, opts=opts)
    assert est.lo - 0.05 <= 1.0 <= est.hi + 0.05


def test_threshold_of_max_of_coordinates(fast_schedule):
    est = lct_numeric(Max((monomial(1, 0), monomial(0, 1))), [0, 0], schedule=fast_schedule)
    assert est.lo - 0.05 <= 2.0 <= est.hi + 0.05


def test_corpus_agreement(monomial_case):
    expr, nu, c = monomial_case
    schedule = AnnulusSchedule.from_settings()
    origin = np.zeros(expr.arity)
    nu_hat = lelong_numeric(expr, origin, schedule)
    assert nu_hat.value == pytest.approx(float(nu), abs=0.05)
    c_hat = lct_numeric(expr, origin, schedule=schedule)
    assert c_hat.lo - 0.05 <= float(c) <= c_hat.hi + 0.05
    assert c_hat.value == pytest.approx(float(c), abs=0.05)


def test_explicit_bracket_must_straddle(fast_schedule):
    with pytest.raises(BracketError):
        bisect_threshold(monomial(1), [0], bracket=(1.5, 3.0), schedule=fast_schedule)
    with pytest.raises(BracketError):
        bisect_threshold(monomial(1), [0], bracket=(2.0, 1.0), schedule=fast_schedule)


def test_explicit_bracket(fast_schedule):
    search = bisect_threshold(monomial(1), [0], bracket=(0.5, 1.5), schedule=fast_schedule)
    assert search.estimate.lo <= 1.0 <= search.estimate.hi
    assert search.fit_closest(1.0) is not None


def test_smooth_point_is_unbounded(fast_schedule):
    schedule = fast_schedule.model_copy(update={"r0": 0.25})
    est = lct_numeric(monomial(1), [0.5], schedule=schedule)
    assert est.hi == math.inf
    assert "unbounded" in est.flags


def test_budget_exhausted_is_flagged(fast_schedule):
    search = bisect_threshold(monomial(1), [0], tol=1e-6, schedule=fast_schedule, max_steps=3)
    assert "budget-exhausted" in search.estimate.flags
    assert search.estimate.lo <= 1.0 <= search.estimate.hi
