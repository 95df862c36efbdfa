"""
verify.py - Harnesses: comprobaciones ejecutables de cada identidad y
desigualdad sobre expresiones concretas, más los conjuntos de nivel de log|f|
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from lelong_lab.config import settings
from lelong_lab.core.a_expressions import (
    EvalOptions,
    Polynomial,
    PshExpr,
    Radial,
    SliceMap,
    UnitarySup,
    evaluate,
    haar_unitary,
    make_phi_k,
    pullback_difference,
    restrict_to_slice,
    scale,
    to_fraction,
)
from lelong_lab.core.b_newton import (
    InvariantEstimate,
    derivative_polynomial,
    derivative_vanishes,
    format_value,
    lct_exact,
    lelong_exact,
    ord_at,
)
from lelong_lab.core.c_estimators import AnnulusSchedule, lct_numeric, lelong_numeric
from lelong_lab.core.exceptions import DegenerateSliceError, ExpressionInputError

StatementId = Literal[
    "thm1-1", "thm1-2", "thm1-3", "prop1", "lemma2", "remark2", "lemma5-1", "lemma5-2",
    "lemma6", "remark-sandwich", "corollary1", "fiber-identity",
]
Verdict = Literal["pass", "fail", "inconclusive"]


class VerificationReport(BaseModel):
    """Registro de una comprobación en un punto"""

    statement: StatementId
    instance: str
    measured: Dict[str, Any]
    predicted: Dict[str, Any]
    verdict: Verdict
    seed: int
    runtime_s: float = 0.0
    note: str = ""

    @property
    def sort_key(self) -> Tuple[str, str]:
        return (self.statement, self.instance)


# ========================================================================
# UTILIDADES
# ========================================================================

def _fmt_point(z: Sequence[complex]) -> str:
    parts = []
    for c in np.atleast_1d(np.asarray(z, dtype=complex)):
        parts.append(f"{c.real:g}" if c.imag == 0 else f"{c.real:g}{c.imag:+g}i")
    return "(" + ", ".join(parts) + ")"


def _bounds(est: InvariantEstimate) -> Tuple[float, float]:
    return float(est.lo), float(est.hi)


def _is_certain(est: InvariantEstimate) -> bool:
    return est.known and est.method != "numeric"


def _lelong_any(expr: PshExpr, point, schedule: AnnulusSchedule, opts: EvalOptions) -> InvariantEstimate:
    est = lelong_exact(expr, point)
    return est if est.known else lelong_numeric(expr, point, schedule, opts)


def _lct_any(expr: PshExpr, point, schedule: AnnulusSchedule, opts: EvalOptions) -> InvariantEstimate:
    est = lct_exact(expr, point)
    if est.is_point:
        return est
    return lct_numeric(expr, point, schedule=schedule, opts=opts)


def _leq(x: InvariantEstimate, y: InvariantEstimate, slack: float) -> Verdict:
    """x <= y con incertidumbre: fail solo si la violación es segura"""
    x_lo, x_hi = _bounds(x)
    y_lo, y_hi = _bounds(y)
    if x_hi <= y_lo + slack:
        return "pass"
    if x_lo > y_hi + slack:
        return "fail"
    return "inconclusive"


def _run_checks(tasks: Sequence[Callable[[], List[VerificationReport]]]) -> List[VerificationReport]:
    with ThreadPoolExecutor(max_workers=max(1, settings.MAX_WORKERS)) as pool:
        batches = list(pool.map(lambda task: task(), tasks))
    reports = [r for batch in batches for r in batch]
    return sorted(reports, key=lambda r: r.sort_key)


def _defaults(schedule: Optional[AnnulusSchedule], opts: Optional[EvalOptions]):
    schedule = schedule or AnnulusSchedule.from_settings()
    return schedule, opts or EvalOptions.from_settings(seed=schedule.seed)


def _check_symmetrization(n: int, k: int, sampled: bool) -> None:
    m = (2 ** k - 1) * n
    if m > 1 and not sampled:
        raise ExpressionInputError(
            f"el bloque unitario tiene tamaño {m} > 1: activa el modo muestreado", "k"
        )
    if m > 1:
        logger.warning(f"⚠️ sup unitario muestreado (m={m}): cota inferior, ĉ puede quedar sesgado a la baja")


# ========================================================================
# TEOREMA PRINCIPAL
# ========================================================================

def verify_theorem1(
    expr: PshExpr,
    k: int,
    points: Sequence[Sequence[complex]],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
    sampled: bool = False,
) -> List[VerificationReport]:
    """
    Comprueba las tres propiedades de φ_k en cada punto (z, 0)

    Args:
        expr: Función base φ de aridad n
        k: Número de pullbacks
        points: Puntos z de C^n
        schedule: Calendario de anillos para los estimadores
        opts: Opciones de evaluación
        sampled: Permite sup unitario muestreado cuando (2^k−1)n > 1

    Returns:
        Reportes thm1-1, thm1-2 y thm1-3 por punto, ordenados
    """
    schedule, opts = _defaults(schedule, opts)
    n = expr.arity
    _check_symmetrization(n, k, sampled)
    phi_k = make_phi_k(expr, k)
    logger.info(f"🔬 Teorema principal: n={n}, k={k}, {len(points)} puntos")
    tasks = [lambda z=z: _theorem1_point(expr, phi_k, k, z, schedule, opts) for z in points]
    return _run_checks(tasks)


def _theorem1_point(
    expr: PshExpr, phi_k: UnitarySup, k: int, z, schedule: AnnulusSchedule, opts: EvalOptions
) -> List[VerificationReport]:
    n = expr.arity
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    x = np.concatenate([z, np.zeros(phi_k.block_arity, dtype=complex)])
    instance = f"k={k} z={_fmt_point(z)}"
    reports = []

    # (1) φ_k(z, 0) = φ(z)
    t0 = time.perf_counter()
    v_base, v_k = evaluate(expr, z, opts), evaluate(phi_k, x, opts)
    if math.isinf(v_base) or math.isinf(v_k):
        ok = v_base == v_k
    else:
        ok = abs(v_k - v_base) <= settings.IDENTITY_REL_TOL * max(1.0, abs(v_base))
    reports.append(VerificationReport(
        statement="thm1-1", instance=instance,
        measured={"phi_k": format_value(v_k), "phi": format_value(v_base)},
        predicted={"relation": "φ_k(z,0) = φ(z)", "rel_tol": settings.IDENTITY_REL_TOL},
        verdict="pass" if ok else "fail", seed=schedule.seed, runtime_s=time.perf_counter() - t0,
    ))

    # (2) ν(φ_k, (z,0)) = ν(φ, z)
    t0 = time.perf_counter()
    nu_base = _lelong_any(expr, z, schedule, opts)
    nu_exact_k = lelong_exact(phi_k, x)
    nu_num_k = lelong_numeric(phi_k, x, schedule, opts)
    target = nu_base.midpoint
    verdict: Verdict
    if _is_certain(nu_base) and _is_certain(nu_exact_k) and nu_exact_k.value != nu_base.value:
        verdict = "fail"
    elif abs(nu_num_k.midpoint - target) <= settings.LELONG_TOL:
        verdict = "pass"
    elif nu_num_k.lo > target + settings.LELONG_TOL or nu_num_k.hi < target - settings.LELONG_TOL:
        verdict = "fail"
    else:
        verdict = "inconclusive"
    reports.append(VerificationReport(
        statement="thm1-2", instance=instance,
        measured={"nu_phi": nu_base.to_dict(), "nu_phi_k_exact": nu_exact_k.to_dict(),
                  "nu_phi_k_numeric": nu_num_k.to_dict()},
        predicted={"relation": "ν(φ_k,(z,0)) = ν(φ,z)", "tol": settings.LELONG_TOL},
        verdict=verdict, seed=schedule.seed, runtime_s=time.perf_counter() - t0,
    ))

    # (3) (2^k−1)n/ν <= c_{(z,0)}(φ_k) <= 2^k n/ν
    t0 = time.perf_counter()
    nu_zero = (nu_base.value == 0) if _is_certain(nu_base) else nu_base.lo <= 0.0
    if nu_zero:
        reports.append(VerificationReport(
            statement="thm1-3", instance=instance,
            measured={"nu_phi": nu_base.to_dict()},
            predicted={"relation": "(2^k−1)n/ν ≤ c ≤ 2^k n/ν", "interval": None},
            verdict="inconclusive", seed=schedule.seed, runtime_s=time.perf_counter() - t0,
            note="ν(φ,z) = 0: la cota se lee con 1/0",
        ))
        return reports
    nu = Fraction(nu_base.value) if _is_certain(nu_base) else nu_base.midpoint
    lo, hi = (2 ** k - 1) * n / nu, 2 ** k * n / nu
    c_hat = lct_numeric(phi_k, x, schedule=schedule, opts=opts)
    c_cert = lct_exact(phi_k, x)
    slack = settings.LCT_SLACK
    point = c_hat.midpoint
    if float(lo) - slack <= point <= float(hi) + slack:
        verdict = "pass"
    elif c_hat.lo > float(hi) + slack or c_hat.hi < float(lo) - slack:
        verdict = "fail"
    else:
        verdict = "inconclusive"
    reports.append(VerificationReport(
        statement="thm1-3", instance=instance,
        measured={"c_numeric": c_hat.to_dict(), "c_exact": c_cert.to_dict(), "nu_phi": nu_base.to_dict()},
        predicted={"relation": "(2^k−1)n/ν ≤ c ≤ 2^k n/ν", "interval": [format_value(lo), format_value(hi)],
                   "slack": slack},
        verdict=verdict, seed=schedule.seed, runtime_s=time.perf_counter() - t0,
    ))
    return reports


# ========================================================================
# RESTRICCIÓN A SUBVARIEDADES
# ========================================================================

def _slice_parameter(slice_map: SliceMap, point: np.ndarray) -> np.ndarray:
    V = np.array(slice_map.directions, dtype=complex)
    rhs = point - np.array(slice_map.base, dtype=complex)
    t, *_ = np.linalg.lstsq(V, rhs, rcond=None)
    if np.linalg.norm(V @ t - rhs) > 1e-9 * max(1.0, np.linalg.norm(point)):
        raise ExpressionInputError("el corte no pasa por el punto base", "slices")
    return t


def verify_restriction_monotonicity(
    expr: PshExpr,
    slices: Sequence[SliceMap],
    base_point: Sequence[complex],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> List[VerificationReport]:
    """c del restringido <= c ambiente y ν del restringido >= ν ambiente, por corte"""
    schedule, opts = _defaults(schedule, opts)
    x = np.atleast_1d(np.asarray(base_point, dtype=complex))
    nu_amb = _lelong_any(expr, x, schedule, opts)
    c_amb = _lct_any(expr, x, schedule, opts)
    logger.info(f"🔬 Restricción: {len(slices)} cortes por {_fmt_point(x)}")

    def check(i: int, slice_map: SliceMap) -> List[VerificationReport]:
        t0 = time.perf_counter()
        instance = f"corte {i:03d} d={slice_map.dimension} en {_fmt_point(x)}"
        try:
            restricted = restrict_to_slice(expr, slice_map, opts)
            t = _slice_parameter(slice_map, x)
            nu_res = _lelong_any(restricted, t, schedule, opts)
            c_res = _lct_any(restricted, t, schedule, opts)
        except DegenerateSliceError as exc:
            logger.warning(f"⚠️ corte {i} degenerado: {exc}")
            return [VerificationReport(
                statement=sid, instance=instance, measured={}, predicted={"relation": rel},
                verdict="inconclusive", seed=schedule.seed, runtime_s=time.perf_counter() - t0,
                note="degenerate-slice: φ|_H ≡ -inf",
            ) for sid, rel in (("prop1", "c(φ|_H) ≤ c(φ)"), ("lemma2", "ν(φ|_H) ≥ ν(φ)"))]
        exact = _is_certain(c_res) and _is_certain(c_amb)
        c_verdict = _leq(c_res, c_amb, 0.0 if exact else settings.LCT_SLACK)
        exact = _is_certain(nu_res) and _is_certain(nu_amb)
        nu_verdict = _leq(nu_amb, nu_res, 0.0 if exact else settings.LELONG_TOL)
        runtime = time.perf_counter() - t0
        return [
            VerificationReport(
                statement="prop1", instance=instance,
                measured={"c_restricted": c_res.to_dict(), "c_ambient": c_amb.to_dict()},
                predicted={"relation": "c(φ|_H) ≤ c(φ)"},
                verdict=c_verdict, seed=schedule.seed, runtime_s=runtime,
            ),
            VerificationReport(
                statement="lemma2", instance=instance,
                measured={"nu_restricted": nu_res.to_dict(), "nu_ambient": nu_amb.to_dict()},
                predicted={"relation": "ν(φ|_H) ≥ ν(φ)"},
                verdict=nu_verdict, seed=schedule.seed, runtime_s=runtime,
            ),
        ]

    return _run_checks([lambda i=i, s=s: check(i, s) for i, s in enumerate(slices)])


# ========================================================================
# IDENTIDAD RADIAL
# ========================================================================

def verify_radial_identity(
    expr: Radial,
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> VerificationReport:
    """c·ν = n para funciones radiales, exacto y numérico"""
    if not isinstance(expr, Radial):
        raise ExpressionInputError("la identidad radial requiere un nodo radial", "expr")
    schedule, opts = _defaults(schedule, opts)
    n = expr.arity
    origin = np.zeros(n, dtype=complex)
    instance = f"n={n} ν∞={expr.nu_inf} rupturas={len(expr.breakpoints)}"
    t0 = time.perf_counter()
    nu_ex, c_ex = lelong_exact(expr, origin), lct_exact(expr, origin)
    if expr.nu_inf == 0:
        return VerificationReport(
            statement="remark2", instance=instance,
            measured={"nu_exact": nu_ex.to_dict(), "c_exact": c_ex.to_dict()},
            predicted={"relation": "c·ν = n"}, verdict="inconclusive", seed=schedule.seed,
            runtime_s=time.perf_counter() - t0, note="ν∞ = 0: c = +inf, identidad vacía",
        )
    nu_num = lelong_numeric(expr, origin, schedule, opts)
    c_num = lct_numeric(expr, origin, schedule=schedule, opts=opts)
    exact_ok = c_ex.value * nu_ex.value == n
    product = c_num.midpoint * nu_num.midpoint
    numeric_ok = abs(product - n) <= settings.LCT_SLACK * n
    verdict: Verdict = "pass" if exact_ok and numeric_ok else ("fail" if not exact_ok else "inconclusive")
    return VerificationReport(
        statement="remark2", instance=instance,
        measured={"nu_exact": nu_ex.to_dict(), "c_exact": c_ex.to_dict(), "nu_numeric": nu_num.to_dict(),
                  "c_numeric": c_num.to_dict(), "numeric_product": product},
        predicted={"relation": "c·ν = n", "n": n, "rel_tol": settings.LCT_SLACK},
        verdict=verdict, seed=schedule.seed, runtime_s=time.perf_counter() - t0,
    )


# ========================================================================
# SÁNDWICH DE CONJUNTOS DE NIVEL
# ========================================================================

def verify_levelset_sandwich(
    expr: PshExpr,
    c,
    k: int,
    points: Sequence[Sequence[complex]],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
    sampled: bool = False,
) -> List[VerificationReport]:
    """
    Inclusiones puntuales {ν ≥ c} ⊆ {ĉ ≤ 1/c} ⊆ {ν ≥ (2^k−1)c/2^k}

    ĉ es el exponente de (2^k n)·φ_k en (z, 0).

    Args:
        expr: Función base φ de aridad n
        c: Nivel c > 0
        k: Número de pullbacks
        points: Puntos z de C^n

    Returns:
        Un reporte remark-sandwich por punto
    """
    schedule, opts = _defaults(schedule, opts)
    c = to_fraction(c, "c")
    if c <= 0:
        raise ExpressionInputError("c debe ser > 0", "c")
    n = expr.arity
    _check_symmetrization(n, k, sampled)
    scaled = scale(make_phi_k(expr, k), 2 ** k * n)
    lower_level = Fraction(2 ** k - 1, 2 ** k) * c

    def check(z) -> List[VerificationReport]:
        t0 = time.perf_counter()
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        x = np.concatenate([z, np.zeros(scaled.arity - n, dtype=complex)])
        nu = _lelong_any(expr, z, schedule, opts)
        c_hat = lct_numeric(scaled, x, schedule=schedule, opts=opts)
        c_cert = lct_exact(scaled, x)
        threshold = 1.0 / float(c)
        slack = settings.LCT_SLACK
        nu_lo, nu_hi = _bounds(nu)
        notes = []

        # {ν ≥ c} ⊆ {ĉ ≤ 1/c}
        upper = "pass"
        if nu_lo >= float(c) and c_hat.lo > threshold + slack:
            upper = "fail"
            notes.append("ν ≥ c pero ĉ > 1/c")
        elif nu_hi >= float(c) > nu_lo and c_hat.lo > threshold + slack:
            upper = "inconclusive"

        # {ĉ ≤ 1/c} ⊆ {ν ≥ (2^k−1)c/2^k}
        lower = "pass"
        if c_hat.lo <= threshold + slack and nu_hi < float(lower_level):
            lower = "fail" if c_hat.hi <= threshold + slack else "inconclusive"
            notes.append("ĉ ≤ 1/c pero ν < (2^k−1)c/2^k")

        verdict: Verdict = "fail" if "fail" in (upper, lower) else (
            "inconclusive" if "inconclusive" in (upper, lower) else "pass"
        )
        return [VerificationReport(
            statement="remark-sandwich", instance=f"c={c} k={k} z={_fmt_point(z)}",
            measured={"nu": nu.to_dict(), "c_numeric": c_hat.to_dict(), "c_exact": c_cert.to_dict()},
            predicted={"relation": "{ν ≥ c} ⊆ {ĉ ≤ 1/c} ⊆ {ν ≥ (2^k−1)c/2^k}",
                       "c": format_value(c), "one_over_c": format_value(1 / c),
                       "lower_level": format_value(lower_level)},
            verdict=verdict, seed=schedule.seed, runtime_s=time.perf_counter() - t0, note="; ".join(notes),
        )]

    logger.info(f"🔬 Sándwich de niveles: c={c}, k={k}, {len(points)} puntos")
    return _run_checks([lambda z=z: check(z) for z in points])


# ========================================================================
# CONJUNTOS DE NIVEL DE log|f|
# ========================================================================

def _orders_below(nvars: int, s: int):
    for d in range(s):
        for combo in np.ndindex(*([d + 1] * nvars)):
            if sum(combo) == d:
                yield tuple(int(a) for a in combo)


def levelset_generators(poly: Polynomial, c) -> Tuple[List[Polynomial], Callable[[Sequence[complex]], bool]]:
    """
    Generadores de {z : ord_z(f) ≥ c}: derivadas parciales de orden < ⌈c⌉

    Args:
        poly: Polinomio f no nulo
        c: Nivel c > 0

    Returns:
        (generadores, predicado de pertenencia)
    """
    if poly.is_zero():
        raise ExpressionInputError("el polinomio cero no define conjuntos de nivel", "poly")
    c = to_fraction(c, "c")
    if c <= 0:
        raise ExpressionInputError("c debe ser > 0", "c")
    s = math.ceil(c)
    alphas, generators, seen = [], [], set()
    for alpha in _orders_below(poly.nvars, s):
        gen = derivative_polynomial(poly, alpha)
        if gen.is_zero():
            continue
        alphas.append(alpha)
        key = gen.terms
        if key not in seen:
            seen.add(key)
            generators.append(gen)

    def contains(point: Sequence[complex]) -> bool:
        point = list(np.atleast_1d(np.asarray(point, dtype=complex)))
        return all(derivative_vanishes(poly, alpha, point, settings.LEVELSET_REL_TOL) for alpha in alphas)

    return generators, contains


def verify_levelset_structure(
    poly: Polynomial, c, points: Sequence[Sequence[complex]], seed: Optional[int] = None
) -> VerificationReport:
    """Predicado de pertenencia frente a ord_at ≥ ⌈c⌉ en cada punto"""
    t0 = time.perf_counter()
    generators, contains = levelset_generators(poly, c)
    s = math.ceil(to_fraction(c, "c"))
    disagreements, members = 0, 0
    for p in points:
        inside = contains(p)
        members += int(inside)
        if inside != (ord_at(poly, list(np.atleast_1d(np.asarray(p, dtype=complex)))) >= s):
            disagreements += 1
    verdict: Verdict = "pass" if disagreements == 0 else "fail"
    if disagreements:
        logger.warning(f"⚠️ {disagreements} discrepancias entre generadores y orden de anulación")
    return VerificationReport(
        statement="corollary1", instance=f"grado={poly.degree} c={c} puntos={len(points)}",
        measured={"generators": len(generators), "members": members, "disagreements": disagreements},
        predicted={"relation": "z ∈ V(generadores) ⟺ ord_z(f) ≥ ⌈c⌉", "s": s},
        verdict=verdict, seed=settings.SEED if seed is None else seed, runtime_s=time.perf_counter() - t0,
    )


# ========================================================================
# LEMAS DE PULLBACK Y SIMETRIZACIÓN
# ========================================================================

def _identity_verdict(measured: InvariantEstimate, target: InvariantEstimate, tol: float) -> Verdict:
    if _is_certain(measured) and _is_certain(target):
        return "pass" if measured.value == target.value else "fail"
    gap = abs(measured.midpoint - target.midpoint)
    if gap <= tol:
        return "pass"
    m_lo, m_hi = _bounds(measured)
    t_lo, t_hi = _bounds(target)
    if m_lo > t_hi + tol or m_hi < t_lo - tol:
        return "fail"
    return "inconclusive"


def verify_pullback_lemma(
    expr: PshExpr,
    points: Sequence[Sequence[complex]],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> List[VerificationReport]:
    """p*φ(z0, 0) = φ(z0) y ν de p*φ y de su fibra {z = z0} iguales a ν(φ, z0)"""
    schedule, opts = _defaults(schedule, opts)
    pulled = pullback_difference(expr)
    m = expr.arity

    def check(z) -> List[VerificationReport]:
        t0 = time.perf_counter()
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        x = np.concatenate([z, np.zeros(m, dtype=complex)])
        instance = f"z={_fmt_point(z)}"
        v, v_pulled = evaluate(expr, z, opts), evaluate(pulled, x, opts)
        identity = VerificationReport(
            statement="lemma5-1", instance=instance, measured={"pullback": format_value(v_pulled), "phi": format_value(v)},
            predicted={"relation": "p*φ(z0,0) = φ(z0)"},
            verdict="pass" if v == v_pulled else "fail", seed=schedule.seed, runtime_s=time.perf_counter() - t0,
        )
        t0 = time.perf_counter()
        nu = _lelong_any(expr, z, schedule, opts)
        nu_pulled = _lelong_any(pulled, x, schedule, opts)
        fiber = restrict_to_slice(pulled, SliceMap.fiber(tuple(z), m), opts)
        nu_fiber = _lelong_any(fiber, np.zeros(m, dtype=complex), schedule, opts)
        verdicts = [_identity_verdict(e, nu, settings.LELONG_TOL) for e in (nu_pulled, nu_fiber)]
        verdict: Verdict = "fail" if "fail" in verdicts else ("pass" if all(v == "pass" for v in verdicts) else "inconclusive")
        lelong = VerificationReport(
            statement="lemma5-2", instance=instance,
            measured={"nu_phi": nu.to_dict(), "nu_pullback": nu_pulled.to_dict(), "nu_fiber": nu_fiber.to_dict()},
            predicted={"relation": "ν(p*φ,(z0,0)) = ν(p*φ|fibra, 0) = ν(φ,z0)"},
            verdict=verdict, seed=schedule.seed, runtime_s=time.perf_counter() - t0,
        )
        return [identity, lelong]

    return _run_checks([lambda z=z: check(z) for z in points])


def verify_unitary_invariance(
    expr: PshExpr,
    split: int,
    points: Sequence[Sequence[complex]],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> List[VerificationReport]:
    """ν del simetrizado sup_g φ(z, g·w) en (z0, 0) frente a ν(φ, (z0, 0))"""
    schedule, opts = _defaults(schedule, opts)
    symmetrized = UnitarySup(split, expr.arity - split, expr)

    def check(z) -> List[VerificationReport]:
        t0 = time.perf_counter()
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        x = np.concatenate([z, np.zeros(symmetrized.block_arity, dtype=complex)])
        nu_child = _lelong_any(expr, x, schedule, opts)
        nu_sym = lelong_numeric(symmetrized, x, schedule, opts)
        return [VerificationReport(
            statement="lemma6", instance=f"split=({split},{symmetrized.block_arity}) z={_fmt_point(z)}",
            measured={"nu_child": nu_child.to_dict(), "nu_symmetrized": nu_sym.to_dict()},
            predicted={"relation": "ν(sup_g φ(z,gw),(z0,0)) = ν(φ,(z0,0))", "tol": settings.LELONG_TOL},
            verdict=_identity_verdict(nu_sym, nu_child, settings.LELONG_TOL),
            seed=schedule.seed, runtime_s=time.perf_counter() - t0,
        )]

    return _run_checks([lambda z=z: check(z) for z in points])


def verify_fiber_identity(
    expr: PshExpr,
    k: int,
    points: Sequence[Sequence[complex]],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
    sampled: bool = False,
) -> List[VerificationReport]:
    """
    En la fibra {z = z0}, w ↦ φ_k(z0, w) es invariante por rotaciones, con
    ν = ν(φ, z0) y exponente (2^k−1)n/ν(φ, z0)
    """
    schedule, opts = _defaults(schedule, opts)
    n = expr.arity
    _check_symmetrization(n, k, sampled)
    phi_k = make_phi_k(expr, k)
    m = phi_k.block_arity
    radial_schedule = schedule.model_copy(update={"geometry": "euclidean"})

    def check(z) -> List[VerificationReport]:
        t0 = time.perf_counter()
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        instance = f"k={k} z={_fmt_point(z)}"
        fiber = restrict_to_slice(phi_k, SliceMap.fiber(tuple(z), m), opts)
        origin = np.zeros(m, dtype=complex)

        rng = np.random.default_rng(np.random.SeedSequence(entropy=schedule.seed, spawn_key=(0x46,)))
        w = 0.25 * (rng.standard_normal((8, m)) + 1j * rng.standard_normal((8, m)))
        drift = 0.0
        for wi in w:
            g = haar_unitary(m, rng)
            a, b = evaluate(fiber, wi, opts), evaluate(fiber, g @ wi, opts)
            drift = max(drift, abs(a - b) / max(1.0, abs(a)))
        invariant = drift <= 1e-6

        nu = _lelong_any(expr, z, schedule, opts)
        nu_fiber = lelong_numeric(fiber, origin, radial_schedule, opts)
        measured = {"rotation_drift": drift, "nu_phi": nu.to_dict(), "nu_fiber": nu_fiber.to_dict()}
        predicted: Dict[str, Any] = {"relation": "φ_k(z0,·) radial, ν = ν(φ,z0), c = (2^k−1)n/ν"}
        verdicts = ["pass" if invariant else ("inconclusive" if m > 1 else "fail"), _identity_verdict(nu_fiber, nu, settings.LELONG_TOL)]
        note = ""
        nu_value = nu.midpoint
        if nu_value is not None and nu_value > settings.LELONG_TOL:
            c_fiber = lct_numeric(fiber, origin, schedule=radial_schedule, opts=opts)
            target = m / nu_value
            measured["c_fiber"] = c_fiber.to_dict()
            predicted["c"] = target
            gap = abs(c_fiber.midpoint - target)
            verdicts.append("pass" if gap <= settings.LCT_SLACK * max(1.0, target) else (
                "fail" if c_fiber.lo > target * (1 + settings.LCT_SLACK) or c_fiber.hi < target * (1 - settings.LCT_SLACK)
                else "inconclusive"
            ))
        else:
            note = "ν(φ,z0) = 0: exponente de la fibra no acotado, no se compara"
        verdict: Verdict = "fail" if "fail" in verdicts else ("pass" if all(v == "pass" for v in verdicts) else "inconclusive")
        return [VerificationReport(
            statement="fiber-identity", instance=instance, measured=measured, predicted=predicted,
            verdict=verdict, seed=schedule.seed, runtime_s=time.perf_counter() - t0, note=note,
        )]

    return _run_checks([lambda z=z: check(z) for z in points])
