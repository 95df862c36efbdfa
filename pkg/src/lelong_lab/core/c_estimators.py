"""
estimators.py - Oráculo numérico: regresión de supremos en esferas y
test de integrabilidad por capas diádicas con Monte Carlo

Independiente del motor exacto salvo para proponer un bracket inicial y para
elegir la geometría de las capas en modo auto.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import logsumexp
from scipy.stats import linregress

from lelong_lab.config import settings
from lelong_lab.core.a_expressions import (
    EvalOptions,
    PshExpr,
    evaluate_batch,
    is_rotation_invariant_root,
)
from lelong_lab.core.b_newton import InvariantEstimate, lelong_exact, newton_polyhedron, skoda_sandwich
from lelong_lab.core.exceptions import (
    BracketError,
    DegenerateSampleError,
    ExpressionInputError,
    LelongLabError,
)

INTEGRABLE = "integrable"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"

MEDIAN_EFFICIENCY = math.sqrt(math.pi / 2.0)
LN2 = math.log(2.0)


# ========================================================================
# CALENDARIO DE ANILLOS
# ========================================================================

class AnnulusSchedule(BaseModel):
    """Parámetros de muestreo de las capas diádicas"""

    model_config = ConfigDict(frozen=True)

    r0: float = Field(default=0.5, gt=0.0, le=1.0)
    annuli: int = Field(default=12, ge=4)
    samples_per_annulus: int = Field(default=4096, ge=64)
    seed: int = 20240611
    groups: int = Field(default=16, ge=1)
    geometry: Literal["auto", "euclidean", "toric"] = "auto"

    @classmethod
    def from_settings(cls, **overrides) -> "AnnulusSchedule":
        values = {**settings.schedule_defaults, **{k: v for k, v in overrides.items() if v is not None}}
        return cls(**values)

    def radius(self, j: int) -> float:
        return self.r0 * 2.0 ** (-j)

    def refined(self) -> "AnnulusSchedule":
        """Mitad de r0 y un anillo más: solapa con los anillos 1..J"""
        return self.model_copy(update={"r0": self.r0 / 2.0, "annuli": self.annuli + 1})


def _center_is_most_singular(expr: PshExpr, center: np.ndarray) -> bool:
    """
    Clase monomial con centro en el origen: el exponente en el centro queda
    por debajo (con margen) del de cualquier otro punto de una capa euclídea

    En un punto de la capa donde solo se anulan las coordenadas T el
    exponente local es 1/σ* del poliedro proyectado a T.
    """
    if np.any(np.abs(center) > settings.ZERO_TOL):
        return False
    try:
        polyhedron = newton_polyhedron(expr)
    except LelongLabError:
        return False
    sigma = polyhedron.diagonal_sigma()
    if sigma == 0:
        return False
    margin = Fraction(settings.EUCLIDEAN_SHELL_MARGIN)
    d = polyhedron.dimension
    for size in range(1, d):
        for coords in combinations(range(d), size):
            if margin * polyhedron.project(coords).diagonal_sigma() > sigma:
                return False
    return True


def resolve_geometry(expr: PshExpr, schedule: AnnulusSchedule, center: Optional[Sequence[complex]] = None) -> str:
    """
    Geometría de las capas: la pedida, o en modo auto euclídea cuando el
    integrando es acotado en cada capa y tórica en otro caso
    """
    if schedule.geometry != "auto":
        return schedule.geometry
    if expr.arity == 1 or is_rotation_invariant_root(expr):
        return "euclidean"
    center = np.zeros(expr.arity, dtype=complex) if center is None else np.atleast_1d(np.asarray(center, dtype=complex))
    if _center_is_most_singular(expr, center):
        return "euclidean"
    return "toric"


# ========================================================================
# MUESTREO DE CAPAS
# ========================================================================

@dataclass(frozen=True)
class ShellSamples:
    """Muestras de una capa: log-peso de volumen, valores de φ y grupo de cada muestra"""

    j: int
    radius: float
    log_weight: np.ndarray
    phi: np.ndarray
    group: np.ndarray


def _group_rng(seed: int, j: int, g: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(j, g)))


def _strata(schedule: AnnulusSchedule, j: int) -> List[Tuple[int, np.ndarray, np.ndarray, np.random.Generator]]:
    """(grupo, índices de estrato, U estratificado en [0,1), generador) por grupo"""
    per_group = schedule.samples_per_annulus // schedule.groups
    n = per_group * schedule.groups
    out = []
    for g in range(schedule.groups):
        rng = _group_rng(schedule.seed, j, g)
        idx = g + schedule.groups * np.arange(per_group)
        out.append((g, idx, (idx + rng.random(per_group)) / n, rng))
    return out


def _euclidean_shell(j: int, d: int, schedule: AnnulusSchedule) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    r_out, r_in = schedule.radius(j), schedule.radius(j + 1)
    a, b = r_in ** (2 * d), r_out ** (2 * d)
    log_vol = d * math.log(math.pi) - math.lgamma(d + 1) + math.log(b - a)
    pts, groups = [], []
    for g, _, u, rng in _strata(schedule, j):
        x = rng.standard_normal((u.size, 2 * d))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        rho = (a + u * (b - a)) ** (1.0 / (2 * d))
        x *= rho[:, None]
        pts.append(x[:, :d] + 1j * x[:, d:])
        groups.append(np.full(u.size, g))
    offsets = np.vstack(pts)
    return offsets, np.full(offsets.shape[0], log_vol), np.concatenate(groups)


def _toric_shell(j: int, d: int, schedule: AnnulusSchedule) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    # {j <= Σ u_i < j+1}, |x_i| = r0·2^{-u_i}
    log_vol_u = math.log((j + 1) ** d - j ** d) - math.lgamma(d + 1)
    base = d * (math.log(LN2) + 2.0 * math.log(schedule.r0) + math.log(2.0 * math.pi)) + log_vol_u
    pts, log_w, groups = [], [], []
    for g, _, u, rng in _strata(schedule, j):
        s = (j ** d + u * ((j + 1) ** d - j ** d)) ** (1.0 / d)
        direction = rng.dirichlet(np.ones(d), size=u.size)
        exps = s[:, None] * direction
        theta = rng.uniform(0.0, 2.0 * np.pi, size=(u.size, d))
        pts.append(schedule.r0 * 2.0 ** (-exps) * np.exp(1j * theta))
        log_w.append(base - 2.0 * LN2 * s)
        groups.append(np.full(u.size, g))
    return np.vstack(pts), np.concatenate(log_w), np.concatenate(groups)


def sample_shells(
    expr: PshExpr,
    center: Sequence[complex],
    schedule: AnnulusSchedule,
    opts: Optional[EvalOptions] = None,
) -> Tuple[str, Tuple[ShellSamples, ...]]:
    """Muestrea y evalúa φ una sola vez en todas las capas"""
    center = np.atleast_1d(np.asarray(center, dtype=complex))
    if center.shape != (expr.arity,):
        raise ExpressionInputError(f"el centro tiene aridad {center.size} y la expresión {expr.arity}", "center")
    geometry = resolve_geometry(expr, schedule, center)
    d = expr.arity
    opts = opts or EvalOptions.from_settings(seed=schedule.seed)
    sampler = _euclidean_shell if geometry == "euclidean" else _toric_shell

    def shell(j: int) -> ShellSamples:
        offsets, log_w, group = sampler(j, d, schedule)
        phi = evaluate_batch(expr, center[None, :] + offsets, opts)
        radius = schedule.radius(j) if geometry == "euclidean" else schedule.r0 * 2.0 ** (-j / d)
        return ShellSamples(j=j, radius=radius, log_weight=log_w, phi=phi, group=group)

    with ThreadPoolExecutor(max_workers=max(1, settings.MAX_WORKERS)) as pool:
        shells = tuple(pool.map(shell, range(schedule.annuli)))
    if all(np.all(np.isneginf(s.phi)) for s in shells):
        raise DegenerateSampleError("φ = -inf en todas las muestras de todas las capas")
    logger.debug(f"capas muestreadas: geometría {geometry}, {schedule.annuli} capas, d={d}")
    return geometry, shells


# ========================================================================
# AJUSTE DE DECAIMIENTO
# ========================================================================

@dataclass(frozen=True)
class AnnulusEstimate:
    j: int
    radius: float
    log2_i_hat: float
    rel_stderr: float
    used_in_fit: bool = False
    clamped: int = 0

    @property
    def i_hat(self) -> float:
        return 2.0 ** self.log2_i_hat

    @property
    def stderr(self) -> float:
        return self.rel_stderr * self.i_hat


@dataclass(frozen=True)
class ExponentFit:
    """Estimaciones por capa, pendiente ajustada y veredicto"""

    c: float
    geometry: str
    annuli: Tuple[AnnulusEstimate, ...]
    slope: float
    slope_stderr: float
    window: Tuple[int, ...]
    verdict: str
    epsilon: float
    clamped: int = 0
    log_term: Optional[float] = None
    flags: Tuple[str, ...] = ()

    def rows(self) -> List[Dict]:
        return [
            {"j": a.j, "radius": a.radius, "I_hat": a.i_hat, "stderr": a.stderr, "used_in_fit": a.used_in_fit}
            for a in self.annuli
        ]

    def to_csv(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=["j", "radius", "I_hat", "stderr", "used_in_fit"])
            writer.writeheader()
            writer.writerows(self.rows())
        return path

    def to_dict(self) -> Dict:
        return {
            "c": self.c,
            "geometry": self.geometry,
            "slope": self.slope,
            "slope_stderr": self.slope_stderr,
            "window": list(self.window),
            "verdict": self.verdict,
            "clamped": self.clamped,
            "flags": list(self.flags),
        }


def _annulus_estimate(shell: ShellSamples, c: float, groups: int, log_cap: float) -> AnnulusEstimate:
    with np.errstate(invalid="ignore"):
        log_terms = shell.log_weight - 2.0 * c * shell.phi
    clamped = int(np.count_nonzero(log_terms > log_cap))
    log_terms = np.minimum(log_terms, log_cap)
    log_means = np.array([
        logsumexp(log_terms[shell.group == g]) - math.log(np.count_nonzero(shell.group == g))
        for g in range(groups)
    ])
    # exponentes relativos a la mediana de los grupos
    ref = float(np.median(log_means))
    with np.errstate(over="ignore", invalid="ignore"):
        means = np.exp(log_means - ref)
        med = float(np.median(means))
        rel = MEDIAN_EFFICIENCY * float(np.std(means, ddof=1)) / math.sqrt(groups) / med if groups > 1 else math.inf
    if not math.isfinite(rel):
        rel = math.inf
    log2_i = (math.log(med) + ref) / LN2
    return AnnulusEstimate(j=shell.j, radius=shell.radius, log2_i_hat=log2_i, rel_stderr=rel, clamped=clamped)


def fit_decay(
    estimates: Sequence[AnnulusEstimate],
    with_log_term: bool,
    epsilon: float,
    max_rel_stderr: float,
    min_annuli: int,
) -> Tuple[float, float, Optional[float], Tuple[int, ...], str, Tuple[AnnulusEstimate, ...]]:
    """Ajuste log2 Î_j ≈ b − α·j (+ κ·log2(j+½)) por mínimos cuadrados"""
    used = [a for a in estimates if a.rel_stderr <= max_rel_stderr and math.isfinite(a.log2_i_hat)]
    window = tuple(a.j for a in used)
    marked = tuple(replace(a, used_in_fit=a.j in window) for a in estimates)
    ncols = 3 if with_log_term else 2
    if len(used) < max(min_annuli, ncols + 1):
        return math.nan, math.nan, None, window, INCONCLUSIVE, marked

    js = np.array([a.j for a in used], dtype=float)
    y = np.array([a.log2_i_hat for a in used])
    se_y = np.array([a.rel_stderr / LN2 for a in used])
    columns = [np.ones_like(js), js]
    if with_log_term:
        columns.append(np.log2(js + 0.5))
    X = np.column_stack(columns)
    coef, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    xtx_inv = np.linalg.pinv(X.T @ X)
    sigma2 = float(resid @ resid) / (len(used) - ncols)
    cov_resid = sigma2 * xtx_inv
    cov_noise = xtx_inv @ X.T @ np.diag(se_y ** 2) @ X @ xtx_inv
    slope_var = max(cov_resid[1, 1], cov_noise[1, 1])

    alpha = -float(coef[1])
    stderr = math.sqrt(max(slope_var, 0.0))
    if alpha - 2.0 * stderr > epsilon:
        verdict = INTEGRABLE
    elif alpha + 2.0 * stderr < -epsilon:
        verdict = DIVERGENT
    else:
        verdict = INCONCLUSIVE
    log_term = float(coef[2]) if with_log_term else None
    return alpha, stderr, log_term, window, verdict, marked


def _verdict_from_shells(
    geometry: str,
    shells: Sequence[ShellSamples],
    c: float,
    schedule: AnnulusSchedule,
    d: int,
) -> ExponentFit:
    log_cap = math.log(settings.CLAMP_CAP)
    estimates = [_annulus_estimate(shell, c, schedule.groups, log_cap) for shell in shells]
    clamped = sum(a.clamped for a in estimates)
    flags: List[str] = []
    if clamped:
        logger.warning(f"⚠️ {clamped} muestras recortadas a {settings.CLAMP_CAP:g} (cola pesada, c={c:.4f})")
        flags.append("clamped")
    alpha, stderr, log_term, window, verdict, marked = fit_decay(
        estimates,
        with_log_term=(geometry == "toric" and d >= 2),
        epsilon=settings.SLOPE_EPSILON,
        max_rel_stderr=settings.MAX_REL_STDERR,
        min_annuli=settings.MIN_FIT_ANNULI,
    )
    # una media recortada es cota inferior: no certifica integrabilidad
    if verdict == INTEGRABLE and clamped:
        logger.warning(f"⚠️ c={c:.4f}: pendiente positiva con capas recortadas, veredicto rebajado a {INCONCLUSIVE}")
        verdict = INCONCLUSIVE
        flags.append("clamp-limited")
    dropped = len(estimates) - len(window)
    if dropped:
        logger.debug(f"{dropped} capas descartadas por error relativo > {settings.MAX_REL_STDERR:.0%}")
    if len(window) < settings.MIN_FIT_ANNULI:
        flags.append("few-annuli")
    logger.debug(f"c={c:.4f}: α={alpha:.4f} ± {stderr:.4f} → {verdict}")
    return ExponentFit(
        c=float(c), geometry=geometry, annuli=marked, slope=alpha, slope_stderr=stderr, window=window,
        verdict=verdict, epsilon=settings.SLOPE_EPSILON, clamped=clamped, log_term=log_term, flags=tuple(flags),
    )


def integrability_verdict(
    expr: PshExpr,
    c: float,
    center: Sequence[complex],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> ExponentFit:
    """¿Es e^{−2cφ} integrable cerca de center? Veredicto por la pendiente de decaimiento"""
    if not c > 0:
        raise ExpressionInputError("c debe ser > 0", "c")
    schedule = schedule or AnnulusSchedule.from_settings()
    geometry, shells = sample_shells(expr, center, schedule, opts)
    return _verdict_from_shells(geometry, shells, c, schedule, expr.arity)


# ========================================================================
# NÚMERO DE LELONG NUMÉRICO
# ========================================================================

def lelong_numeric(
    expr: PshExpr,
    center: Sequence[complex],
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> InvariantEstimate:
    """Pendiente de M_j = max_{|x−center|=r_j} φ frente a log r_j"""
    schedule = schedule or AnnulusSchedule.from_settings()
    center = np.atleast_1d(np.asarray(center, dtype=complex))
    if center.shape != (expr.arity,):
        raise ExpressionInputError(f"el centro tiene aridad {center.size} y la expresión {expr.arity}", "center")
    opts = opts or EvalOptions.from_settings(seed=schedule.seed)
    d = expr.arity

    rng = np.random.default_rng(np.random.SeedSequence(entropy=schedule.seed, spawn_key=(0x4C,)))
    x = rng.standard_normal((schedule.samples_per_annulus, 2 * d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    directions = x[:, :d] + 1j * x[:, d:]

    def sphere_max(j: int) -> float:
        values = evaluate_batch(expr, center[None, :] + schedule.radius(j) * directions, opts)
        if np.all(np.isneginf(values)):
            raise DegenerateSampleError(f"φ = -inf en toda la esfera de radio {schedule.radius(j):.3g}")
        return float(values.max())

    with ThreadPoolExecutor(max_workers=max(1, settings.MAX_WORKERS)) as pool:
        maxima = np.array(list(pool.map(sphere_max, range(schedule.annuli))))

    window = max(4, schedule.annuli // 2)
    log_r = np.log([schedule.radius(j) for j in range(schedule.annuli)])[-window:]
    m = maxima[-window:]
    fit = linregress(log_r, m)
    resid = m - (fit.intercept + fit.slope * log_r)
    span = float(log_r.max() - log_r.min())
    max_resid = float(np.max(np.abs(resid)))
    half = 2.0 * float(fit.stderr) + settings.LELONG_GRID_TERM + max_resid / span
    nu = max(float(fit.slope), 0.0)

    flags: Tuple[str, ...] = ()
    if max_resid > settings.LELONG_MAX_RESIDUAL:
        logger.warning(f"⚠️ residuos del ajuste de Lelong altos: {max_resid:.3f}")
        flags = ("inconclusive",)
    logger.debug(f"ν̂ = {nu:.4f} ± {half:.4f} (ventana {window})")
    return InvariantEstimate.interval(
        "lelong", max(nu - half, 0.0), nu + half, "numeric",
        note=f"pendiente de supremos en {window} esferas", value=nu, flags=flags,
    )


# ========================================================================
# EXPONENTE DE SINGULARIDAD NUMÉRICO
# ========================================================================

@dataclass
class ThresholdSearch:
    """Resultado de la bisección: estimación y ajustes evaluados"""

    estimate: InvariantEstimate
    fits: Dict[float, ExponentFit] = field(default_factory=dict)
    steps: int = 0

    @property
    def last_fit(self) -> Optional[ExponentFit]:
        return self.fits[max(self.fits)] if self.fits else None

    def fit_closest(self, c: float) -> Optional[ExponentFit]:
        return self.fits[min(self.fits, key=lambda k: abs(k - c))] if self.fits else None


def _initial_bracket(expr: PshExpr, center: np.ndarray) -> Tuple[float, float]:
    try:
        nu_est = lelong_exact(expr, center)
    except LelongLabError as exc:
        logger.debug(f"sin bracket exacto: {exc}")
        return settings.LCT_BRACKET_FLOOR, float(2 * expr.arity)
    if nu_est.known and nu_est.value is not None and nu_est.value > 0:
        lo, hi = skoda_sandwich(nu_est.value, expr.arity)
        return max(float(lo) / 2.0, settings.LCT_BRACKET_FLOOR), min(float(hi) * 1.5, settings.LCT_BRACKET_CAP)
    return settings.LCT_BRACKET_FLOOR, float(2 * expr.arity)


def _crossing(fits: Dict[float, ExponentFit], lo: float, hi: float) -> Optional[float]:
    """Raíz de la recta α(c) ajustada sobre los c evaluados en [lo, hi]"""
    pts = [(c, f.slope) for c, f in fits.items() if lo <= c <= hi and math.isfinite(f.slope)]
    if len({c for c, _ in pts}) < 2:
        return None
    cs, alphas = np.array(pts).T
    slope, intercept = np.polyfit(cs, alphas, 1)
    if slope >= 0:
        return None
    return float(min(max(-intercept / slope, lo), hi))


def bisect_threshold(
    expr: PshExpr,
    center: Sequence[complex],
    bracket: Optional[Tuple[float, float]] = None,
    tol: Optional[float] = None,
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
    max_steps: Optional[int] = None,
) -> ThresholdSearch:
    """Bisección sobre c con veredictos de integrabilidad y banda inconclusa"""
    schedule = schedule or AnnulusSchedule.from_settings()
    tol = settings.LCT_TOL if tol is None else tol
    max_steps = settings.LCT_MAX_STEPS if max_steps is None else max_steps
    if tol <= 0:
        raise ExpressionInputError("tol debe ser > 0", "tol")
    center = np.atleast_1d(np.asarray(center, dtype=complex))
    geometry, shells = sample_shells(expr, center, schedule, opts)
    search = ThresholdSearch(estimate=InvariantEstimate.numeric_required("lct", "sin evaluar"))

    def verdict(c: float) -> str:
        if c not in search.fits:
            search.fits[c] = _verdict_from_shells(geometry, shells, c, schedule, expr.arity)
            search.steps += 1
        return search.fits[c].verdict

    if bracket is not None:
        lo, hi = float(bracket[0]), float(bracket[1])
        if not 0 < lo < hi:
            raise BracketError(f"bracket inválido [{lo}, {hi}]")
        if verdict(lo) != INTEGRABLE or verdict(hi) != DIVERGENT:
            raise BracketError(
                f"el bracket no separa: c={lo} → {verdict(lo)}, c={hi} → {verdict(hi)}"
            )
    else:
        lo, hi = _initial_bracket(expr, center)
        while verdict(lo) != INTEGRABLE:
            if verdict(lo) == DIVERGENT:
                hi = min(hi, lo)
            lo /= 2.0
            if lo < settings.LCT_BRACKET_FLOOR:
                raise BracketError("ningún exponente resultó integrable por encima del mínimo")
        while verdict(hi) != DIVERGENT:
            if verdict(hi) == INTEGRABLE:
                lo = max(lo, hi)
            if hi >= settings.LCT_BRACKET_CAP:
                logger.info(f"📈 sin divergencia hasta c={hi:g}: exponente no acotado")
                search.estimate = InvariantEstimate.interval(
                    "lct", lo, math.inf, "numeric", note=f"integrable hasta c={lo:g}", flags=("unbounded",)
                )
                return search
            hi = min(hi * 2.0, settings.LCT_BRACKET_CAP)

    a, b = lo, hi
    band: Optional[List[float]] = None
    exhausted = True
    for _ in range(max_steps):
        if band is None:
            if b - a <= tol:
                exhausted = False
                break
            m = (a + b) / 2.0
            v = verdict(m)
            if v == INTEGRABLE:
                a = m
            elif v == DIVERGENT:
                b = m
            else:
                band = [m, m]
            continue
        left, right = band[0] - a, b - band[1]
        if left <= tol / 2.0 and right <= tol / 2.0:
            exhausted = False
            break
        if left >= right:
            m = (a + band[0]) / 2.0
            v = verdict(m)
            if v == INTEGRABLE:
                a = m
            elif v == INCONCLUSIVE:
                band[0] = m
            else:
                b, band = m, None
        else:
            m = (band[1] + b) / 2.0
            v = verdict(m)
            if v == DIVERGENT:
                b = m
            elif v == INCONCLUSIVE:
                band[1] = m
            else:
                a, band = m, None

    flags = []
    note = f"último integrable {a:.4f}, primer divergente {b:.4f}"
    if band is not None:
        flags.append("inconclusive-band")
        note += f", banda inconclusa [{band[0]:.4f}, {band[1]:.4f}]"
    if exhausted:
        flags.append("budget-exhausted")
        logger.warning(f"⚠️ presupuesto de bisección agotado ({max_steps} pasos): intervalo ancho")
    value = _crossing(search.fits, a, b)
    search.estimate = InvariantEstimate.interval("lct", a, b, "numeric", note=note, value=value, flags=tuple(flags))
    logger.info(f"📐 ĉ ∈ [{a:.4f}, {b:.4f}] tras {search.steps} veredictos ({geometry})")
    return search


def lct_numeric(
    expr: PshExpr,
    center: Sequence[complex],
    bracket: Optional[Tuple[float, float]] = None,
    tol: Optional[float] = None,
    schedule: Optional[AnnulusSchedule] = None,
    opts: Optional[EvalOptions] = None,
) -> InvariantEstimate:
    """Intervalo [último c integrable, primer c divergente]"""
    return bisect_threshold(expr, center, bracket, tol, schedule, opts).estimate
