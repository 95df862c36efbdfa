"""
expressions.py - Árbol de expresiones psh: tipos, evaluación y construcciones

Los nodos son dataclasses inmutables; la evaluación es vectorizada sobre
lotes de puntos (N, n) para que los estimadores numéricos puedan muestrear
miles de puntos por anillo.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from scipy.linalg import qr

from lelong_lab.config import settings
from lelong_lab.core.exceptions import (
    CapacityError,
    DegenerateSliceError,
    ExpressionInputError,
)

Number = Union[Fraction, float]
Coefficient = Tuple[Number, Number]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def to_fraction(value, field: Optional[str] = None) -> Fraction:
    """Convierte int/str/Fraction a Fraction (los float se toman por su repr decimal)"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ExpressionInputError(f"valor racional inválido: {value!r}", field)
    try:
        if isinstance(value, float):
            if not math.isfinite(value):
                raise ValueError(value)
            return Fraction(repr(value))
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ExpressionInputError(f"valor racional inválido: {value!r}", field) from exc


def _as_complex_tuple(values: Sequence, field: str) -> Tuple[complex, ...]:
    out = []
    for v in values:
        c = complex(v)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ExpressionInputError(f"coordenada no finita: {v!r}", field)
        out.append(c)
    return tuple(out)


# ========================================================================
# POLINOMIOS
# ========================================================================

@dataclass(frozen=True)
class Polynomial:
    """Polinomio complejo en `nvars` variables; coeficientes como pares (re, im)

    Un coeficiente con ambas partes Fraction es exacto; con alguna parte
    float el polinomio entero se trata con umbrales relativos.
    """

    nvars: int
    terms: Tuple[Tuple[Tuple[int, ...], Coefficient], ...]

    def __post_init__(self):
        if self.nvars < 1:
            raise ExpressionInputError("un polinomio necesita al menos una variable", "nvars")
        merged: Dict[Tuple[int, ...], Coefficient] = {}
        for alpha, coef in self.terms:
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.nvars or any(a < 0 for a in alpha):
                raise ExpressionInputError(f"multi-índice inválido: {alpha}", "terms")
            re, im = coef
            if alpha in merged:
                re0, im0 = merged[alpha]
                re, im = re0 + re, im0 + im
            merged[alpha] = (re, im)
        object.__setattr__(self, "terms", tuple(sorted(merged.items())))

    @classmethod
    def from_dict(cls, nvars: int, coefficients: Dict[Tuple[int, ...], object]) -> "Polynomial":
        """Atajo: {(2, 1): 1, (0, 0): -3+2j, ...}"""
        return cls(nvars, tuple((alpha, _coefficient(c)) for alpha, c in coefficients.items()))

    @property
    def exact(self) -> bool:
        return all(isinstance(re, Fraction) and isinstance(im, Fraction) for _, (re, im) in self.terms)

    @property
    def degree(self) -> int:
        nonzero = [sum(alpha) for alpha, (re, im) in self.terms if re != 0 or im != 0]
        return max(nonzero) if nonzero else -1

    def is_zero(self) -> bool:
        return self.degree < 0

    @cached_property
    def _arrays(self):
        exps = np.array([alpha for alpha, _ in self.terms], dtype=int).reshape(-1, self.nvars)
        coefs = np.array([complex(float(re), float(im)) for _, (re, im) in self.terms], dtype=complex)
        return exps, coefs

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Valores complejos en un lote (N, nvars)"""
        exps, coefs = self._arrays
        pts = np.asarray(points, dtype=complex).reshape(-1, self.nvars)
        monomials = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2)
        return monomials @ coefs


def _coefficient(value) -> Coefficient:
    if isinstance(value, tuple) and len(value) == 2:
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return (Fraction(value), Fraction(0))
    c = complex(value)
    return (float(c.real), float(c.imag))


# ========================================================================
# NODOS
# ========================================================================

class PshExpr:
    """Base común de los nodos del árbol"""

    @property
    def arity(self) -> int:  # pragma: no cover - definido en subclases
        raise NotImplementedError


@dataclass(frozen=True)
class MonomialLog(PshExpr):
    """coeff · Σ_j exponents_j · log|z_j|"""

    coeff: Fraction
    exponents: Tuple[Fraction, ...]

    def __post_init__(self):
        coeff = to_fraction(self.coeff, "coeff")
        exponents = tuple(to_fraction(e, "exponents") for e in self.exponents)
        if coeff <= 0:
            raise ExpressionInputError("coeff debe ser > 0", "coeff", code="nonpositive")
        if not exponents:
            raise ExpressionInputError("exponents no puede estar vacío", "exponents")
        if any(e < 0 for e in exponents):
            raise ExpressionInputError("los exponentes deben ser >= 0", "exponents", code="nonpositive")
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "exponents", exponents)

    @property
    def arity(self) -> int:
        return len(self.exponents)

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        """Exponentes con el coeficiente ya plegado"""
        return tuple(self.coeff * e for e in self.exponents)


@dataclass(frozen=True)
class LogAbsPoly(PshExpr):
    """log|poly(z)|"""

    poly: Polynomial

    def __post_init__(self):
        if self.poly.is_zero():
            raise ExpressionInputError("log|0| es idénticamente -inf", "poly")

    @property
    def arity(self) -> int:
        return self.poly.nvars


@dataclass(frozen=True)
class Radial(PshExpr):
    """χ(log‖z‖) con χ lineal a trozos, convexa y creciente

    Para t < t_0 la pendiente es `nu_inf`; después de la última ruptura se
    prolonga la pendiente del último tramo.
    """

    nvars: int
    nu_inf: Fraction
    breakpoints: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        if self.nvars < 1:
            raise ExpressionInputError("nvars debe ser >= 1", "nvars")
        nu = to_fraction(self.nu_inf, "nu_inf")
        if nu < 0:
            raise ExpressionInputError("nu_inf debe ser >= 0", "nu_inf")
        bps = tuple((to_fraction(t, "breakpoints"), to_fraction(v, "breakpoints")) for t, v in self.breakpoints)
        if any(b[0] >= a[0] for b, a in zip(bps, bps[1:])):
            raise ExpressionInputError("las rupturas deben estar ordenadas estrictamente", "breakpoints")
        object.__setattr__(self, "nu_inf", nu)
        object.__setattr__(self, "breakpoints", bps)
        slopes = self.slopes
        if any(s1 < s0 for s0, s1 in zip(slopes, slopes[1:])):
            raise ExpressionInputError("χ debe ser convexa (pendientes no decrecientes)", "breakpoints")

    @property
    def arity(self) -> int:
        return self.nvars

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        """Pendientes de izquierda a derecha, empezando por nu_inf"""
        bps = self.breakpoints
        inner = tuple((v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(bps, bps[1:]))
        return (self.nu_inf,) + inner

    def chi(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        nu = float(self.nu_inf)
        neg_inf = np.isneginf(t)
        with np.errstate(invalid="ignore"):
            if not self.breakpoints:
                out = nu * t
                return np.where(neg_inf, -np.inf if nu > 0 else 0.0, out)
            ts = np.array([float(b[0]) for b in self.breakpoints])
            vs = np.array([float(b[1]) for b in self.breakpoints])
            last = float(self.slopes[-1])
            out = np.interp(t, ts, vs)
            out = np.where(t < ts[0], vs[0] + nu * (t - ts[0]), out)
            out = np.where(t > ts[-1], vs[-1] + last * (t - ts[-1]), out)
            return np.where(neg_inf, -np.inf if nu > 0 else vs[0], out)


def _check_children(children: Tuple[PshExpr, ...], kind: str) -> Tuple[PshExpr, ...]:
    children = tuple(children)
    if not children:
        raise ExpressionInputError(f"{kind} necesita al menos un hijo", "children", code="empty")
    arities = {c.arity for c in children}
    if len(arities) != 1:
        raise ExpressionInputError(f"{kind}: aridades distintas {sorted(arities)}", "children", code="arity")
    return children


@dataclass(frozen=True)
class Max(PshExpr):
    children: Tuple[PshExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", _check_children(self.children, "max"))

    @property
    def arity(self) -> int:
        return self.children[0].arity


@dataclass(frozen=True)
class Sum(PshExpr):
    children: Tuple[PshExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "children", _check_children(self.children, "sum"))

    @property
    def arity(self) -> int:
        return self.children[0].arity


@dataclass(frozen=True)
class Scale(PshExpr):
    factor: Fraction
    child: PshExpr

    def __post_init__(self):
        factor = to_fraction(self.factor, "factor")
        if factor <= 0:
            raise ExpressionInputError("factor debe ser > 0", "factor", code="nonpositive")
        object.__setattr__(self, "factor", factor)

    @property
    def arity(self) -> int:
        return self.child.arity


@dataclass(frozen=True)
class LinearPullback(PshExpr):
    """child(matrix · z + offset); matrix tiene child.arity filas"""

    matrix: Tuple[Tuple[complex, ...], ...]
    child: PshExpr
    offset: Optional[Tuple[complex, ...]] = None

    def __post_init__(self):
        rows = tuple(_as_complex_tuple(row, "matrix") for row in self.matrix)
        if len(rows) != self.child.arity:
            raise ExpressionInputError(
                f"la matriz tiene {len(rows)} filas y el hijo aridad {self.child.arity}", "matrix", code="arity"
            )
        widths = {len(r) for r in rows}
        if len(widths) != 1 or 0 in widths:
            raise ExpressionInputError("filas de la matriz con longitudes distintas", "matrix")
        object.__setattr__(self, "matrix", rows)
        if self.offset is not None:
            offset = _as_complex_tuple(self.offset, "offset")
            if len(offset) != len(rows):
                raise ExpressionInputError("offset debe tener una entrada por fila", "offset")
            object.__setattr__(self, "offset", None if not any(offset) else offset)

    @property
    def arity(self) -> int:
        return len(self.matrix[0])

    @cached_property
    def matrix_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=complex)

    @cached_property
    def offset_array(self) -> np.ndarray:
        if self.offset is None:
            return np.zeros(len(self.matrix), dtype=complex)
        return np.array(self.offset, dtype=complex)


@dataclass(frozen=True)
class UnitarySup(PshExpr):
    """sup_{g ∈ U(m)} child(z, g·w) con z de aridad n y w de aridad m"""

    base_arity: int
    block_arity: int
    child: PshExpr

    def __post_init__(self):
        if self.base_arity < 0 or self.block_arity < 1:
            raise ExpressionInputError("split inválido", "split")
        if self.base_arity + self.block_arity != self.child.arity:
            raise ExpressionInputError(
                f"split ({self.base_arity}, {self.block_arity}) no coincide con aridad {self.child.arity}",
                "split",
                code="arity",
            )

    @property
    def arity(self) -> int:
        return self.base_arity + self.block_arity


@dataclass(frozen=True)
class SliceMap:
    """Subvariedad afín t ↦ base + directions · t (directions: n filas, d columnas)"""

    base: Tuple[complex, ...]
    directions: Tuple[Tuple[complex, ...], ...]

    def __post_init__(self):
        base = _as_complex_tuple(self.base, "base")
        rows = tuple(_as_complex_tuple(r, "directions") for r in self.directions)
        if len(rows) != len(base):
            raise ExpressionInputError("directions debe tener una fila por coordenada", "directions")
        widths = {len(r) for r in rows}
        if len(widths) != 1 or 0 in widths:
            raise ExpressionInputError("directions con filas de longitud distinta", "directions")
        d = widths.pop()
        if d > len(base) or np.linalg.matrix_rank(np.array(rows, dtype=complex)) != d:
            raise ExpressionInputError("las columnas de directions deben ser independientes", "directions")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "directions", rows)

    @property
    def ambient_arity(self) -> int:
        return len(self.base)

    @property
    def dimension(self) -> int:
        return len(self.directions[0])

    @classmethod
    def coordinate(cls, n: int, keep: Sequence[int], base: Optional[Sequence[complex]] = None) -> "SliceMap":
        """Plano de coordenadas: solo varían las coordenadas en `keep`"""
        rows = [[1.0 if i == j else 0.0 for j in keep] for i in range(n)]
        return cls(tuple(base or (0.0,) * n), tuple(tuple(r) for r in rows))

    @classmethod
    def fiber(cls, z0: Sequence[complex], block: int) -> "SliceMap":
        """Fibra {z = z0} dentro de C^n × C^block"""
        n = len(z0)
        rows = [[0.0] * block for _ in range(n)]
        rows += [[1.0 if i == j else 0.0 for j in range(block)] for i in range(block)]
        return cls(tuple(z0) + (0.0,) * block, tuple(tuple(r) for r in rows))


# ========================================================================
# EVALUACIÓN
# ========================================================================

@dataclass(frozen=True)
class EvalOptions:
    seed: int = 20240611
    unitary_samples: int = 256
    exact_circle: bool = True
    circle_grid: int = 256
    refine_tol: float = 1e-10
    refine_iters: int = 80
    refine: bool = True

    @classmethod
    def from_settings(cls, **overrides) -> "EvalOptions":
        return cls(**{**settings.eval_defaults, **overrides})


def _validate_points(expr: PshExpr, points) -> np.ndarray:
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if pts.ndim != 2 or pts.shape[1] != expr.arity:
        raise ExpressionInputError(
            f"el punto tiene aridad {pts.shape[-1]} y la expresión {expr.arity}", "point"
        )
    if not np.all(np.isfinite(pts)):
        raise ExpressionInputError("coordenadas no finitas en el punto", "point")
    return pts


def evaluate(expr: PshExpr, point, opts: Optional[EvalOptions] = None) -> float:
    """Valor en [-inf, +inf) de la expresión en un punto"""
    pts = np.atleast_1d(np.asarray(point, dtype=complex)).reshape(1, -1)
    return float(evaluate_batch(expr, pts, opts)[0])


def evaluate_batch(expr: PshExpr, points, opts: Optional[EvalOptions] = None) -> np.ndarray:
    """Evaluación vectorizada sobre un lote (N, n)"""
    opts = opts or EvalOptions.from_settings()
    pts = _validate_points(expr, points)
    return _eval(expr, pts, opts, (0,))


def _eval(expr: PshExpr, Z: np.ndarray, opts: EvalOptions, path: Tuple[int, ...]) -> np.ndarray:
    if isinstance(expr, MonomialLog):
        e = np.array([float(x) for x in expr.exponents])
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.log(np.abs(Z))
            terms = np.where(e[None, :] > 0, logs * e[None, :], 0.0)
        return float(expr.coeff) * terms.sum(axis=1)

    if isinstance(expr, LogAbsPoly):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(expr.poly.evaluate(Z)))

    if isinstance(expr, Radial):
        with np.errstate(divide="ignore"):
            t = np.log(np.linalg.norm(Z, axis=1))
        return expr.chi(t)

    if isinstance(expr, Max):
        values = [_eval(c, Z, opts, path + (i,)) for i, c in enumerate(expr.children)]
        return np.max(np.vstack(values), axis=0)

    if isinstance(expr, Sum):
        values = [_eval(c, Z, opts, path + (i,)) for i, c in enumerate(expr.children)]
        return np.sum(np.vstack(values), axis=0)

    if isinstance(expr, Scale):
        return float(expr.factor) * _eval(expr.child, Z, opts, path + (0,))

    if isinstance(expr, LinearPullback):
        Y = Z @ expr.matrix_array.T + expr.offset_array[None, :]
        return _eval(expr.child, Y, opts, path + (0,))

    if isinstance(expr, UnitarySup):
        n = expr.base_arity
        base, block = Z[:, :n], Z[:, n:]
        if expr.block_arity == 1 and opts.exact_circle:
            return circle_sup(
                lambda pts: _eval(expr.child, pts, opts, path + (0,)),
                base, block[:, 0], opts.circle_grid, opts.refine, opts.refine_tol, opts.refine_iters,
            )
        return _sampled_unitary_sup(expr, base, block, opts, path)

    raise ExpressionInputError(f"nodo desconocido: {type(expr).__name__}")


def circle_sup(
    f: Callable[[np.ndarray], np.ndarray],
    base: np.ndarray,
    w: np.ndarray,
    grid: int,
    refine: bool = True,
    tol: float = 1e-10,
    max_iters: int = 80,
) -> np.ndarray:
    """sup_θ f(base, e^{iθ} w) por rejilla uniforme y sección áurea local

    La rejilla de `grid` puntos incluye θ = 0; el refinamiento nunca baja
    el valor de la rejilla.
    """
    N = base.shape[0]
    thetas = 2.0 * np.pi * np.arange(grid) / grid

    def at(theta: np.ndarray) -> np.ndarray:
        rotated = (np.exp(1j * theta) * w)[:, None]
        return f(np.hstack([base, rotated]))

    rows = []
    for theta in thetas:
        rows.append(at(np.full(N, theta)))
    values = np.vstack(rows)
    best_idx = np.argmax(values, axis=0)
    best = values[best_idx, np.arange(N)]
    if not refine:
        return best

    h = 2.0 * np.pi / grid
    a = thetas[best_idx] - h
    b = thetas[best_idx] + h
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = at(c), at(d)
    for _ in range(max_iters):
        if np.max(b - a) <= tol:
            break
        move = fc < fd
        a_new = np.where(move, c, a)
        b_new = np.where(move, b, d)
        c_new = np.where(move, d, b_new - GOLDEN * (b_new - a_new))
        d_new = np.where(move, a_new + GOLDEN * (b_new - a_new), c)
        fx = at(np.where(move, d_new, c_new))
        fc, fd = np.where(move, fd, fx), np.where(move, fx, fc)
        a, b, c, d = a_new, b_new, c_new, d_new
    return np.maximum(best, np.maximum(fc, fd))


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """Unitaria Haar-aleatoria por QR con corrección de fase"""
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    q, r = qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


@lru_cache(maxsize=64)
def _unitary_family(m: int, samples: int, seed: int, path: Tuple[int, ...]) -> Tuple[np.ndarray, ...]:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=path))
    family = [np.eye(m, dtype=complex)]
    family += [np.exp(2j * np.pi * q / 8) * np.eye(m, dtype=complex) for q in range(1, 8)]
    family += [haar_unitary(m, rng) for _ in range(samples)]
    return tuple(family)


def _sampled_unitary_sup(
    expr: UnitarySup, base: np.ndarray, block: np.ndarray, opts: EvalOptions, path: Tuple[int, ...]
) -> np.ndarray:
    # Cota inferior del supremo verdadero
    family = _unitary_family(expr.block_arity, opts.unitary_samples, opts.seed, path)
    logger.debug(f"sup unitario muestreado: m={expr.block_arity}, {len(family)} unitarias")
    best = None
    for g in family:
        values = _eval(expr.child, np.hstack([base, block @ g.T]), opts, path + (0,))
        best = values if best is None else np.maximum(best, values)
    return best


# ========================================================================
# CONSTRUCCIONES
# ========================================================================

def pullback_difference(expr: PshExpr) -> LinearPullback:
    """p_m^*: (z, w) ↦ expr(z − w)"""
    m = expr.arity
    rows = []
    for i in range(m):
        row = [0.0] * (2 * m)
        row[i] = 1.0
        row[m + i] = -1.0
        rows.append(tuple(row))
    return LinearPullback(tuple(rows), expr)


def difference_split(matrix: Tuple[Tuple[complex, ...], ...]) -> Optional[int]:
    """Devuelve m si la matriz es exactamente [I | −I] de tamaño m × 2m"""
    m = len(matrix)
    if any(len(row) != 2 * m for row in matrix):
        return None
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            expected = 1.0 if j == i else (-1.0 if j == m + i else 0.0)
            if v != expected:
                return None
    return m


def _check_capacity(n: int, k: int, max_real_dims: Optional[int]) -> None:
    if k < 1:
        raise ExpressionInputError("k debe ser >= 1", "k")
    cap = max_real_dims or settings.MAX_REAL_DIMS
    if 2 * (2 ** k) * n > cap:
        raise CapacityError(f"2^{k}·{n} variables complejas superan el tope de {cap} dimensiones reales")


def tower_pullback(expr: PshExpr, k: int, max_real_dims: Optional[int] = None) -> PshExpr:
    """Composición k veces de pullback_difference (aridad 2^k·n)"""
    _check_capacity(expr.arity, k, max_real_dims)
    out = expr
    for _ in range(k):
        out = pullback_difference(out)
    return out


def make_phi_k(expr: PshExpr, k: int, max_real_dims: Optional[int] = None) -> UnitarySup:
    """φ_k = sup sobre U((2^k−1)n) del tower en el bloque w"""
    n = expr.arity
    tower = tower_pullback(expr, k, max_real_dims)
    logger.debug(f"φ_{k} construido: n={n}, aridad total {tower.arity}")
    return UnitarySup(n, (2 ** k - 1) * n, tower)


def match_tower(expr: PshExpr) -> Optional[Tuple[PshExpr, int]]:
    """Reconoce una torre de pullbacks de diferencia; devuelve (base, k)"""
    k = 0
    node = expr
    while isinstance(node, LinearPullback) and node.offset is None and difference_split(node.matrix):
        node = node.child
        k += 1
    return (node, k) if k else None


def match_phi_k(expr: PshExpr) -> Optional[Tuple[PshExpr, int]]:
    """Reconoce φ_k = UnitarySup(n, (2^k−1)n, torre de la base)"""
    if not isinstance(expr, UnitarySup):
        return None
    matched = match_tower(expr.child)
    if matched is None:
        return None
    base, k = matched
    n = base.arity
    if expr.base_arity != n or expr.block_arity != (2 ** k - 1) * n:
        return None
    return base, k


def recognize_phi_k_closed_form(expr: PshExpr) -> Optional[Tuple[Fraction, int]]:
    """φ_k de una base ν·log|z| en una variable: devuelve (ν, k)

    En ese caso φ_k(z, w) = ν·log(|z| + √(2^k − 1)·‖w‖).
    """
    matched = match_phi_k(expr)
    if matched is None:
        return None
    base, k = matched
    factor = Fraction(1)
    while isinstance(base, Scale):
        factor *= base.factor
        base = base.child
    if isinstance(base, MonomialLog) and base.arity == 1:
        return factor * base.weights[0], k
    return None


def phi_k_closed_form_values(nu: Fraction, k: int, points) -> np.ndarray:
    pts = np.asarray(points, dtype=complex).reshape(-1, 2 ** k)
    radius = np.abs(pts[:, 0]) + math.sqrt(2 ** k - 1) * np.linalg.norm(pts[:, 1:], axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = float(nu) * np.log(radius)
    return np.where(radius == 0, -np.inf if nu > 0 else 0.0, values)


def restrict_to_slice(expr: PshExpr, slice_map: SliceMap, opts: Optional[EvalOptions] = None) -> LinearPullback:
    """expr ∘ (base + V·t) como expresión en d variables"""
    if slice_map.ambient_arity != expr.arity:
        raise ExpressionInputError(
            f"el corte vive en aridad {slice_map.ambient_arity} y la expresión en {expr.arity}", "slice"
        )
    restricted = LinearPullback(slice_map.directions, expr, slice_map.base)
    opts = opts or EvalOptions.from_settings()
    rng = np.random.default_rng(np.random.SeedSequence(entropy=opts.seed, spawn_key=(0x51,)))
    d = slice_map.dimension
    samples = settings.DEGENERATE_SAMPLES
    t = 0.5 * (rng.standard_normal((samples, d)) + 1j * rng.standard_normal((samples, d)))
    values = evaluate_batch(restricted, t, opts)
    if np.all(np.isneginf(values)):
        raise DegenerateSliceError(
            f"la restricción es idénticamente -inf en {samples} puntos aleatorios (φ|_H ≡ -inf)"
        )
    return restricted


def scale(expr: PshExpr, c) -> Scale:
    """c·expr con c > 0 racional"""
    factor = to_fraction(c, "factor")
    if factor <= 0:
        raise ExpressionInputError("el factor de escala debe ser > 0", "factor")
    return Scale(factor, expr)


def is_rotation_invariant_root(expr: PshExpr) -> bool:
    """Raíz Radial o UnitarySup (posiblemente bajo Scale)"""
    while isinstance(expr, Scale):
        expr = expr.child
    return isinstance(expr, (Radial, UnitarySup))
