"""
newton.py - Motor exacto: poliedros de Newton, PL racional y reglas de Lelong

Todo se calcula en aritmética racional (Fraction); cuando las reglas no
cubren un caso se devuelve una estimación con método `numeric-required`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sp
from loguru import logger
from sympy.polys.domains import CC, QQ_I, RR

from lelong_lab.config import settings
from lelong_lab.core.a_expressions import (
    LinearPullback,
    LogAbsPoly,
    Max,
    MonomialLog,
    Polynomial,
    PshExpr,
    Radial,
    Scale,
    Sum,
    UnitarySup,
    match_phi_k,
    recognize_phi_k_closed_form,
    to_fraction,
)
from lelong_lab.core.exceptions import (
    DegenerateSliceError,
    ExpressionClassError,
    ExpressionInputError,
)

Value = Union[Fraction, float]
INFINITY = math.inf

METHODS = ("exact-rule", "closed-form", "lp", "interval-certificate", "numeric", "numeric-required")


# ========================================================================
# ESTIMACIONES
# ========================================================================

def format_value(v: Optional[Value]):
    """Fraction → "p/q", +inf → "inf", float tal cual"""
    if v is None:
        return None
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return float(v)


@dataclass(frozen=True)
class InvariantEstimate:
    """Número de Lelong o exponente de singularidad con su incertidumbre"""

    kind: str
    method: str
    value: Optional[Value] = None
    lo: Optional[Value] = None
    hi: Optional[Value] = None
    note: str = ""
    flags: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lelong", "lct"):
            raise ExpressionInputError(f"tipo de invariante desconocido: {self.kind}", "kind")
        if self.method not in METHODS:
            raise ExpressionInputError(f"método desconocido: {self.method}", "method")
        if self.value is not None and self.lo is None:
            object.__setattr__(self, "lo", self.value)
            object.__setattr__(self, "hi", self.value)
        # ν y c viven en [0, +∞]
        for name in ("value", "lo"):
            bound = getattr(self, name)
            if bound is not None and bound < 0:
                raise ExpressionInputError(f"{name} negativo: {bound}", name)
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ExpressionInputError(f"intervalo invertido [{self.lo}, {self.hi}]", "interval")

    @classmethod
    def exact(cls, kind: str, value: Value, method: str = "exact-rule", note: str = "") -> "InvariantEstimate":
        return cls(kind=kind, method=method, value=value, note=note)

    @classmethod
    def interval(cls, kind: str, lo: Value, hi: Value, method: str, note: str = "",
                 value: Optional[Value] = None, flags: Tuple[str, ...] = ()) -> "InvariantEstimate":
        return cls(kind=kind, method=method, value=value, lo=lo, hi=hi, note=note, flags=flags)

    @classmethod
    def numeric_required(cls, kind: str, note: str) -> "InvariantEstimate":
        return cls(kind=kind, method="numeric-required", note=note)

    @property
    def known(self) -> bool:
        return self.lo is not None

    @property
    def is_point(self) -> bool:
        return self.known and self.lo == self.hi

    @property
    def midpoint(self) -> Optional[float]:
        if self.value is not None:
            return float(self.value)
        if not self.known:
            return None
        if math.isinf(self.hi):
            return INFINITY
        return (float(self.lo) + float(self.hi)) / 2.0

    def divided_by(self, c: Fraction) -> "InvariantEstimate":
        """Reescala por 1/c (regla lct(c·φ) = lct(φ)/c)"""
        div = lambda v: None if v is None else (v if isinstance(v, float) and math.isinf(v) else v / c)
        return InvariantEstimate(
            kind=self.kind, method=self.method, value=div(self.value), lo=div(self.lo), hi=div(self.hi),
            note=self.note, flags=self.flags,
        )

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "method": self.method,
            "value": format_value(self.value),
            "interval": None if not self.known else [format_value(self.lo), format_value(self.hi)],
            "note": self.note,
            "flags": list(self.flags),
        }


# ========================================================================
# SIMPLEX RACIONAL
# ========================================================================

class RationalSimplex:
    """Simplex de dos fases con regla de Bland sobre Fraction

    minimiza c·x sujeto a A x = b, x >= 0. Pensado para sistemas pequeños.
    """

    def __init__(self, A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
        rows = []
        for row, rhs in zip(A, b):
            row = [Fraction(v) for v in row]
            rhs = Fraction(rhs)
            if rhs < 0:
                row, rhs = [-v for v in row], -rhs
            rows.append((row, rhs))
        self.m = len(rows)
        self.n = len(rows[0][0]) if rows else 0
        # Tableau [A | I | b] con variables artificiales
        self.T = [row + [Fraction(int(i == k)) for k in range(self.m)] + [rhs] for i, (row, rhs) in enumerate(rows)]
        self.basis = [self.n + i for i in range(self.m)]
        self.feasible: Optional[bool] = None

    def _pivot(self, r: int, c: int) -> None:
        pivot_row = self.T[r]
        pv = pivot_row[c]
        self.T[r] = [v / pv for v in pivot_row]
        for i in range(len(self.T)):
            if i != r and self.T[i][c] != 0:
                f = self.T[i][c]
                self.T[i] = [a - f * b for a, b in zip(self.T[i], self.T[r])]
        self.basis[r] = c

    def _run(self, cost: List[Fraction], allowed: Sequence[int]) -> str:
        while True:
            entering = None
            for j in allowed:
                if j in self.basis:
                    continue
                reduced = cost[j] - sum(cost[self.basis[i]] * self.T[i][j] for i in range(len(self.T)))
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            leaving = None
            for i in range(len(self.T)):
                coef = self.T[i][entering]
                if coef > 0:
                    ratio = self.T[i][-1] / coef
                    if leaving is None or ratio < leaving[0] or (ratio == leaving[0] and self.basis[i] < self.basis[leaving[1]]):
                        leaving = (ratio, i)
            if leaving is None:
                return "unbounded"
            self._pivot(leaving[1], entering)

    def phase_one(self) -> bool:
        """Busca una base factible; elimina filas redundantes"""
        if self.feasible is not None:
            return self.feasible
        total = self.n + self.m
        cost = [Fraction(0)] * self.n + [Fraction(1)] * self.m
        self._run(cost, range(total))
        infeasibility = sum(self.T[i][-1] for i in range(len(self.T)) if self.basis[i] >= self.n)
        if infeasibility > 0:
            self.feasible = False
            return False
        # Sacar artificiales de la base
        i = 0
        while i < len(self.T):
            if self.basis[i] >= self.n:
                candidates = [j for j in range(self.n) if self.T[i][j] != 0]
                if candidates:
                    self._pivot(i, candidates[0])
                else:
                    del self.T[i]
                    del self.basis[i]
                    continue
            i += 1
        self.feasible = True
        return True

    def minimize(self, c: Sequence[Fraction]) -> Optional[Tuple[Fraction, List[Fraction]]]:
        """(óptimo, x) o None si no es factible; ValueError si no está acotado"""
        if not self.phase_one():
            return None
        cost = [Fraction(v) for v in c] + [Fraction(0)] * self.m
        if self._run(cost, range(self.n)) == "unbounded":
            raise ValueError("programa lineal no acotado")
        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            if j < self.n:
                x[j] = self.T[i][-1]
        return sum(cv * xv for cv, xv in zip(c, x)), x


# ========================================================================
# POLIEDRO DE NEWTON
# ========================================================================

Vector = Tuple[Fraction, ...]


def _prune(generators: Sequence[Vector]) -> Tuple[Vector, ...]:
    """Quita generadores dominados (g' <= g coordenada a coordenada)"""
    unique = sorted(set(generators))
    kept = []
    for g in unique:
        dominated = any(h != g and all(hv <= gv for hv, gv in zip(h, g)) for h in unique)
        if not dominated:
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class NewtonPolyhedron:
    """convexhull(generators) + ortante no negativo"""

    generators: Tuple[Vector, ...]
    raw_count: int = field(default=0, compare=False)

    def __post_init__(self):
        gens = [tuple(to_fraction(v, "generators") for v in g) for g in self.generators]
        if not gens:
            raise ExpressionInputError("el poliedro necesita al menos un generador", "generators")
        if len({len(g) for g in gens}) != 1:
            raise ExpressionInputError("generadores de dimensiones distintas", "generators")
        if any(v < 0 for g in gens for v in g):
            raise ExpressionInputError("los generadores deben ser no negativos", "generators")
        object.__setattr__(self, "raw_count", len(gens))
        object.__setattr__(self, "generators", _prune(gens))

    @property
    def dimension(self) -> int:
        return len(self.generators[0])

    def contains(self, q: Sequence) -> bool:
        """Pertenencia exacta: ∃λ ∈ Δ con Σλ_i a_i <= q"""
        q = [to_fraction(v, "q") for v in q]
        if len(q) != self.dimension:
            raise ExpressionInputError("dimensión de la consulta incorrecta", "q")
        if any(v < 0 for v in q):
            return False
        g, n = len(self.generators), self.dimension
        A = [[a[j] for a in self.generators] + [Fraction(int(k == j)) for k in range(n)] for j in range(n)]
        A.append([Fraction(1)] * g + [Fraction(0)] * n)
        return RationalSimplex(A, q + [Fraction(1)]).phase_one()

    def diagonal_sigma(self) -> Fraction:
        """σ* = min{σ : σ·(1,…,1) ∈ P}, como PL exacto"""
        g, n = len(self.generators), self.dimension
        if n == 0:
            return Fraction(0)
        # variables: λ_1..λ_g, σ, s_1..s_n
        A = []
        for j in range(n):
            A.append([a[j] for a in self.generators] + [Fraction(-1)] + [Fraction(int(k == j)) for k in range(n)])
        A.append([Fraction(1)] * g + [Fraction(0)] * (n + 1))
        b = [Fraction(0)] * n + [Fraction(1)]
        c = [Fraction(0)] * g + [Fraction(1)] + [Fraction(0)] * n
        result = RationalSimplex(A, b).minimize(c)
        if result is None:  # pragma: no cover - siempre factible
            raise ValueError("PL del umbral infactible")
        return result[0]

    def min_coordinate_sum(self) -> Fraction:
        return min(sum(g) for g in self.generators)

    def project(self, coords: Sequence[int]) -> "NewtonPolyhedron":
        """Proyección a las coordenadas dadas (las demás aportan O(1))"""
        return NewtonPolyhedron(tuple(tuple(g[j] for j in coords) for g in self.generators))


def _generators(expr: PshExpr) -> List[Vector]:
    if isinstance(expr, MonomialLog):
        return [expr.weights]
    if isinstance(expr, LogAbsPoly) and len([t for t in expr.poly.terms if t[1] != (0, 0)]) == 1:
        alpha = next(a for a, c in expr.poly.terms if c != (0, 0))
        return [tuple(Fraction(a) for a in alpha)]
    if isinstance(expr, Max):
        return list(_prune([g for c in expr.children for g in _generators(c)]))
    if isinstance(expr, Sum):
        acc = _generators(expr.children[0])
        for child in expr.children[1:]:
            other = _generators(child)
            acc = list(_prune([tuple(x + y for x, y in zip(a, b)) for a in acc for b in other]))
        return acc
    if isinstance(expr, Scale):
        return [tuple(expr.factor * v for v in g) for g in _generators(expr.child)]
    if isinstance(expr, LinearPullback) and expr.offset is None:
        columns = _monomial_map(expr.matrix)
        if columns is not None:
            transported = []
            for g in _generators(expr.child):
                if any(v > 0 and columns[j] is None for j, v in enumerate(g)):
                    continue  # término idénticamente -inf
                f = [Fraction(0)] * expr.arity
                for j, v in enumerate(g):
                    if columns[j] is not None:
                        f[columns[j]] += v
                transported.append(tuple(f))
            if not transported:
                raise DegenerateSliceError("la expresión monomial es idénticamente -inf")
            return list(_prune(transported))
    raise ExpressionClassError(f"nodo fuera de la clase monomial: {type(expr).__name__}")


def _monomial_map(matrix) -> Optional[List[Optional[int]]]:
    """Para matrices con a lo sumo un no-cero por fila: columna de cada fila"""
    columns: List[Optional[int]] = []
    for row in matrix:
        nz = [j for j, v in enumerate(row) if v != 0]
        if len(nz) > 1:
            return None
        columns.append(nz[0] if nz else None)
    return columns


def newton_polyhedron(expr: PshExpr) -> NewtonPolyhedron:
    """Poliedro de Newton de una expresión de la clase monomial"""
    return NewtonPolyhedron(tuple(_generators(expr)))


# ========================================================================
# ORDEN DE ANULACIÓN
# ========================================================================

def _exact_number(x: float) -> sp.Rational:
    f = Fraction(repr(float(x)))
    return sp.Rational(f.numerator, f.denominator)


def _exact_complex(c: complex):
    c = complex(c)
    return _exact_number(c.real) + sp.I * _exact_number(c.imag)


def _sympy_coefficient(coef, exact: bool):
    re, im = coef
    if exact:
        return sp.Rational(re.numerator, re.denominator) + sp.I * sp.Rational(im.numerator, im.denominator)
    return sp.Float(float(re)) + sp.I * sp.Float(float(im))


@lru_cache(maxsize=256)
def _sympy_poly(poly: Polynomial) -> sp.Poly:
    gens = sp.symbols(f"z1:{poly.nvars + 1}")
    data = {alpha: _sympy_coefficient(c, poly.exact) for alpha, c in poly.terms}
    return sp.Poly.from_dict(data, *gens, domain=QQ_I if poly.exact else CC)


@lru_cache(maxsize=256)
def _abs_poly(poly: Polynomial) -> sp.Poly:
    gens = sp.symbols(f"z1:{poly.nvars + 1}")
    data = {alpha: sp.Float(abs(complex(float(re), float(im)))) for alpha, (re, im) in poly.terms}
    return sp.Poly.from_dict(data, *gens, domain=RR)


@lru_cache(maxsize=4096)
def _derivative(poly: Polynomial, alpha: Tuple[int, ...], absolute: bool = False) -> sp.Poly:
    base = _abs_poly(poly) if absolute else _sympy_poly(poly)
    specs = [(g, k) for g, k in zip(base.gens, alpha) if k > 0]
    return base.diff(*specs) if specs else base


def _multi_indices(nvars: int, degree: int):
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        alpha = [0] * nvars
        for j in combo:
            alpha[j] += 1
        yield tuple(alpha)


def derivative_vanishes(poly: Polynomial, alpha: Tuple[int, ...], point: Sequence[complex], rel_tol: float) -> bool:
    """∂^α poly(point) == 0 (exacto) o por debajo del umbral relativo (float)"""
    if poly.exact:
        values = tuple(_exact_complex(c) for c in point)
        return _derivative(poly, alpha).eval(values) == 0
    values = tuple(complex(c) for c in point)
    value = complex(_derivative(poly, alpha).eval(tuple(sp.Float(c.real) + sp.I * sp.Float(c.imag) for c in values)))
    scale = float(_derivative(poly, alpha, absolute=True).eval(tuple(sp.Float(abs(c)) for c in values)))
    return abs(value) <= rel_tol * scale


def ord_at(poly: Polynomial, point: Sequence[complex]) -> int:
    """Orden de anulación de poly en point (menor grado tras el desplazamiento de Taylor)"""
    if poly.is_zero():
        raise ExpressionInputError("el polinomio cero no tiene orden de anulación", "poly")
    if len(point) != poly.nvars:
        raise ExpressionInputError("aridad del punto incorrecta", "point")
    for d in range(poly.degree + 1):
        for alpha in _multi_indices(poly.nvars, d):
            if not derivative_vanishes(poly, alpha, point, settings.ORD_REL_TOL):
                return d
    return poly.degree


def derivative_polynomial(poly: Polynomial, alpha: Tuple[int, ...]) -> Polynomial:
    """∂^α poly como Polynomial del dominio"""
    return _from_sympy(_derivative(poly, alpha), poly.nvars, poly.exact)


def _from_sympy(p: sp.Poly, nvars: int, exact: bool) -> Polynomial:
    terms = []
    for alpha, coef in p.terms():
        re, im = sp.sympify(coef).as_real_imag()
        if exact:
            re, im = sp.Rational(re), sp.Rational(im)
            terms.append((alpha, (Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))))
        else:
            terms.append((alpha, (float(re), float(im))))
    if not terms:
        terms = [((0,) * nvars, (Fraction(0), Fraction(0)) if exact else (0.0, 0.0))]
    return Polynomial(nvars, tuple(terms))


def compose_affine(poly: Polynomial, matrix, offset) -> Polynomial:
    """poly(matrix·t + offset) como polinomio en t"""
    M = np.array(matrix, dtype=complex)
    o = np.zeros(M.shape[0], dtype=complex) if offset is None else np.array(offset, dtype=complex)
    base = _sympy_poly(poly)
    tgens = sp.symbols(f"t1:{M.shape[1] + 1}")
    conv = _exact_complex if poly.exact else (lambda c: sp.Float(c.real) + sp.I * sp.Float(c.imag))
    forms = [sum(conv(M[j, k]) * tgens[k] for k in range(M.shape[1])) + conv(o[j]) for j in range(M.shape[0])]
    composed = sp.Poly(sp.expand(base.as_expr().subs(dict(zip(base.gens, forms)), simultaneous=True)), *tgens)
    return _from_sympy(composed, M.shape[1], poly.exact)


# ========================================================================
# NÚMERO DE LELONG EXACTO
# ========================================================================

class _NumericRequired(Exception):
    pass


def _is_zero(c: complex) -> bool:
    return abs(c) <= settings.ZERO_TOL


def _lelong(expr: PshExpr, x: np.ndarray) -> Fraction:
    if isinstance(expr, MonomialLog):
        return sum((w for w, xj in zip(expr.weights, x) if _is_zero(xj)), Fraction(0))
    if isinstance(expr, LogAbsPoly):
        return Fraction(ord_at(expr.poly, list(x)))
    if isinstance(expr, Radial):
        return expr.nu_inf if _is_zero(np.linalg.norm(x)) else Fraction(0)
    if isinstance(expr, Max):
        return min(_lelong(c, x) for c in expr.children)
    if isinstance(expr, Sum):
        return sum((_lelong(c, x) for c in expr.children), Fraction(0))
    if isinstance(expr, Scale):
        return expr.factor * _lelong(expr.child, x)
    if isinstance(expr, LinearPullback):
        M = expr.matrix_array
        y = M @ x + expr.offset_array
        if np.linalg.matrix_rank(M) == M.shape[0]:
            # Submersión (incluye [I | −I]): ν(child ∘ A, x) = ν(child, A x)
            return _lelong(expr.child, y)
        return _lelong_affine(expr.child, M, expr.offset_array, x)
    if isinstance(expr, UnitarySup):
        w = x[expr.base_arity:]
        if _is_zero(np.linalg.norm(w)):
            return _lelong(expr.child, x)
        raise _NumericRequired("sup unitario fuera de {w = 0}")
    raise _NumericRequired(f"nodo sin regla: {type(expr).__name__}")


def _lelong_affine(child: PshExpr, M: np.ndarray, o: np.ndarray, x: np.ndarray) -> Fraction:
    """ν(child(M·t + o), x) empujando la aplicación afín hacia las hojas"""
    y = M @ x + o
    if isinstance(child, Max):
        # Los hijos idénticamente -inf no cuentan en el máximo
        values = []
        for c in child.children:
            try:
                values.append(_lelong_affine(c, M, o, x))
            except DegenerateSliceError:
                continue
        if not values:
            raise DegenerateSliceError("todos los hijos del máximo son idénticamente -inf")
        return min(values)
    if isinstance(child, Sum):
        return sum((_lelong_affine(c, M, o, x) for c in child.children), Fraction(0))
    if isinstance(child, Scale):
        return child.factor * _lelong_affine(child.child, M, o, x)
    if isinstance(child, LinearPullback):
        M2 = child.matrix_array
        return _lelong_affine(child.child, M2 @ M, M2 @ o + child.offset_array, x)
    if isinstance(child, MonomialLog):
        total = Fraction(0)
        for j, w in enumerate(child.weights):
            if w > 0 and _is_zero(y[j]):
                if np.allclose(M[j], 0.0, atol=settings.ZERO_TOL):
                    raise DegenerateSliceError("forma coordenada idénticamente nula: la restricción es -inf")
                total += w
        return total
    if isinstance(child, LogAbsPoly):
        composed = compose_affine(child.poly, M, o)
        if composed.is_zero():
            raise DegenerateSliceError("el polinomio compuesto es idénticamente nulo")
        return Fraction(ord_at(composed, list(x)))
    if isinstance(child, Radial):
        if not _is_zero(np.linalg.norm(y)):
            return Fraction(0)
        if np.allclose(M, 0.0, atol=settings.ZERO_TOL):
            if child.nu_inf > 0:
                raise DegenerateSliceError("la restricción radial es idénticamente -inf")
            return Fraction(0)
        return child.nu_inf
    raise _NumericRequired(f"pullback no cubierto sobre {type(child).__name__}")


def _as_point(expr: PshExpr, point) -> np.ndarray:
    x = np.atleast_1d(np.asarray(point, dtype=complex))
    if x.shape != (expr.arity,):
        raise ExpressionInputError(f"el punto tiene aridad {x.size} y la expresión {expr.arity}", "point")
    if not np.all(np.isfinite(x)):
        raise ExpressionInputError("coordenadas no finitas en el punto", "point")
    return x


def lelong_exact(expr: PshExpr, point) -> InvariantEstimate:
    """ν(expr, point) por reglas exactas; `numeric-required` si no hay cobertura"""
    x = _as_point(expr, point)
    try:
        value = _lelong(expr, x)
    except _NumericRequired as exc:
        logger.debug(f"lelong_exact sin cobertura: {exc}")
        return InvariantEstimate.numeric_required("lelong", str(exc))
    return InvariantEstimate.exact("lelong", value, "exact-rule")


# ========================================================================
# EXPONENTE DE SINGULARIDAD EXACTO
# ========================================================================

def skoda_sandwich(nu, ambient_dim: int) -> Tuple[Value, Value]:
    """[1/ν, N/ν]; con ν = 0 el intervalo degenera en +inf"""
    nu = to_fraction(nu, "nu")
    if nu < 0:
        raise ExpressionInputError("ν debe ser >= 0", "nu")
    if ambient_dim < 1:
        raise ExpressionInputError("la dimensión ambiente debe ser >= 1", "ambient_dim")
    if nu == 0:
        return INFINITY, INFINITY
    return 1 / nu, Fraction(ambient_dim) / nu


def _lct_monomial(expr: PshExpr, x: np.ndarray) -> Optional[InvariantEstimate]:
    try:
        polyhedron = newton_polyhedron(expr)
    except ExpressionClassError:
        return None
    zeros = [j for j, xj in enumerate(x) if _is_zero(xj)]
    if not zeros:
        return InvariantEstimate.exact("lct", INFINITY, "lp", "punto fuera del lugar singular")
    sigma = polyhedron.project(zeros).diagonal_sigma()
    if sigma == 0:
        return InvariantEstimate.exact("lct", INFINITY, "lp", "σ* = 0")
    return InvariantEstimate.exact("lct", 1 / sigma, "lp", f"σ* = {sigma}")


def lct_exact(expr: PshExpr, point) -> InvariantEstimate:
    """c_x(expr) exacto o certificado por intervalo"""
    x = _as_point(expr, point)

    closed = recognize_phi_k_closed_form(expr)
    if closed is not None:
        nu, k = closed
        if _is_zero(np.linalg.norm(x[1:])):
            if nu == 0 or not _is_zero(x[0]):
                return InvariantEstimate.exact("lct", INFINITY, "closed-form", "ν(φ, z) = 0")
            return InvariantEstimate.exact("lct", Fraction(2 ** k) / nu, "closed-form",
                                           f"φ_{k} = ν·log(|z| + √(2^k−1)‖w‖)")

    if isinstance(expr, Scale):
        return lct_exact(expr.child, x).divided_by(expr.factor)

    monomial = _lct_monomial(expr, x)
    if monomial is not None:
        return monomial

    if isinstance(expr, Radial) and _is_zero(np.linalg.norm(x)):
        if expr.nu_inf == 0:
            return InvariantEstimate.exact("lct", INFINITY, "closed-form", "ν_∞ = 0")
        return InvariantEstimate.exact("lct", Fraction(expr.arity) / expr.nu_inf, "closed-form", "c = n/ν")

    phi_k = match_phi_k(expr)
    if phi_k is not None and _is_zero(np.linalg.norm(x[expr.base_arity:])):
        base, k = phi_k
        n = base.arity
        nu_est = lelong_exact(base, x[:n])
        if nu_est.known:
            nu = nu_est.value
            if nu == 0:
                return InvariantEstimate.exact("lct", INFINITY, "exact-rule", "ν(φ, z) = 0 ⇒ c = +inf")
            return InvariantEstimate.interval(
                "lct", Fraction((2 ** k - 1) * n) / nu, Fraction(2 ** k * n) / nu, "interval-certificate",
                f"cota de φ_{k} con ν = {nu}",
            )

    nu_est = lelong_exact(expr, x)
    if not nu_est.known:
        return InvariantEstimate.numeric_required("lct", nu_est.note)
    if nu_est.value == 0:
        return InvariantEstimate.exact("lct", INFINITY, "exact-rule", "ν = 0 ⇒ c = +inf")
    lo, hi = skoda_sandwich(nu_est.value, expr.arity)
    return InvariantEstimate.interval("lct", lo, hi, "interval-certificate", f"Skoda con ν = {nu_est.value}")
