"""
file_utils.py - Lectura y escritura de expresiones psh en JSON

Formato: árbol con campo "tag"; racionales como "p/q", complejos como [re, im].
La validación estructural la hace pydantic (uniones discriminadas), así los
errores llevan la ruta del campo.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from lelong_lab.core.a_expressions import (
    LinearPullback,
    LogAbsPoly,
    Max,
    MonomialLog,
    Polynomial,
    PshExpr,
    Radial,
    Scale,
    SliceMap,
    Sum,
    UnitarySup,
    to_fraction,
)
from lelong_lab.core.exceptions import ExpressionFormatError, ExpressionInputError

Rational = Union[int, str]
Real = Union[int, float, str]
ComplexPair = Tuple[Real, Real]


class _Node(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MonomialLogNode(_Node):
    tag: Literal["monomial_log"]
    coeff: Rational = "1/1"
    exponents: List[Rational]


class PolyTerm(_Node):
    exponents: List[int]
    coeff: ComplexPair


class LogAbsPolyNode(_Node):
    tag: Literal["log_abs_poly"]
    nvars: int
    terms: List[PolyTerm] = Field(min_length=1)


class RadialNode(_Node):
    tag: Literal["radial"]
    nvars: int
    nu_inf: Rational
    breakpoints: List[Tuple[Rational, Rational]] = []


class MaxNode(_Node):
    tag: Literal["max"]
    children: List["ExprNode"]


class SumNode(_Node):
    tag: Literal["sum"]
    children: List["ExprNode"]


class ScaleNode(_Node):
    tag: Literal["scale"]
    factor: Rational
    child: "ExprNode"


class LinearPullbackNode(_Node):
    tag: Literal["linear_pullback"]
    matrix: List[List[ComplexPair]]
    offset: Optional[List[ComplexPair]] = None
    child: "ExprNode"


class UnitarySupNode(_Node):
    tag: Literal["unitary_sup"]
    split: Tuple[int, int]
    child: "ExprNode"


ExprNode = Annotated[
    Union[
        MonomialLogNode, LogAbsPolyNode, RadialNode, MaxNode, SumNode,
        ScaleNode, LinearPullbackNode, UnitarySupNode,
    ],
    Field(discriminator="tag"),
]

for _model in (MaxNode, SumNode, ScaleNode, LinearPullbackNode, UnitarySupNode):
    _model.model_rebuild()

_EXPR_ADAPTER = TypeAdapter(ExprNode)


class SliceNode(_Node):
    base: List[ComplexPair]
    directions: List[List[ComplexPair]]


_SLICES_ADAPTER = TypeAdapter(List[SliceNode])


# ========================================================================
# CONVERSIÓN
# ========================================================================

def _real(value: Real, exact: bool):
    if isinstance(value, str):
        return to_fraction(value, "coeff") if exact else float(to_fraction(value, "coeff"))
    if isinstance(value, int) and exact:
        return Fraction(value)
    return float(value)


def _complex(pair: ComplexPair) -> complex:
    return complex(float(to_fraction(pair[0], "complex")), float(to_fraction(pair[1], "complex")))


def _build(node, path: str) -> PshExpr:
    try:
        if isinstance(node, MonomialLogNode):
            return MonomialLog(node.coeff, tuple(node.exponents))
        if isinstance(node, LogAbsPolyNode):
            exact = all(not isinstance(v, float) for t in node.terms for v in t.coeff)
            terms = tuple(
                (tuple(t.exponents), (_real(t.coeff[0], exact), _real(t.coeff[1], exact))) for t in node.terms
            )
            return LogAbsPoly(Polynomial(node.nvars, terms))
        if isinstance(node, RadialNode):
            return Radial(node.nvars, node.nu_inf, tuple(tuple(b) for b in node.breakpoints))
        if isinstance(node, MaxNode):
            return Max(tuple(_build(c, f"{path}.children[{i}]") for i, c in enumerate(node.children)))
        if isinstance(node, SumNode):
            return Sum(tuple(_build(c, f"{path}.children[{i}]") for i, c in enumerate(node.children)))
        if isinstance(node, ScaleNode):
            return Scale(node.factor, _build(node.child, f"{path}.child"))
        if isinstance(node, LinearPullbackNode):
            matrix = tuple(tuple(_complex(v) for v in row) for row in node.matrix)
            offset = None if node.offset is None else tuple(_complex(v) for v in node.offset)
            return LinearPullback(matrix, _build(node.child, f"{path}.child"), offset)
        if isinstance(node, UnitarySupNode):
            return UnitarySup(node.split[0], node.split[1], _build(node.child, f"{path}.child"))
    except ExpressionInputError as exc:
        if exc.field and exc.field.startswith("$"):
            raise  # ya viene con ruta de un hijo
        field = f"{path}.{exc.field}" if exc.field else path
        raise ExpressionInputError(str(exc.args[0]), field, code=exc.code) from exc
    raise ExpressionFormatError(f"nodo no soportado: {type(node).__name__}", path)  # pragma: no cover


def _format_error(exc: ValidationError) -> ExpressionFormatError:
    first = exc.errors()[0]
    loc = ".".join(str(p) for p in first["loc"])
    code = "unknown-tag" if first["type"] in ("union_tag_invalid", "union_tag_not_found") else "schema"
    return ExpressionFormatError(first["msg"], loc or "$", code=code)


def expr_from_dict(data: Dict[str, Any]) -> PshExpr:
    """Valida un diccionario y construye la expresión"""
    try:
        node = _EXPR_ADAPTER.validate_python(data)
    except ValidationError as exc:
        raise _format_error(exc) from exc
    return _build(node, "$")


def parse_expr_file(path: Path) -> PshExpr:
    """
    Lee un archivo JSON de expresión

    Args:
        path: Ruta al archivo

    Returns:
        PshExpr validada
    """
    path = Path(path)
    if not path.exists():
        raise ExpressionFormatError(f"no existe el archivo {path}", "path", code="missing-file")
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExpressionFormatError(
            f"JSON mal formado en línea {exc.lineno}, columna {exc.colno}: {exc.msg}", "$", code="malformed-json"
        ) from exc
    expr = expr_from_dict(data)
    logger.debug(f"expresión leída de {path.name}: aridad {expr.arity}")
    return expr


def parse_slices_file(path: Path) -> List[SliceMap]:
    """Lista de cortes afines {"base": [...], "directions": [[...]]}"""
    path = Path(path)
    if not path.exists():
        raise ExpressionFormatError(f"no existe el archivo {path}", "path", code="missing-file")
    try:
        nodes = _SLICES_ADAPTER.validate_json(path.read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise _format_error(exc) from exc
    return [
        SliceMap(tuple(_complex(v) for v in n.base), tuple(tuple(_complex(v) for v in row) for row in n.directions))
        for n in nodes
    ]


# ========================================================================
# SERIALIZACIÓN
# ========================================================================

def _rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _pair(c: complex) -> List[float]:
    c = complex(c)
    return [c.real, c.imag]


def _coeff(value) -> Union[str, float]:
    return _rational(value) if isinstance(value, Fraction) else float(value)


def expr_to_dict(expr: PshExpr) -> Dict[str, Any]:
    """Inverso de expr_from_dict"""
    if isinstance(expr, MonomialLog):
        return {"tag": "monomial_log", "coeff": _rational(expr.coeff), "exponents": [_rational(e) for e in expr.exponents]}
    if isinstance(expr, LogAbsPoly):
        return {
            "tag": "log_abs_poly",
            "nvars": expr.poly.nvars,
            "terms": [{"exponents": list(a), "coeff": [_coeff(re), _coeff(im)]} for a, (re, im) in expr.poly.terms],
        }
    if isinstance(expr, Radial):
        return {
            "tag": "radial",
            "nvars": expr.nvars,
            "nu_inf": _rational(expr.nu_inf),
            "breakpoints": [[_rational(t), _rational(v)] for t, v in expr.breakpoints],
        }
    if isinstance(expr, (Max, Sum)):
        return {"tag": "max" if isinstance(expr, Max) else "sum", "children": [expr_to_dict(c) for c in expr.children]}
    if isinstance(expr, Scale):
        return {"tag": "scale", "factor": _rational(expr.factor), "child": expr_to_dict(expr.child)}
    if isinstance(expr, LinearPullback):
        out = {
            "tag": "linear_pullback",
            "matrix": [[_pair(v) for v in row] for row in expr.matrix],
            "child": expr_to_dict(expr.child),
        }
        if expr.offset is not None:
            out["offset"] = [_pair(v) for v in expr.offset]
        return out
    if isinstance(expr, UnitarySup):
        return {"tag": "unitary_sup", "split": [expr.base_arity, expr.block_arity], "child": expr_to_dict(expr.child)}
    raise ExpressionFormatError(f"nodo no serializable: {type(expr).__name__}")


def write_expr_file(expr: PshExpr, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(expr_to_dict(expr), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"💾 Expresión guardada en {path}")
    return path
