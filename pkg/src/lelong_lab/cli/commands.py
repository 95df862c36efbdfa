"""
commands.py - Línea de comandos: lelong, lct, construct y verify

Códigos de salida: 0 todo pasa, 1 algún fallo, 2 error de uso o de entrada,
3 solo inconclusos.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError

from lelong_lab.config import settings
from lelong_lab.core import (
    AnnulusSchedule,
    EvalOptions,
    LogAbsPoly,
    Radial,
    ReportBuilder,
    bisect_threshold,
    lct_exact,
    lelong_exact,
    lelong_numeric,
    make_phi_k,
    verify_fiber_identity,
    verify_levelset_sandwich,
    verify_levelset_structure,
    verify_pullback_lemma,
    verify_radial_identity,
    verify_restriction_monotonicity,
    verify_theorem1,
    verify_unitary_invariance,
)
from lelong_lab.core.e_report_builder import EXIT_OK, EXIT_USAGE
from lelong_lab.core.exceptions import ExpressionInputError, LelongLabError
from lelong_lab.utils.file_utils import parse_expr_file, parse_slices_file, write_expr_file
from lelong_lab.utils.logger import setup_logging

VERIFY_TARGETS = ("thm1", "restriction", "radial", "sandwich", "levelset", "fiber", "pullback", "unitary")


class RunConfig(BaseModel):
    """Parámetros de una ejecución de la CLI"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    target: Optional[str] = None
    expr_path: Optional[Path] = None
    points: List[List[complex]] = []
    k: int = 1
    c: Optional[str] = None
    split: Optional[int] = None
    r0: Optional[float] = None
    annuli: Optional[int] = None
    samples: Optional[int] = None
    seed: int = settings.SEED
    tol: Optional[float] = None
    out: Optional[Path] = None
    csv: Optional[Path] = None
    slices_path: Optional[Path] = None
    shells: Optional[str] = None
    sampled: bool = False
    no_timestamp: bool = False
    log_level: str = settings.LOG_LEVEL

    @property
    def schedule(self) -> AnnulusSchedule:
        return AnnulusSchedule.from_settings(
            r0=self.r0, annuli=self.annuli, samples_per_annulus=self.samples, seed=self.seed, geometry=self.shells,
        )

    @property
    def eval_options(self) -> EvalOptions:
        return EvalOptions.from_settings(seed=self.seed)

    @property
    def metadata(self) -> Dict[str, Any]:
        return {
            "expr": None if self.expr_path is None else self.expr_path.name,
            "seed": self.seed,
            "k": self.k,
            "c": self.c,
            "tol": self.tol if self.tol is not None else settings.LCT_TOL,
            "schedule": self.schedule.model_dump(),
        }


# ========================================================================
# PARSEO
# ========================================================================

def parse_point(text: str) -> List[complex]:
    """"0.5:0.1,0" → [0.5+0.1j, 0]"""
    coords = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ExpressionInputError(f"coordenada vacía en '{text}'", "point")
        re, _, im = part.partition(":")
        try:
            coords.append(complex(float(re), float(im) if im else 0.0))
        except ValueError as exc:
            raise ExpressionInputError(f"coordenada inválida '{part}'", "point") from exc
    return coords


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lelong-lab",
        description="Números de Lelong y exponentes de singularidad de funciones psh estructuradas",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--expr", type=Path, required=True, help="archivo JSON de la expresión")
    common.add_argument("--point", action="append", default=[], help="punto: re:im separados por comas")
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--c", type=str, default=None, help="nivel o exponente (racional p/q o decimal)")
    common.add_argument("--split", type=int, default=None, help="aridad de la base para verify unitary")
    common.add_argument("--r0", type=float, default=None)
    common.add_argument("--annuli", type=int, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--seed", type=int, default=settings.SEED)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--csv", type=Path, default=None)
    common.add_argument("--slices", type=Path, default=None, help="JSON con cortes afines")
    common.add_argument("--shells", choices=("auto", "euclidean", "toric"), default=None)
    common.add_argument("--sampled", action="store_true", help="permite sup unitario muestreado (m > 1)")
    common.add_argument("--no-timestamp", action="store_true")
    common.add_argument("--log-level", default=settings.LOG_LEVEL)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lelong", parents=[common], help="número de Lelong exacto y numérico")
    sub.add_parser("lct", parents=[common], help="exponente de singularidad exacto y numérico")
    sub.add_parser("construct", parents=[common], help="escribe la expresión φ_k")
    verify = sub.add_parser("verify", parents=[common], help="harnesses de verificación")
    verify.add_argument("target", choices=VERIFY_TARGETS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        target=getattr(args, "target", None),
        expr_path=args.expr,
        points=[parse_point(p) for p in args.point],
        k=args.k,
        c=args.c,
        split=args.split,
        r0=args.r0,
        annuli=args.annuli,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        out=args.out,
        csv=args.csv,
        slices_path=args.slices,
        shells=args.shells,
        sampled=args.sampled,
        no_timestamp=args.no_timestamp,
        log_level=args.log_level,
    )


# ========================================================================
# DESPACHO
# ========================================================================

def _points(config: RunConfig, arity: int) -> List[np.ndarray]:
    if not config.points:
        return [np.zeros(arity, dtype=complex)]
    points = [np.asarray(p, dtype=complex) for p in config.points]
    for p in points:
        if p.size != arity:
            raise ExpressionInputError(f"el punto tiene aridad {p.size} y la expresión {arity}", "point")
    return points


def _require_c(config: RunConfig) -> str:
    if config.c is None:
        raise ExpressionInputError(f"verify {config.target} necesita --c", "c")
    return config.c


def _emit(config: RunConfig, command: str, payload: Dict[str, Any]) -> None:
    document = ReportBuilder.build_report_dict(command, payload, config.metadata, timestamp=not config.no_timestamp)
    text = ReportBuilder.write_json(document, config.out)
    if config.out is None:
        print(text, end="")


def _run_lelong(config: RunConfig) -> int:
    expr = parse_expr_file(config.expr_path)
    results = []
    for x in _points(config, expr.arity):
        exact = lelong_exact(expr, x)
        numeric = lelong_numeric(expr, x, config.schedule, config.eval_options)
        logger.info(f"📏 ν en {x.tolist()}: exacto {exact.to_dict()['value']}, numérico {numeric.value:.4f}")
        results.append({"point": [[c.real, c.imag] for c in x], **ReportBuilder.estimate_entries(
            {"exact": exact, "numeric": numeric})})
    _emit(config, "lelong", {"results": results})
    return EXIT_OK


def _run_lct(config: RunConfig) -> int:
    expr = parse_expr_file(config.expr_path)
    results, last_fit = [], None
    for x in _points(config, expr.arity):
        exact = lct_exact(expr, x)
        search = bisect_threshold(expr, x, tol=config.tol, schedule=config.schedule, opts=config.eval_options)
        numeric = search.estimate
        if numeric.midpoint is not None:
            last_fit = search.fit_closest(numeric.midpoint)
        results.append({"point": [[c.real, c.imag] for c in x], **ReportBuilder.estimate_entries(
            {"exact": exact, "numeric": numeric})})
    _emit(config, "lct", {"results": results})
    ReportBuilder.write_csv(last_fit, config.csv)
    return EXIT_OK


def _run_construct(config: RunConfig) -> int:
    expr = parse_expr_file(config.expr_path)
    phi_k = make_phi_k(expr, config.k)
    if config.out is None:
        raise ExpressionInputError("construct necesita --out", "out")
    write_expr_file(phi_k, config.out)
    return EXIT_OK


def _run_verify(config: RunConfig) -> int:
    target = config.target
    schedule, opts = config.schedule, config.eval_options
    if target == "levelset":
        expr = parse_expr_file(config.expr_path)
        if not isinstance(expr, LogAbsPoly):
            raise ExpressionInputError("verify levelset necesita una expresión log_abs_poly", "expr")
        points = config.points
        if not points:
            rng = np.random.default_rng(np.random.SeedSequence(entropy=config.seed, spawn_key=(0x4C53,)))
            raw = rng.standard_normal((200, expr.arity)) + 1j * rng.standard_normal((200, expr.arity))
            points = [np.zeros(expr.arity, dtype=complex)] + list(raw)
        reports = [verify_levelset_structure(expr.poly, _require_c(config), points, seed=config.seed)]
    else:
        expr = parse_expr_file(config.expr_path)
        if target == "thm1":
            reports = verify_theorem1(expr, config.k, _points(config, expr.arity), schedule, opts, config.sampled)
        elif target == "restriction":
            if config.slices_path is None:
                raise ExpressionInputError("verify restriction necesita --slices", "slices")
            slices = parse_slices_file(config.slices_path)
            reports = verify_restriction_monotonicity(expr, slices, _points(config, expr.arity)[0], schedule, opts)
        elif target == "radial":
            if not isinstance(expr, Radial):
                raise ExpressionInputError("verify radial necesita una expresión radial", "expr")
            reports = [verify_radial_identity(expr, schedule, opts)]
        elif target == "sandwich":
            reports = verify_levelset_sandwich(
                expr, _require_c(config), config.k, _points(config, expr.arity), schedule, opts, config.sampled
            )
        elif target == "fiber":
            reports = verify_fiber_identity(expr, config.k, _points(config, expr.arity), schedule, opts, config.sampled)
        elif target == "pullback":
            reports = verify_pullback_lemma(expr, _points(config, expr.arity), schedule, opts)
        else:
            if config.split is None:
                raise ExpressionInputError("verify unitary necesita --split", "split")
            base_points = [p[: config.split] for p in _points(config, expr.arity)]
            reports = verify_unitary_invariance(expr, config.split, base_points, schedule, opts)

    summary = ReportBuilder.summary(reports)
    logger.info(f"✅ {summary['pass']} pass, ❌ {summary['fail']} fail, ❔ {summary['inconclusive']} inconclusos")
    _emit(config, f"verify {target}", {
        "summary": summary,
        "reports": ReportBuilder.report_entries(reports, timestamp=not config.no_timestamp),
    })
    return ReportBuilder.exit_code(reports)


def dispatch(config: RunConfig) -> int:
    """Ejecuta el subcomando y devuelve el código de salida"""
    handlers = {"lelong": _run_lelong, "lct": _run_lct, "construct": _run_construct, "verify": _run_verify}
    try:
        return handlers[config.command](config)
    except (LelongLabError, ValidationError, OSError) as exc:
        logger.error(f"❌ {exc}")
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    setup_logging(args.log_level, settings.LOG_FILE)
    try:
        config = config_from_args(args)
    except (LelongLabError, ValidationError) as exc:
        logger.error(f"❌ {exc}")
        return EXIT_USAGE
    settings.validate_schedule()
    return dispatch(config)


if __name__ == "__main__":
    sys.exit(main())
