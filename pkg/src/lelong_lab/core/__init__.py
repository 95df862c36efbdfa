# core/__init__.py
"""
Componentes principales de lelong-lab
"""

from .a_expressions import (
    EvalOptions,
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
    evaluate,
    evaluate_batch,
    make_phi_k,
    pullback_difference,
    restrict_to_slice,
    scale,
    tower_pullback,
)
from .b_newton import (
    InvariantEstimate,
    NewtonPolyhedron,
    lct_exact,
    lelong_exact,
    newton_polyhedron,
    ord_at,
    skoda_sandwich,
)
from .c_estimators import (
    AnnulusSchedule,
    ExponentFit,
    bisect_threshold,
    integrability_verdict,
    lct_numeric,
    lelong_numeric,
)
from .d_verify import (
    VerificationReport,
    levelset_generators,
    verify_fiber_identity,
    verify_levelset_sandwich,
    verify_levelset_structure,
    verify_pullback_lemma,
    verify_radial_identity,
    verify_restriction_monotonicity,
    verify_theorem1,
    verify_unitary_invariance,
)
from .e_report_builder import ReportBuilder

__all__ = [
    "EvalOptions",
    "LinearPullback",
    "LogAbsPoly",
    "Max",
    "MonomialLog",
    "Polynomial",
    "PshExpr",
    "Radial",
    "Scale",
    "SliceMap",
    "Sum",
    "UnitarySup",
    "evaluate",
    "evaluate_batch",
    "make_phi_k",
    "pullback_difference",
    "restrict_to_slice",
    "scale",
    "tower_pullback",
    "InvariantEstimate",
    "NewtonPolyhedron",
    "lct_exact",
    "lelong_exact",
    "newton_polyhedron",
    "ord_at",
    "skoda_sandwich",
    "AnnulusSchedule",
    "ExponentFit",
    "bisect_threshold",
    "integrability_verdict",
    "lct_numeric",
    "lelong_numeric",
    "VerificationReport",
    "levelset_generators",
    "verify_fiber_identity",
    "verify_levelset_sandwich",
    "verify_levelset_structure",
    "verify_pullback_lemma",
    "verify_radial_identity",
    "verify_restriction_monotonicity",
    "verify_theorem1",
    "verify_unitary_invariance",
    "ReportBuilder",
]
