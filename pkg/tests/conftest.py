# tests/conftest.py
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add src to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root / "src"))

from lelong_lab.core import AnnulusSchedule, EvalOptions, Max, MonomialLog, Sum  # noqa: E402

SEED = 20240611


@pytest.fixture
def data_dir() -> Path:
    return project_root / "data" / "expressions"


@pytest.fixture
def fast_schedule() -> AnnulusSchedule:
    """Calendario reducido: suficiente para veredictos claros en pocos segundos"""
    return AnnulusSchedule(r0=0.5, annuli=10, samples_per_annulus=2048, seed=SEED, groups=16)


@pytest.fixture
def opts() -> EvalOptions:
    return EvalOptions(seed=SEED, circle_grid=128)


def monomial(*exponents, coeff=1) -> MonomialLog:
    return MonomialLog(Fraction(coeff), tuple(Fraction(e) for e in exponents))


# (expresión, lelong en el origen, lct en el origen)
MONOMIAL_CORPUS = [
    (monomial(1), Fraction(1), Fraction(1)),
    (monomial(2), Fraction(2), Fraction(1, 2)),
    (monomial(3), Fraction(3), Fraction(1, 3)),
    (monomial(1, coeff=Fraction(3, 2)), Fraction(3, 2), Fraction(2, 3)),
    (monomial(2, 1), Fraction(3), Fraction(1, 2)),
    (monomial(1, 1), Fraction(2), Fraction(1)),
    (monomial(1, 2), Fraction(3), Fraction(1, 2)),
    (monomial(3, 1), Fraction(4), Fraction(1, 3)),
    (Max((monomial(2, 1), monomial(0, 3))), Fraction(3), Fraction(2, 3)),
    (Max((monomial(1, 0), monomial(0, 1))), Fraction(1), Fraction(2)),
    (Max((monomial(2, 0), monomial(0, 2))), Fraction(2), Fraction(1)),
    (Sum((monomial(1, 0), monomial(0, 1))), Fraction(2), Fraction(1)),
]


@pytest.fixture(params=range(len(MONOMIAL_CORPUS)), ids=lambda i: f"monomial-{i:02d}")
def monomial_case(request):
    return MONOMIAL_CORPUS[request.param]
