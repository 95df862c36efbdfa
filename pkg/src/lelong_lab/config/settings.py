from pathlib import Path
from typing import Dict, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Config(BaseSettings):
    """Configuración de la aplicación"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # ========== RUTAS BASE ==========
    BASE_DIR: Path = Path(__file__).resolve().parents[3]
    DATA_DIR: Path = BASE_DIR / "data"
    EXPRESSIONS_DIR: Path = DATA_DIR / "expressions"
    SCHEMA_PATH: Path = BASE_DIR / "schemas" / "psh_expr.schema.json"

    # ========== DETERMINISMO ==========
    SEED: int = 20240611

    # ========== EVALUACIÓN ==========
    UNITARY_SAMPLES: int = 256
    CIRCLE_GRID: int = 256
    CIRCLE_REFINE_TOL: float = 1e-10
    CIRCLE_REFINE_ITERS: int = 80
    MAX_REAL_DIMS: int = 64
    DEGENERATE_SAMPLES: int = 50
    ZERO_TOL: float = 1e-12

    # ========== ANILLOS DIÁDICOS ==========
    ANNULUS_R0: float = 0.5
    ANNULUS_COUNT: int = 12
    SAMPLES_PER_ANNULUS: int = 4096
    MOM_GROUPS: int = 16
    SLOPE_EPSILON: float = 0.15
    MAX_REL_STDERR: float = 0.30
    MIN_FIT_ANNULI: int = 5
    CLAMP_CAP: float = 1e300
    SHELL_GEOMETRY: str = "auto"
    EUCLIDEAN_SHELL_MARGIN: float = 1.25

    # ========== ESTIMADORES ==========
    LELONG_GRID_TERM: float = 0.01
    LELONG_MAX_RESIDUAL: float = 0.25
    LCT_TOL: float = 0.02
    LCT_MAX_STEPS: int = 40
    LCT_BRACKET_FLOOR: float = 0.01
    LCT_BRACKET_CAP: float = 64.0

    # ========== TOLERANCIAS ==========
    ORD_REL_TOL: float = 1e-12
    LEVELSET_REL_TOL: float = 1e-10
    IDENTITY_REL_TOL: float = 1e-9
    LELONG_TOL: float = 0.1
    LCT_SLACK: float = 0.05

    # ========== EJECUCIÓN ==========
    MAX_WORKERS: int = 1

    # ========== LOGGING ==========
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[Path] = None

    @property
    def schedule_defaults(self) -> Dict:
        """Parámetros por defecto de AnnulusSchedule"""
        return {
            "r0": self.ANNULUS_R0,
            "annuli": self.ANNULUS_COUNT,
            "samples_per_annulus": self.SAMPLES_PER_ANNULUS,
            "seed": self.SEED,
            "groups": self.MOM_GROUPS,
            "geometry": self.SHELL_GEOMETRY,
        }

    @property
    def eval_defaults(self) -> Dict:
        """Parámetros por defecto de EvalOptions"""
        return {
            "seed": self.SEED,
            "unitary_samples": self.UNITARY_SAMPLES,
            "exact_circle": True,
            "circle_grid": self.CIRCLE_GRID,
            "refine_tol": self.CIRCLE_REFINE_TOL,
            "refine_iters": self.CIRCLE_REFINE_ITERS,
        }

    def validate_schedule(self) -> bool:
        """Valida coherencia de la configuración de muestreo"""
        from loguru import logger

        ok = True
        if self.SAMPLES_PER_ANNULUS % self.MOM_GROUPS != 0:
            logger.warning("⚠️ SAMPLES_PER_ANNULUS no es múltiplo de MOM_GROUPS:")
            logger.warning(f"   Muestras: {self.SAMPLES_PER_ANNULUS}, grupos: {self.MOM_GROUPS}")
            logger.warning("   Se descartan las muestras sobrantes de cada anillo")
            ok = False
        if self.MIN_FIT_ANNULI > self.ANNULUS_COUNT:
            logger.warning("⚠️ MIN_FIT_ANNULI supera ANNULUS_COUNT: todos los veredictos serán inconclusos")
            ok = False
        return ok


# Instancia global
settings = Config()
