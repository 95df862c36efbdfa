"""
Construcción y escritura de reportes JSON y diagnósticos CSV
"""
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from lelong_lab import __version__
from lelong_lab.core.b_newton import InvariantEstimate
from lelong_lab.core.c_estimators import ExponentFit
from lelong_lab.core.d_verify import VerificationReport

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class ReportBuilder:
    """Constructor de reportes con orden estable y marca de tiempo opcional"""

    @staticmethod
    def sort_reports(reports: Sequence[VerificationReport]) -> List[VerificationReport]:
        return sorted(reports, key=lambda r: r.sort_key)

    @staticmethod
    def report_entries(reports: Sequence[VerificationReport], timestamp: bool = True) -> List[Dict[str, Any]]:
        """
        Serializa los reportes de verificación

        Args:
            reports: Reportes de los harnesses
            timestamp: Si es False se omiten los tiempos de ejecución

        Returns:
            Lista de diccionarios ordenada por (statement, instance)
        """
        exclude = None if timestamp else {"runtime_s"}
        return [r.model_dump(mode="json", exclude=exclude) for r in ReportBuilder.sort_reports(reports)]

    @staticmethod
    def estimate_entries(estimates: Dict[str, Optional[InvariantEstimate]]) -> Dict[str, Any]:
        return {name: (est.to_dict() if est is not None else None) for name, est in sorted(estimates.items())}

    @staticmethod
    def build_report_dict(
        command: str,
        payload: Dict[str, Any],
        metadata: Dict[str, Any],
        timestamp: bool = True,
    ) -> Dict[str, Any]:
        """
        Construye el documento completo del reporte

        Args:
            command: Subcomando que lo generó
            payload: Resultados (estimaciones o reportes)
            metadata: Semilla, calendario y demás parámetros

        Returns:
            Diccionario listo para volcar a JSON
        """
        document = {
            "command": command,
            "version": __version__,
            "metadata": dict(sorted(metadata.items())),
            **payload,
        }
        if timestamp:
            document["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return document

    @staticmethod
    def write_json(document: Dict[str, Any], path: Optional[Path]) -> str:
        text = json.dumps(document, indent=2, ensure_ascii=False, allow_nan=True) + "\n"
        if path is not None:
            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            logger.info(f"💾 Reporte guardado en {path}")
        return text

    @staticmethod
    def write_csv(fit: Optional[ExponentFit], path: Optional[Path]) -> Optional[Path]:
        if path is None:
            return None
        if fit is None:
            logger.warning("⚠️ no hay ajuste de capas que volcar a CSV")
            return None
        out = fit.to_csv(path)
        logger.info(f"📊 Ajuste (c={fit.c:.4f}) guardado en {out}")
        return out

    @staticmethod
    def exit_code(reports: Sequence[VerificationReport]) -> int:
        """0 todo pasa, 1 algún fallo, 3 solo inconclusos además de los pass"""
        verdicts = {r.verdict for r in reports}
        if "fail" in verdicts:
            return EXIT_FAIL
        if "inconclusive" in verdicts:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    @staticmethod
    def summary(reports: Sequence[VerificationReport]) -> Dict[str, int]:
        counts = {"pass": 0, "fail": 0, "inconclusive": 0}
        for r in reports:
            counts[r.verdict] += 1
        return counts
