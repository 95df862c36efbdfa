"""
exceptions.py - Errores del dominio con código estable para la CLI
"""
from typing import Optional


class LelongLabError(Exception):
    """Error base; `code` identifica el tipo de fallo en reportes y CLI"""

    code = "error"

    def __init__(self, message: str, field: Optional[str] = None, code: Optional[str] = None):
        super().__init__(message)
        self.field = field
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        base = super().__str__()
        return f"[{self.code}] {base}" + (f" (campo: {self.field})" if self.field else "")


class ExpressionInputError(LelongLabError, ValueError):
    code = "input"


class ExpressionFormatError(LelongLabError, ValueError):
    code = "format"


class ExpressionClassError(LelongLabError):
    code = "class"


class CapacityError(LelongLabError):
    code = "capacity"


class DegenerateSliceError(LelongLabError):
    code = "degenerate-slice"


class DegenerateSampleError(LelongLabError):
    code = "degenerate"


class BracketError(LelongLabError):
    code = "bracket"
