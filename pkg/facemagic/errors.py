"""
Error hierarchy for facemagic.

Value-shaped failures (bad dimensions, bad label arrays) subclass
ValueError so callers that only know the builtin still catch them.
"""

from typing import Optional


class FaceMagicError(Exception):
    """Base class for all facemagic errors."""


class GridError(FaceMagicError, ValueError):
    """Invalid dimensions, vertex, or symmetry for a grid."""


class LabelingValidationError(FaceMagicError, ValueError):
    """A label array is not a bijection, or a labeling fails a precondition."""


class StructureViolation(LabelingValidationError):
    """A row-pair identity failed on a bicentrally balanced labeling."""

    def __init__(self, identity: str, i: int, j: int, expected: int, actual: int):
        self.identity = identity
        self.i = i
        self.j = j
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{identity} fails at column {i}, row {j}: expected {expected}, got {actual}"
        )


class PartialLabelingError(FaceMagicError, ValueError):
    """Bad arguments to a partial-labeling construction."""


class TransformError(FaceMagicError, ValueError):
    """Invalid elementary operation parameters."""


class FactorizationError(FaceMagicError, ValueError):
    """Invalid projective factorization sequence."""


class DocumentParseError(FaceMagicError):
    """Malformed labeling document, with line and field context."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
