"""
Labeling Documents & Run Reports

Features:
- Self-describing text document (key=value header, blank line, label rows)
- CSV export / import
- ASCII and boxed-table rendering
- RunReport serialized with orjson (sorted keys, stable layout)

Row order is always explicit: "bottom-up" lists row j = 1 first,
"top-down" lists row j = n first. Parsers never guess.
"""

from typing import Any, Dict, List, Literal, Optional

import orjson
from pydantic import BaseModel, ConfigDict, Field

from facemagic.errors import DocumentParseError
from facemagic.models import Dims, Labeling


RowOrder = Literal["bottom-up", "top-down"]
REQUIRED_HEADER = ("m", "n", "surface")
OPTIONAL_HEADER = ("S", "generator", "sequence")


# ============================================================
# Labeling Document
# ============================================================

class LabelingDocument(BaseModel):
    """A labeling plus interchange metadata."""
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    n: int = Field(ge=2)
    surface: Literal["projective"] = "projective"
    labels: List[int]
    S: Optional[int] = None
    generator: Optional[str] = None
    sequence: Optional[str] = None

    @classmethod
    def from_labeling(cls, L: Labeling, **meta: Any) -> "LabelingDocument":
        return cls(m=L.dims.m, n=L.dims.n, labels=list(L.labels), **meta)

    def to_labeling(self) -> Labeling:
        """Validate the label array as a bijection onto 1..mn."""
        return Labeling(Dims(self.m, self.n), tuple(self.labels))


def _ordered_rows(L: Labeling, order: RowOrder) -> List[tuple]:
    rows = list(L.rows())
    return rows[::-1] if order == "top-down" else rows


def render_document(doc: LabelingDocument, order: RowOrder = "bottom-up") -> str:
    """Document text; header keys in fixed order, optional keys only when set."""
    lines = [f"m={doc.m}", f"n={doc.n}", f"surface={doc.surface}"]
    for key in OPTIONAL_HEADER:
        value = getattr(doc, key)
        if value is not None:
            lines.append(f"{key}={value}")
    lines.append("")
    m = doc.m
    rows = [doc.labels[k:k + m] for k in range(0, len(doc.labels), m)]
    if order == "top-down":
        rows = rows[::-1]
    lines.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _parse_int(text: str, line: int, field: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise DocumentParseError(f"expected an integer, got {text.strip()!r}", line, field) from None


def parse_document(text: str, order: RowOrder = "bottom-up") -> LabelingDocument:
    """
    Parse a labeling document.

    Args:
        text: Document text
        order: Row order of the label block

    Returns:
        LabelingDocument (labels not yet checked for bijectivity)

    Raises:
        DocumentParseError: malformed header or label block
    """
    lines = text.splitlines()
    header: Dict[str, str] = {}
    header_lines: Dict[str, int] = {}
    idx = 0

    while idx < len(lines) and lines[idx].strip():
        raw = lines[idx].strip()
        lineno = idx + 1
        if "=" not in raw:
            raise DocumentParseError(f"expected key=value, got {raw!r}", lineno)
        key, value = (part.strip() for part in raw.split("=", 1))
        if key not in REQUIRED_HEADER + OPTIONAL_HEADER:
            raise DocumentParseError("unknown header key", lineno, key)
        if key in header:
            raise DocumentParseError("duplicate header key", lineno, key)
        header[key] = value
        header_lines[key] = lineno
        idx += 1

    for key in REQUIRED_HEADER:
        if key not in header:
            raise DocumentParseError("missing header key", idx + 1, key)

    m = _parse_int(header["m"], header_lines["m"], "m")
    n = _parse_int(header["n"], header_lines["n"], "n")
    if m < 2 or n < 2:
        raise DocumentParseError("dimensions must be at least 2", header_lines["m"], "m")
    if header["surface"] != "projective":
        raise DocumentParseError(
            f"unsupported surface {header['surface']!r}", header_lines["surface"], "surface"
        )
    S = _parse_int(header["S"], header_lines["S"], "S") if "S" in header else None

    rows: List[List[int]] = []
    for offset, raw in enumerate(lines[idx:], start=idx + 1):
        if not raw.strip():
            continue
        parts = raw.split()
        if len(parts) != m:
            raise DocumentParseError(f"expected {m} labels, got {len(parts)}", offset, "labels")
        rows.append([_parse_int(p, offset, "labels") for p in parts])

    if len(rows) != n:
        raise DocumentParseError(f"expected {n} label rows, got {len(rows)}", len(lines), "labels")
    if order == "top-down":
        rows = rows[::-1]

    return LabelingDocument(
        m=m,
        n=n,
        labels=[x for row in rows for x in row],
        S=S,
        generator=header.get("generator"),
        sequence=header.get("sequence"),
    )


# ============================================================
# Rendering
# ============================================================

def render_ascii(L: Labeling, order: RowOrder = "top-down") -> str:
    """Space-separated rows, right-aligned to the widest label."""
    width = len(str(L.dims.size))
    return "\n".join(
        " ".join(str(x).rjust(width) for x in row) for row in _ordered_rows(L, order)
    ) + "\n"


def render_table(L: Labeling, order: RowOrder = "top-down") -> str:
    """Boxed checkerboard, one cell per vertex."""
    width = len(str(L.dims.size))
    rule = "+" + "+".join("-" * (width + 2) for _ in range(L.dims.m)) + "+"
    lines = [rule]
    for row in _ordered_rows(L, order):
        lines.append("| " + " | ".join(str(x).rjust(width) for x in row) + " |")
        lines.append(rule)
    return "\n".join(lines) + "\n"


def render_csv(L: Labeling, order: RowOrder = "bottom-up") -> str:
    """n lines of m comma-separated labels, no header."""
    return "\n".join(",".join(str(x) for x in row) for row in _ordered_rows(L, order)) + "\n"


def parse_csv(text: str, order: RowOrder = "bottom-up") -> Labeling:
    rows: List[List[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        rows.append([_parse_int(p, lineno, "labels") for p in raw.split(",")])
    if not rows:
        raise DocumentParseError("no label rows", 1, "labels")
    if any(len(row) != len(rows[0]) for row in rows):
        raise DocumentParseError("rows have different lengths", None, "labels")
    if order == "top-down":
        rows = rows[::-1]
    return Labeling.from_rows(rows)


# ============================================================
# Run Report
# ============================================================

class RunReport(BaseModel):
    """Machine-readable record of one CLI command."""
    command: str
    config: Dict[str, Any] = {}
    result: Dict[str, Any] = {}
    verdict: Optional[str] = None
    timings_ms: Dict[str, float] = {}
    exit_code: int = 0


def dump_json(data: Any) -> bytes:
    """orjson with sorted keys, 2-space indent, integer keys allowed."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="python")
    return orjson.dumps(
        data,
        option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS,
    )
