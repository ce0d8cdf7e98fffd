"""
Domain value types for projective grid labelings.

Coordinates follow the (column, row) convention: vertex (i, j) sits in
column i (1..m) and row j (1..n). Label arrays are row-major with row
j = 1 first, so x_{i,j} lives at index (j-1)*m + (i-1).

All types are frozen; they are shared freely between search workers.
"""

import operator
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Literal, Optional, Sequence, Tuple

import numpy as np

from facemagic.errors import FactorizationError, GridError, LabelingValidationError, PartialLabelingError


# ============================================================
# Grid Types
# ============================================================

@dataclass(frozen=True, order=True)
class Dims:
    """Grid dimensions (m columns, n rows)."""
    m: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise GridError(f"Dimensions must be integers, got ({self.m!r}, {self.n!r})")
        if self.m < 2 or self.n < 2:
            raise GridError(f"Dimensions must be at least 2, got ({self.m}, {self.n})")

    @property
    def size(self) -> int:
        return self.m * self.n

    @property
    def is_odd(self) -> bool:
        return self.m % 2 == 1 and self.n % 2 == 1

    @property
    def is_even(self) -> bool:
        return self.m % 2 == 0 and self.n % 2 == 0

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    @property
    def m0(self) -> int:
        if self.m % 2 == 0:
            raise GridError(f"m0 is defined only for odd m, got m={self.m}")
        return (self.m - 1) // 2

    @property
    def n0(self) -> int:
        if self.n % 2 == 0:
            raise GridError(f"n0 is defined only for odd n, got n={self.n}")
        return (self.n - 1) // 2

    @property
    def m0p(self) -> int:
        return self.m0 + 1

    @property
    def n0p(self) -> int:
        return self.n0 + 1

    def require_odd(self) -> None:
        """Raise GridError unless both dimensions are odd."""
        if not self.is_odd:
            raise GridError(f"Operation needs odd dimensions, got {self.m}x{self.n}")

    def index(self, i: int, j: int) -> int:
        """Row-major index of vertex (i, j)."""
        return (j - 1) * self.m + (i - 1)

    def transposed(self) -> "Dims":
        return Dims(self.n, self.m)

    def __str__(self) -> str:
        return f"{self.m}x{self.n}"


@dataclass(frozen=True, order=True)
class Vertex:
    """Vertex (i, j): column i, row j, both 1-based."""
    i: int
    j: int

    def parity(self) -> int:
        """0 for even i+j, 1 for odd."""
        return (self.i + self.j) % 2


@dataclass(frozen=True)
class QuadFace:
    """A quadrilateral face, vertices in cyclic order."""
    vertices: Tuple[Vertex, Vertex, Vertex, Vertex]
    family: Literal["interior", "right-left", "top-bottom"] = "interior"


@dataclass(frozen=True)
class Digon:
    """A digon face formed by a doubled corner edge."""
    vertices: Tuple[Vertex, Vertex]


class Symmetry(str, Enum):
    """Symmetries of the projective grid induced by plane isometries."""
    R0 = "R0"
    R90 = "R90"
    R180 = "R180"
    R270 = "R270"
    H = "H"
    V = "V"
    D_PLUS = "D+"
    D_MINUS = "D-"

    @classmethod
    def parse(cls, tag: str) -> "Symmetry":
        """Parse a tag, accepting the unicode minus sign for D-."""
        try:
            return cls(tag.strip().replace("−", "-"))
        except ValueError:
            raise GridError(f"Unknown symmetry: {tag}") from None

    @property
    def square_only(self) -> bool:
        return self in (Symmetry.R90, Symmetry.R270, Symmetry.D_PLUS, Symmetry.D_MINUS)


# ============================================================
# Labelings
# ============================================================

def _integer_labels(values: Sequence[object], error: type) -> Tuple[int, ...]:
    """Labels as plain ints; floats and strings are rejected, not truncated."""
    out = []
    for x in values:
        try:
            out.append(operator.index(x))  # type: ignore[arg-type]
        except TypeError:
            raise error(f"label {x!r} is not an integer") from None
    return tuple(out)


def _label_problems(labels: Sequence[int], size: int) -> Optional[str]:
    """Describe the first bijection failure, or None."""
    if len(labels) != size:
        return f"expected {size} labels, got {len(labels)}"
    out_of_range = [x for x in labels if not 1 <= x <= size]
    if out_of_range:
        return f"label {out_of_range[0]} is outside 1..{size}"
    duplicates = sorted(x for x, c in Counter(labels).items() if c > 1)
    if duplicates:
        return f"label {duplicates[0]} is duplicated"
    return None


@dataclass(frozen=True)
class Labeling:
    """A bijection from the m x n vertex grid onto {1, ..., mn}, row-major."""
    dims: Dims
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", _integer_labels(self.labels, LabelingValidationError))
        problem = _label_problems(self.labels, self.dims.size)
        if problem:
            raise LabelingValidationError(f"Not a labeling of {self.dims}: {problem}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Labeling":
        """Build from rows listed j = 1 first, each row holding columns 1..m."""
        if not rows or not rows[0]:
            raise LabelingValidationError("Empty label grid")
        m = len(rows[0])
        if any(len(row) != m for row in rows):
            raise LabelingValidationError("Rows have different lengths")
        return cls(Dims(m, len(rows)), tuple(x for row in rows for x in row))

    @classmethod
    def from_grid(cls, dims: Dims, grid: np.ndarray) -> "Labeling":
        """Build from an (n, m) array indexed grid[j-1, i-1]."""
        return cls(dims, tuple(np.asarray(grid).reshape(-1).tolist()))

    def x(self, i: int, j: int) -> int:
        """Label at vertex (i, j)."""
        return self.labels[(j - 1) * self.dims.m + (i - 1)]

    @cached_property
    def grid(self) -> np.ndarray:
        """Read-only (n, m) view: grid[j-1, i-1] = x_{i,j}."""
        arr = np.array(self.labels, dtype=np.int64).reshape(self.dims.n, self.dims.m)
        arr.setflags(write=False)
        return arr

    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        """Rows j = 1..n, each as columns 1..m."""
        m = self.dims.m
        return tuple(self.labels[k:k + m] for k in range(0, len(self.labels), m))


@dataclass(frozen=True)
class PartialLabeling:
    """
    Labeling of an m x n subgrid inside an ambient M x N projective grid.

    Labels are drawn from {1..MN}: low labels on even cells, high labels on
    odd cells. Row-major over the subgrid, row j = 1 first.
    """
    ambient: Dims
    sub: Dims
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", _integer_labels(self.labels, PartialLabelingError))
        if self.sub.m > self.ambient.m or self.sub.n > self.ambient.n:
            raise PartialLabelingError(f"Subgrid {self.sub} does not fit in {self.ambient}")
        if len(self.labels) != self.sub.size:
            raise PartialLabelingError(
                f"Expected {self.sub.size} labels for {self.sub}, got {len(self.labels)}"
            )
        top = self.ambient.size
        bad = [x for x in self.labels if not 1 <= x <= top]
        if bad:
            raise PartialLabelingError(f"Label {bad[0]} is outside 1..{top}")

    def x(self, i: int, j: int) -> int:
        return self.labels[(j - 1) * self.sub.m + (i - 1)]

    @cached_property
    def grid(self) -> np.ndarray:
        arr = np.array(self.labels, dtype=np.int64).reshape(self.sub.n, self.sub.m)
        arr.setflags(write=False)
        return arr

    def is_complete(self) -> bool:
        """True when the subgrid is the whole ambient grid."""
        return self.sub == self.ambient

    def to_labeling(self) -> Labeling:
        if not self.is_complete():
            raise PartialLabelingError(
                f"Subgrid {self.sub} does not cover the ambient grid {self.ambient}"
            )
        return Labeling(self.ambient, self.labels)


# ============================================================
# Factorization Sequences
# ============================================================

Orientation = Literal["horizontal", "vertical"]


@dataclass(frozen=True)
class FactorizationSequence:
    """
    Projective factorization sequence (f1, g1, f2, g2, ..., fk, gk).

    Horizontal: prod(f) = m and prod(g) = n.
    Vertical:   prod(f) = n and prod(g) = m.
    A trailing gk = 1 encodes an odd-length sequence.
    """
    orientation: Orientation
    factors: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(int(x) for x in self.factors))
        if self.orientation not in ("horizontal", "vertical"):
            raise FactorizationError(f"Unknown orientation: {self.orientation}")
        f = self.factors
        if len(f) < 2 or len(f) % 2:
            raise FactorizationError(f"Sequence needs an even number (>= 2) of entries, got {f}")
        for pos, value in enumerate(f):
            if value % 2 == 0:
                raise FactorizationError(f"Entry {value} at position {pos + 1} is even")
            last = pos == len(f) - 1
            if value < 3 and not (last and value == 1 and len(f) >= 4):
                raise FactorizationError(
                    f"Entry {value} at position {pos + 1} must exceed 1 "
                    "(only a trailing 1 is allowed, after at least one full pair)"
                )

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Consecutive (f, g) pairs."""
        f = self.factors
        return tuple((f[k], f[k + 1]) for k in range(0, len(f), 2))

    @property
    def dims(self) -> Dims:
        """The grid (m, n) this sequence builds."""
        prod_f = int(np.prod(self.factors[0::2]))
        prod_g = int(np.prod(self.factors[1::2]))
        dims = Dims(prod_f, prod_g)
        return dims if self.orientation == "horizontal" else dims.transposed()

    @classmethod
    def parse(cls, orientation: Orientation, text: str) -> "FactorizationSequence":
        """Parse a comma-separated sequence such as '3,3,3,1'."""
        try:
            values = tuple(int(part) for part in text.split(",") if part.strip())
        except ValueError:
            raise FactorizationError(f"Sequence must be comma-separated integers: {text!r}") from None
        return cls(orientation, values)

    def __str__(self) -> str:
        return f"{self.orientation}({','.join(map(str, self.factors))})"
