"""
Labeling Verification & Classification

Features:
- C4-face-magic verification with digon sums and value classes
- Order-plus-one complement
- Bicentral balance, center label and row-pair structure checks
- Standard-form predicate
- Symmetry action, orbits and canonical forms
"""

import random
from dataclasses import dataclass
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from facemagic.errors import GridError, LabelingValidationError, StructureViolation
from facemagic.models import Dims, Labeling, Symmetry, Vertex
from facemagic.services import grid


ValueClass = Literal["S_minus", "S_mid", "S_plus", "other"]

# Face sums listed in a failing MagicReport
FACE_SUM_REPORT_CAP = 16


# ============================================================
# Report Types
# ============================================================

class MagicReport(BaseModel):
    """Outcome of verify()."""
    model_config = ConfigDict(frozen=True)

    is_magic: bool
    S: Optional[int] = None
    D1: int
    D2: int
    value_class: ValueClass
    lemma_consistent: Optional[bool] = None  # None when not magic
    face_sums: List[int] = []  # distinct sums when not magic, capped


@dataclass(frozen=True)
class PairTargets:
    """Antipodal pair-sum targets of a bicentrally balanced labeling."""
    dims: Dims
    S_even: int
    S_odd: int

    def at(self, v: Vertex) -> int:
        return self.S_even if v.parity() == 0 else self.S_odd


# ============================================================
# Magic Verification
# ============================================================

def face_sums(L: Labeling) -> List[int]:
    """Every quad-face sum, in grid.c4_faces order."""
    x = L.labels
    return [x[a] + x[b] + x[c] + x[d] for a, b, c, d in grid.face_index_table(L.dims)]


def magic_value(L: Labeling) -> Optional[int]:
    """The common face sum, or None when L is not magic."""
    sums = face_sums(L)
    first = sums[0]
    return first if all(s == first for s in sums) else None


def digon_sums(L: Labeling) -> Tuple[int, int]:
    """(D1, D2) = (x11 + xmn, xm1 + x1n)."""
    m, n = L.dims.m, L.dims.n
    return L.x(1, 1) + L.x(m, n), L.x(m, 1) + L.x(1, n)


def admissible_values(dims: Dims) -> Tuple[int, ...]:
    """Magic values a labeling of P(m,n) can have."""
    mn = dims.size
    if dims.is_odd:
        return (2 * mn + 1, 2 * mn + 2, 2 * mn + 3)
    if dims.is_even:
        return (2 * mn + 2,)
    return ()


def classify_value(dims: Dims, S: Optional[int]) -> ValueClass:
    if S is None:
        return "other"
    mn = dims.size
    if dims.is_odd:
        return {2 * mn + 1: "S_minus", 2 * mn + 2: "S_mid", 2 * mn + 3: "S_plus"}.get(S, "other")  # type: ignore[return-value]
    if dims.is_even and S == 2 * mn + 2:
        return "S_mid"
    return "other"


def digon_targets(dims: Dims, S: int) -> Optional[Tuple[int, int]]:
    """The (D1, D2) an odd grid must show for magic value S, or None if S is impossible."""
    if not dims.is_odd:
        return None
    mn = dims.size
    table = {
        2 * mn + 1: ((3 * mn + 1) // 2, (3 * mn + 1) // 2),
        2 * mn + 2: (mn + 1, mn + 1),
        2 * mn + 3: ((mn + 3) // 2, (mn + 3) // 2),
    }
    return table.get(S)


def verify(L: Labeling) -> MagicReport:
    """
    Check the C4-face-magic property and classify the result.

    Args:
        L: A labeling (bijectivity is enforced when the Labeling is built)

    Returns:
        MagicReport with S, digon sums and value class
    """
    dims = L.dims
    sums = face_sums(L)
    D1, D2 = digon_sums(L)
    magic = all(s == sums[0] for s in sums)

    if not magic:
        return MagicReport(
            is_magic=False,
            D1=D1,
            D2=D2,
            value_class="other",
            face_sums=sorted(set(sums))[:FACE_SUM_REPORT_CAP],
        )

    S = sums[0]
    if dims.is_odd:
        consistent = digon_targets(dims, S) == (D1, D2)
    else:
        consistent = dims.is_even and S == 2 * dims.size + 2

    return MagicReport(
        is_magic=True,
        S=S,
        D1=D1,
        D2=D2,
        value_class=classify_value(dims, S),
        lemma_consistent=consistent,
    )


# ============================================================
# Complement
# ============================================================

def complement(L: Labeling) -> Labeling:
    """y = mn + 1 - x at every vertex; maps magic value S to 4mn + 4 - S."""
    top = L.dims.size + 1
    return Labeling(L.dims, tuple(top - x for x in L.labels))


# ============================================================
# Bicentral Balance
# ============================================================

def pair_targets(dims: Dims) -> PairTargets:
    if not dims.is_odd:
        raise GridError(f"Pair targets need odd dimensions, got {dims}")
    mn = dims.size
    return PairTargets(dims, (mn + 3) // 2, (3 * mn + 3) // 2)


def target_pair_sum(dims: Dims, v: Vertex) -> int:
    """S(i,j): (mn+3)/2 when i+j is even, (3mn+3)/2 when odd."""
    grid.check_vertex(dims, v)
    return pair_targets(dims).at(v)


def is_bicentrally_balanced(L: Labeling) -> bool:
    """x_{i,j} + x_{m+1-i,n+1-j} = S(i,j) at every vertex."""
    targets = pair_targets(L.dims)
    m, n = L.dims.m, L.dims.n
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            want = targets.S_even if (i + j) % 2 == 0 else targets.S_odd
            if L.x(i, j) + L.x(m + 1 - i, n + 1 - j) != want:
                return False
    return True


def center_label(L: Labeling) -> int:
    c = grid.center(L.dims)
    return L.x(c.i, c.j)


def expected_center_label(dims: Dims) -> int:
    """Center of a bicentrally balanced labeling: (mn+3)/4 or (3mn+3)/4 by parity of m0+n0+2."""
    return target_pair_sum(dims, grid.center(dims)) // 2


def require_bicentral_magic(L: Labeling) -> int:
    """Return S, or raise unless L is bicentrally balanced magic."""
    L.dims.require_odd()
    S = magic_value(L)
    if S is None:
        raise LabelingValidationError("Labeling is not C4-face-magic")
    if not is_bicentrally_balanced(L):
        raise LabelingValidationError(f"Labeling with magic value {S} is not bicentrally balanced")
    return S


def row_pair_sums(L: Labeling) -> List[int]:
    """
    Row-pair sums a_j = x_{1,j} + x_{1,j+1} for j = 1..n0.

    Also checks the structure identities for every column i:
    x_{i,j} + x_{i,j+1} is a_j for odd i and S - a_j for even i, and
    x_{i,n+1-j} + x_{i,n-j} is the other of the two.

    Raises:
        StructureViolation: first failing identity
        LabelingValidationError: L is not bicentrally balanced magic
    """
    S = require_bicentral_magic(L)
    m, n = L.dims.m, L.dims.n
    sums: List[int] = []

    for j in range(1, L.dims.n0 + 1):
        a = L.x(1, j) + L.x(1, j + 1)
        for i in range(1, m + 1):
            low = a if i % 2 == 1 else S - a
            lower = L.x(i, j) + L.x(i, j + 1)
            if lower != low:
                raise StructureViolation("lower row-pair sum", i, j, low, lower)
            upper = L.x(i, n + 1 - j) + L.x(i, n - j)
            if upper != S - low:
                raise StructureViolation("upper row-pair sum", i, n + 1 - j, S - low, upper)
        sums.append(a)

    return sums


# ============================================================
# Standard Form
# ============================================================

def standard_violations(L: Labeling) -> List[str]:
    """Failing center-row / center-column monotonicity conditions."""
    dims = L.dims
    m0p, n0p = dims.m0p, dims.n0p
    problems: List[str] = []

    for i in range(1, dims.m - 1):
        a, b = L.x(i, n0p), L.x(i + 2, n0p)
        ascending = (i + n0p) % 2 == 0
        if (a < b) != ascending:
            problems.append(f"center row: x({i},{n0p})={a} vs x({i + 2},{n0p})={b}")

    for j in range(1, dims.n - 1):
        a, b = L.x(m0p, j), L.x(m0p, j + 2)
        ascending = (m0p + j) % 2 == 0
        if (a < b) != ascending:
            problems.append(f"center column: x({m0p},{j})={a} vs x({m0p},{j + 2})={b}")

    return problems


def is_standard(L: Labeling) -> bool:
    """True iff the bicentrally balanced magic L meets all four monotonicity conditions."""
    require_bicentral_magic(L)
    return not standard_violations(L)


# ============================================================
# Symmetry Action & Canonical Forms
# ============================================================

def permute_labels(labels: Sequence[int], src: Sequence[int]) -> Tuple[int, ...]:
    return tuple(labels[k] for k in src)


def apply_symmetry_labeling(sym: Symmetry, L: Labeling) -> Labeling:
    """x'_v = x_{sym^-1(v)}; the magic value is preserved."""
    return Labeling(L.dims, permute_labels(L.labels, grid.symmetry_source_indices(sym, L.dims)))


def _group(dims: Dims, group: Optional[Iterable[Symmetry]]) -> Tuple[Symmetry, ...]:
    if group is None:
        return grid.symmetry_group(dims)
    chosen = tuple(group)
    for sym in chosen:
        grid.check_symmetry(sym, dims)
    return chosen


def orbit_labels(
    dims: Dims, labels: Sequence[int], group: Optional[Iterable[Symmetry]] = None
) -> List[Tuple[int, ...]]:
    """Distinct images of a raw label tuple, sorted."""
    images = {
        permute_labels(labels, grid.symmetry_source_indices(sym, dims))
        for sym in _group(dims, group)
    }
    return sorted(images)


def canonical_labels(
    dims: Dims, labels: Sequence[int], group: Optional[Iterable[Symmetry]] = None
) -> Tuple[int, ...]:
    """Lexicographically smallest row-major image of a raw label tuple."""
    return min(
        permute_labels(labels, grid.symmetry_source_indices(sym, dims))
        for sym in _group(dims, group)
    )


def orbit(L: Labeling, group: Optional[Iterable[Symmetry]] = None) -> List[Labeling]:
    """Distinct images of L under a symmetry group (default: the full group of its grid)."""
    return [Labeling(L.dims, labels) for labels in orbit_labels(L.dims, L.labels, group)]


def canonical_form(L: Labeling, group: Optional[Iterable[Symmetry]] = None) -> Labeling:
    """Orbit representative: the smallest row-major label array."""
    return Labeling(L.dims, canonical_labels(L.dims, L.labels, group))


# ============================================================
# Sample Labelings
# ============================================================

def identity_labeling(dims: Dims) -> Labeling:
    """x_{i,j} = (j-1)m + i."""
    return Labeling(dims, tuple(range(1, dims.size + 1)))


def random_labeling(dims: Dims, rng: random.Random) -> Labeling:
    labels = list(range(1, dims.size + 1))
    rng.shuffle(labels)
    return Labeling(dims, tuple(labels))
