"""
Bicentrally Balanced Constructions

Features:
- Projective factorization sequences and their count tau(m, n)
- HALL / VALL partial alternating lexicographic labelings
- Horizontal / vertical alternating connected sums
- Partial-labeling condition checks with violation reports
- HBBL / VBBL full labelings built along a factorization sequence

Ambient dimensions (M, N) are always the final target grid: every
label offset in the connected sums references MN.
"""

from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np

from facemagic.errors import FactorizationError, PartialLabelingError
from facemagic.models import Dims, FactorizationSequence, Labeling, Orientation, PartialLabeling
from facemagic.utils.logger import logger


# ============================================================
# Factorization Sequences
# ============================================================

@lru_cache(maxsize=4096)
def ordered_factorizations(x: int, parts: int) -> Tuple[Tuple[int, ...], ...]:
    """All ordered tuples of `parts` factors, each > 1, with product x."""
    if parts == 0:
        return ((),) if x == 1 else ()
    if parts == 1:
        return ((x,),) if x > 1 else ()
    result = []
    for first in range(2, x + 1):
        if x % first == 0:
            for rest in ordered_factorizations(x // first, parts - 1):
                result.append((first, *rest))
    return tuple(result)


def _interleave(fs: Tuple[int, ...], gs: Tuple[int, ...]) -> Tuple[int, ...]:
    out: List[int] = []
    for k, f in enumerate(fs):
        out.append(f)
        out.append(gs[k] if k < len(gs) else 1)
    return tuple(out)


def _require_odd_pair(m: int, n: int) -> None:
    if m < 3 or n < 3 or m % 2 == 0 or n % 2 == 0:
        raise FactorizationError(f"Factorization sequences need odd m, n >= 3, got ({m}, {n})")


def enumerate_factorization_sequences(m: int, n: int) -> List[FactorizationSequence]:
    """
    Every horizontal (m, n)-projective factorization sequence.

    Even length 2k: m and n each split into k factors > 1.
    Odd length 2k+1: m into k+1 factors and n into k, stored with a trailing 1.
    Sorted by length, then lexicographically.
    """
    _require_odd_pair(m, n)
    found = set()
    k = 1
    while 2 ** k <= max(m, n):
        for fs in ordered_factorizations(m, k):
            for gs in ordered_factorizations(n, k):
                found.add(_interleave(fs, gs))
        for fs in ordered_factorizations(m, k + 1):
            for gs in ordered_factorizations(n, k):
                found.add(_interleave(fs, gs))
        k += 1
    ordered = sorted(found, key=lambda f: (len(f), f))
    return [FactorizationSequence("horizontal", factors) for factors in ordered]


def factorization_sequences(m: int, n: int, orientation: Orientation) -> List[FactorizationSequence]:
    """Sequences building P(m,n): horizontal over (m, n), vertical over (n, m)."""
    if orientation == "horizontal":
        return enumerate_factorization_sequences(m, n)
    return [
        FactorizationSequence("vertical", seq.factors)
        for seq in enumerate_factorization_sequences(n, m)
    ]


def tau(m: int, n: int) -> int:
    """Number of (m, n)-projective factorization sequences."""
    return len(enumerate_factorization_sequences(m, n))


# ============================================================
# HALL / VALL
# ============================================================

def _check_partial_args(M: int, N: int, m: int, n: int) -> Dims:
    for name, value in (("M", M), ("N", N), ("m", m), ("n", n)):
        if value < 3 or value % 2 == 0:
            raise PartialLabelingError(f"{name} must be odd and at least 3, got {value}")
    if m > M or n > N:
        raise PartialLabelingError(f"Subgrid {m}x{n} does not fit in {M}x{N}")
    return Dims(M, N)


def hall(M: int, N: int, m: int, n: int) -> PartialLabeling:
    """
    Partial horizontal alternating lexicographic labeling HALL_{M,N}(m,n).

    x_{2i-1,2j-1} = m(j-1) + i
    x_{2i,2j}     = m(j-1) + m0p + i
    x_{2i,2j-1}   = MN + m(1-j) + 1 - i
    x_{2i-1,2j}   = MN - mj + m0p + 1 - i
    """
    ambient = _check_partial_args(M, N, m, n)
    MN = M * N
    m0p = (m - 1) // 2 + 1
    labels = []
    for b in range(1, n + 1):
        for a in range(1, m + 1):
            i, j = (a + 1) // 2, (b + 1) // 2
            if a % 2 == 1 and b % 2 == 1:
                value = m * (j - 1) + i
            elif a % 2 == 0 and b % 2 == 0:
                value = m * (j - 1) + m0p + i
            elif a % 2 == 0:
                value = MN + m * (1 - j) + 1 - i
            else:
                value = MN - m * j + m0p + 1 - i
            labels.append(value)
    return PartialLabeling(ambient, Dims(m, n), tuple(labels))


def vall(M: int, N: int, m: int, n: int) -> PartialLabeling:
    """
    Partial vertical alternating lexicographic labeling VALL_{M,N}(m,n).

    y_{2i-1,2j-1} = n(i-1) + j
    y_{2i,2j}     = n(i-1) + n0p + j
    y_{2i,2j-1}   = MN - ni + n0p + 1 - j
    y_{2i-1,2j}   = MN + n(1-i) + 1 - j
    """
    ambient = _check_partial_args(M, N, m, n)
    MN = M * N
    n0p = (n - 1) // 2 + 1
    labels = []
    for b in range(1, n + 1):
        for a in range(1, m + 1):
            i, j = (a + 1) // 2, (b + 1) // 2
            if a % 2 == 1 and b % 2 == 1:
                value = n * (i - 1) + j
            elif a % 2 == 0 and b % 2 == 0:
                value = n * (i - 1) + n0p + j
            elif a % 2 == 0:
                value = MN - n * i + n0p + 1 - j
            else:
                value = MN + n * (1 - i) + 1 - j
            labels.append(value)
    return PartialLabeling(ambient, Dims(m, n), tuple(labels))


# ============================================================
# Alternating Connected Sums
# ============================================================

def _odd_cells(rows: int, cols: int) -> np.ndarray:
    """Boolean (rows, cols) mask of cells with i + j odd (1-based)."""
    jj, ii = np.indices((rows, cols))
    return (ii + jj) % 2 == 1


def _alternating_blocks(grid: np.ndarray, MN: int, r: int) -> np.ndarray:
    """
    Horizontal block replication of an (n, m) grid into (n, r*m).

    Block 2k:   x - k*mn on odd cells,  x + k*mn on even cells
    Block 2k-1: MN - x + ((2k-1)mn + 3)/2 on odd cells,
                MN - x + (3 - (2k-1)mn)/2 on even cells
    """
    n, m = grid.shape
    mn = m * n
    odd = _odd_cells(n, m)
    blocks = []
    for b in range(r):
        if b % 2 == 0:
            k = b // 2
            blocks.append(np.where(odd, grid - k * mn, grid + k * mn))
        else:
            c = b * mn
            blocks.append(np.where(odd, MN - grid + (c + 3) // 2, MN - grid + (3 - c) // 2))
    return np.concatenate(blocks, axis=1)


def _check_factor(r: int) -> None:
    if r < 3 or r % 2 == 0:
        raise PartialLabelingError(f"Connected-sum factor must be odd and at least 3, got {r}")


def h_connected_sum(X: PartialLabeling, r: int) -> PartialLabeling:
    """r-horizontal alternating connected sum: (m x n) -> (rm x n)."""
    _check_factor(r)
    sub = X.sub
    if r * sub.m > X.ambient.m:
        raise PartialLabelingError(
            f"{r} x {sub.m} columns exceed the ambient width {X.ambient.m}"
        )
    out = _alternating_blocks(X.grid, X.ambient.size, r)
    return PartialLabeling(X.ambient, Dims(r * sub.m, sub.n), tuple(int(v) for v in out.reshape(-1)))


def v_connected_sum(X: PartialLabeling, r: int) -> PartialLabeling:
    """r-vertical alternating connected sum: (m x n) -> (m x rn)."""
    _check_factor(r)
    sub = X.sub
    if r * sub.n > X.ambient.n:
        raise PartialLabelingError(
            f"{r} x {sub.n} rows exceed the ambient height {X.ambient.n}"
        )
    # Same rule with rows and columns exchanged; parity of i+j is symmetric
    out = _alternating_blocks(X.grid.T, X.ambient.size, r).T
    return PartialLabeling(X.ambient, Dims(sub.m, r * sub.n), tuple(int(v) for v in out.reshape(-1)))


# ============================================================
# Partial Labeling Conditions
# ============================================================

def partial_violations(X: PartialLabeling) -> List[str]:
    """
    Failing partial bicentrally balanced conditions, empty when all hold.

    1. every interior quad face of the subgrid sums to 2MN+3
    2. even cells carry exactly {1, ..., (mn+1)/2}
    3. odd cells carry exactly {MN-(mn-3)/2, ..., MN}
    4. antipodal even-cell pairs sum to (mn+3)/2
    5. antipodal odd-cell pairs sum to (4MN-mn+3)/2
    6. center-row and center-column monotonicity
    """
    sub = X.sub
    if not sub.is_odd or not X.ambient.is_odd:
        raise PartialLabelingError(f"Partial conditions need odd dimensions, got {sub} in {X.ambient}")
    m, n = sub.m, sub.n
    mn, MN = sub.size, X.ambient.size
    g = X.grid
    odd = _odd_cells(n, m)
    problems: List[str] = []

    face = g[:-1, :-1] + g[1:, :-1] + g[:-1, 1:] + g[1:, 1:]
    bad = np.argwhere(face != 2 * MN + 3)
    if bad.size:
        j, i = (int(v) + 1 for v in bad[0])
        problems.append(f"(1) face at ({i},{j}) sums to {int(face[j - 1, i - 1])}, expected {2 * MN + 3}")

    even_labels = sorted(int(v) for v in g[~odd])
    if even_labels != list(range(1, (mn + 1) // 2 + 1)):
        problems.append(f"(2) even cells do not carry 1..{(mn + 1) // 2}")

    odd_labels = sorted(int(v) for v in g[odd])
    low = MN - (mn - 3) // 2
    if odd_labels != list(range(low, MN + 1)):
        problems.append(f"(3) odd cells do not carry {low}..{MN}")

    antipodal = g + g[::-1, ::-1]
    even_target, odd_target = (mn + 3) // 2, (4 * MN - mn + 3) // 2
    bad_even = np.argwhere(~odd & (antipodal != even_target))
    if bad_even.size:
        j, i = (int(v) + 1 for v in bad_even[0])
        problems.append(f"(4) even pair at ({i},{j}) sums to {int(antipodal[j - 1, i - 1])}, expected {even_target}")
    bad_odd = np.argwhere(odd & (antipodal != odd_target))
    if bad_odd.size:
        j, i = (int(v) + 1 for v in bad_odd[0])
        problems.append(f"(5) odd pair at ({i},{j}) sums to {int(antipodal[j - 1, i - 1])}, expected {odd_target}")

    m0p, n0p = sub.m0p, sub.n0p
    for i in range(1, m - 1):
        a, b = X.x(i, n0p), X.x(i + 2, n0p)
        if (a < b) != ((i + n0p) % 2 == 0):
            problems.append(f"(6) center row at columns {i},{i + 2}: {a} vs {b}")
    for j in range(1, n - 1):
        a, b = X.x(m0p, j), X.x(m0p, j + 2)
        if (a < b) != ((m0p + j) % 2 == 0):
            problems.append(f"(6) center column at rows {j},{j + 2}: {a} vs {b}")

    return problems


def is_partial_bb(X: PartialLabeling) -> bool:
    """True iff X satisfies all six partial bicentrally balanced conditions."""
    problems = partial_violations(X)
    if problems:
        logger.debug("Partial labeling rejected", sub=str(X.sub), ambient=str(X.ambient), problems=problems)
    return not problems


# ============================================================
# HBBL / VBBL
# ============================================================

def hbbl(F: FactorizationSequence) -> Labeling:
    """
    Horizontal bicentrally balanced labeling of a horizontal sequence.

    X1 = HALL(m1, n1); then for each later pair (mi, ni):
    Yi = h_connected_sum(X, mi), Xi = v_connected_sum(Yi, ni).
    Factors equal to 1 are skipped.
    """
    if F.orientation != "horizontal":
        raise FactorizationError(f"hbbl needs a horizontal sequence, got {F}")
    dims = F.dims
    (f1, g1), *rest = F.pairs
    X = hall(dims.m, dims.n, f1, g1)
    for f, g in rest:
        if f > 1:
            X = h_connected_sum(X, f)
        if g > 1:
            X = v_connected_sum(X, g)
    logger.debug("Built HBBL", sequence=str(F), dims=str(dims))
    return X.to_labeling()


def vbbl(F: FactorizationSequence) -> Labeling:
    """
    Vertical bicentrally balanced labeling of a vertical sequence.

    X1 = VALL(g1, f1) (g counts columns, f counts rows); then for each later
    pair (fi, gi): Yi = v_connected_sum(X, fi), Xi = h_connected_sum(Yi, gi).
    """
    if F.orientation != "vertical":
        raise FactorizationError(f"vbbl needs a vertical sequence, got {F}")
    dims = F.dims
    (f1, g1), *rest = F.pairs
    X = vall(dims.m, dims.n, g1, f1)
    for f, g in rest:
        if f > 1:
            X = v_connected_sum(X, f)
        if g > 1:
            X = h_connected_sum(X, g)
    logger.debug("Built VBBL", sequence=str(F), dims=str(dims))
    return X.to_labeling()


def build(F: FactorizationSequence) -> Labeling:
    """hbbl or vbbl by the sequence's orientation."""
    return hbbl(F) if F.orientation == "horizontal" else vbbl(F)


def constructed_labelings(m: int, n: int) -> Dict[FactorizationSequence, Labeling]:
    """Every HBBL and VBBL of P(m,n), keyed by sequence (horizontal first)."""
    result: Dict[FactorizationSequence, Labeling] = {}
    for orientation in ("horizontal", "vertical"):
        for seq in factorization_sequences(m, n, orientation):  # type: ignore[arg-type]
            result[seq] = build(seq)
    return result
