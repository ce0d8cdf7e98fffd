"""
Elementary Projective Labeling Operations

Features:
- Parity-preserving permutations of mirrored column pairs / row pairs
- Mask-controlled swaps of mirrored columns / rows
- Standardization to the unique standard labeling of an equivalence class
- Equivalence test, full equivalence classes, random operation sequences

All operations return new labelings. Row operations fix the center row and
column operations fix the center column.
"""

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from facemagic.errors import TransformError
from facemagic.models import Dims, Labeling, Vertex
from facemagic.services.labeling import pair_targets, require_bicentral_magic
from facemagic.utils.logger import logger


# ============================================================
# Operation Parameters
# ============================================================

def _parse_ints(text: str) -> Tuple[int, ...]:
    text = text.strip()
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(",") if part.strip())
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise TransformError(f"Expected integers, got {text!r}") from None


def _check_permutation(values: Tuple[int, ...], name: str) -> None:
    k = len(values)
    if sorted(values) != list(range(1, k + 1)):
        raise TransformError(f"{name} {values} is not a permutation of 1..{k}")
    for pos, image in enumerate(values, start=1):
        if image % 2 != pos % 2:
            raise TransformError(
                f"{name} {values} is not parity-preserving: {pos} -> {image}"
            )


def _check_mask(values: Tuple[int, ...], name: str) -> None:
    bad = [v for v in values if v not in (0, 1)]
    if bad:
        raise TransformError(f"{name} entries must be 0 or 1, got {bad[0]}")


@dataclass(frozen=True)
class ColumnPairPermutation:
    """eta: parity-preserving permutation of {1..m0}; eta[i-1] = eta(i)."""
    eta: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_permutation(self.eta, "eta")

    @classmethod
    def parse(cls, text: str) -> "ColumnPairPermutation":
        return cls(_parse_ints(text))


@dataclass(frozen=True)
class RowPairPermutation:
    """kappa: parity-preserving permutation of {1..n0}."""
    kappa: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_permutation(self.kappa, "kappa")

    @classmethod
    def parse(cls, text: str) -> "RowPairPermutation":
        return cls(_parse_ints(text))


@dataclass(frozen=True)
class ColumnSwapMask:
    """alpha: {1..m0} -> {0,1}; alpha[i-1] = 1 swaps columns i and m+1-i."""
    alpha: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_mask(self.alpha, "alpha")

    @classmethod
    def parse(cls, text: str) -> "ColumnSwapMask":
        return cls(_parse_ints(text))


@dataclass(frozen=True)
class RowSwapMask:
    """delta: {1..n0} -> {0,1}; delta[j-1] = 1 swaps rows j and n+1-j."""
    delta: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_mask(self.delta, "delta")

    @classmethod
    def parse(cls, text: str) -> "RowSwapMask":
        return cls(_parse_ints(text))


ElementaryOp = Union[ColumnPairPermutation, RowPairPermutation, ColumnSwapMask, RowSwapMask]


# ============================================================
# Elementary Operations
# ============================================================

def _check_domain(dims: Dims, values: Tuple[int, ...], size: int, name: str) -> None:
    dims.require_odd()
    if len(values) != size:
        raise TransformError(f"{name} must have {size} entries on {dims}, got {len(values)}")


def _pair_permutation_sources(length: int, perm: Sequence[int]) -> List[int]:
    """0-based source positions: position i takes perm(i), position L+1-i takes L+1-perm(i)."""
    src = list(range(length))
    for i, image in enumerate(perm, start=1):
        src[i - 1] = image - 1
        src[length - i] = length - image
    return src


def _swap_sources(length: int, mask: Sequence[int]) -> List[int]:
    src = list(range(length))
    for i, bit in enumerate(mask, start=1):
        if bit:
            src[i - 1], src[length - i] = length - i, i - 1
    return src


def _with_columns(L: Labeling, src: List[int]) -> Labeling:
    return Labeling.from_grid(L.dims, L.grid[:, src])


def _with_rows(L: Labeling, src: List[int]) -> Labeling:
    return Labeling.from_grid(L.dims, L.grid[src, :])


def permute_column_pairs(L: Labeling, eta: ColumnPairPermutation) -> Labeling:
    """z_{i,j} = x_{eta(i),j} and z_{m+1-i,j} = x_{m+1-eta(i),j} for i <= m0."""
    _check_domain(L.dims, eta.eta, L.dims.m0, "eta")
    return _with_columns(L, _pair_permutation_sources(L.dims.m, eta.eta))


def permute_row_pairs(L: Labeling, kappa: RowPairPermutation) -> Labeling:
    """z_{i,j} = x_{i,kappa(j)} and z_{i,n+1-j} = x_{i,n+1-kappa(j)} for j <= n0."""
    _check_domain(L.dims, kappa.kappa, L.dims.n0, "kappa")
    return _with_rows(L, _pair_permutation_sources(L.dims.n, kappa.kappa))


def swap_columns(L: Labeling, alpha: ColumnSwapMask) -> Labeling:
    _check_domain(L.dims, alpha.alpha, L.dims.m0, "alpha")
    return _with_columns(L, _swap_sources(L.dims.m, alpha.alpha))


def swap_rows(L: Labeling, delta: RowSwapMask) -> Labeling:
    _check_domain(L.dims, delta.delta, L.dims.n0, "delta")
    return _with_rows(L, _swap_sources(L.dims.n, delta.delta))


def apply_elementary(L: Labeling, op: ElementaryOp) -> Labeling:
    """Dispatch one elementary operation."""
    if isinstance(op, ColumnPairPermutation):
        return permute_column_pairs(L, op)
    if isinstance(op, RowPairPermutation):
        return permute_row_pairs(L, op)
    if isinstance(op, ColumnSwapMask):
        return swap_columns(L, op)
    if isinstance(op, RowSwapMask):
        return swap_rows(L, op)
    raise TransformError(f"Unknown elementary operation: {op!r}")


# ============================================================
# Operation Generators
# ============================================================

def parity_preserving_permutations(k: int) -> Iterator[Tuple[int, ...]]:
    """All permutations p of {1..k} with p(i) = i (mod 2), in lexicographic order."""
    odds = list(range(1, k + 1, 2))
    evens = list(range(2, k + 1, 2))
    result = []
    for po in itertools.permutations(odds):
        for pe in itertools.permutations(evens):
            perm = [0] * k
            perm[0::2] = po
            perm[1::2] = pe
            result.append(tuple(perm))
    return iter(sorted(result))


def swap_masks(k: int) -> Iterator[Tuple[int, ...]]:
    return itertools.product((0, 1), repeat=k)


def random_parity_permutation(k: int, rng: random.Random) -> Tuple[int, ...]:
    odds = list(range(1, k + 1, 2))
    evens = list(range(2, k + 1, 2))
    rng.shuffle(odds)
    rng.shuffle(evens)
    perm = [0] * k
    perm[0::2] = odds
    perm[1::2] = evens
    return tuple(perm)


def random_elementary_op(dims: Dims, rng: random.Random) -> ElementaryOp:
    kind = rng.randrange(4)
    if kind == 0:
        return ColumnPairPermutation(random_parity_permutation(dims.m0, rng))
    if kind == 1:
        return RowPairPermutation(random_parity_permutation(dims.n0, rng))
    if kind == 2:
        return ColumnSwapMask(tuple(rng.randrange(2) for _ in range(dims.m0)))
    return RowSwapMask(tuple(rng.randrange(2) for _ in range(dims.n0)))


def random_elementary_sequence(
    L: Labeling, rng: random.Random, steps: int = 6
) -> Tuple[Labeling, List[ElementaryOp]]:
    """
    Apply a random sequence of elementary operations.

    Returns:
        (final labeling, operations applied in order)
    """
    ops = [random_elementary_op(L.dims, rng) for _ in range(steps)]
    for op in ops:
        L = apply_elementary(L, op)
    return L, ops


def equivalence_class(L: Labeling) -> List[Labeling]:
    """
    Every labeling reachable from L by elementary operations.

    Column operations (eta after alpha) form a group, as do row operations,
    and the two commute, so one pass over eta x alpha x kappa x delta covers
    the whole class. Sorted by label tuple.
    """
    dims = L.dims
    dims.require_odd()
    grid = L.grid

    col_sources = {
        tuple(np.array(_swap_sources(dims.m, alpha))[_pair_permutation_sources(dims.m, eta)])
        for eta in parity_preserving_permutations(dims.m0)
        for alpha in swap_masks(dims.m0)
    }
    row_sources = {
        tuple(np.array(_swap_sources(dims.n, delta))[_pair_permutation_sources(dims.n, kappa)])
        for kappa in parity_preserving_permutations(dims.n0)
        for delta in swap_masks(dims.n0)
    }

    images = {
        tuple(int(x) for x in grid[np.ix_(rows, cols)].reshape(-1))
        for cols in col_sources
        for rows in row_sources
    }
    return [Labeling(dims, labels) for labels in sorted(images)]


# ============================================================
# Standardization
# ============================================================

def _standard_phase(
    values: Sequence[int], targets: Sequence[int], center_index: int
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    Swap mask and parity permutation for one phase.

    Args:
        values: entries along the center line at positions 1..k
        targets: pair-sum targets at those positions
        center_index: index of the center line (n0+1 or m0+1)

    Returns:
        (mask, permutation), both over positions 1..k
    """
    k = len(values)
    mask = []
    kept = []
    for pos, (x, target) in enumerate(zip(values, targets), start=1):
        ascending = (pos + center_index) % 2 == 0
        stays = (2 * x < target) if ascending else (2 * x > target)
        mask.append(0 if stays else 1)
        kept.append(x if stays else target - x)

    perm = [0] * k
    for parity in (1, 0):
        positions = [p for p in range(1, k + 1) if p % 2 == parity]
        if not positions:
            continue
        ascending = (positions[0] + center_index) % 2 == 0
        sources = sorted(positions, key=lambda p: kept[p - 1], reverse=not ascending)
        for pos, src in zip(positions, sources):
            perm[pos - 1] = src
    return tuple(mask), tuple(perm)


def standardize(L: Labeling) -> Labeling:
    """
    The unique standard labeling equivalent to L.

    Column phase on the center row (swap mask, then pair permutation),
    then the row phase on the center column.

    Raises:
        LabelingValidationError: L is not bicentrally balanced magic
    """
    require_bicentral_magic(L)
    dims = L.dims
    targets = pair_targets(dims)
    m0p, n0p = dims.m0p, dims.n0p

    row_values = [L.x(i, n0p) for i in range(1, dims.m0 + 1)]
    row_targets = [targets.at(Vertex(i, n0p)) for i in range(1, dims.m0 + 1)]
    alpha, eta = _standard_phase(row_values, row_targets, n0p)
    Z = permute_column_pairs(swap_columns(L, ColumnSwapMask(alpha)), ColumnPairPermutation(eta))

    col_values = [Z.x(m0p, j) for j in range(1, dims.n0 + 1)]
    col_targets = [targets.at(Vertex(m0p, j)) for j in range(1, dims.n0 + 1)]
    delta, kappa = _standard_phase(col_values, col_targets, m0p)
    Z = permute_row_pairs(swap_rows(Z, RowSwapMask(delta)), RowPairPermutation(kappa))

    logger.debug(
        "Standardized labeling",
        dims=str(dims),
        alpha=alpha,
        eta=eta,
        delta=delta,
        kappa=kappa,
    )
    return Z


def equivalent(L1: Labeling, L2: Labeling) -> bool:
    """True iff both labelings standardize to the same labeling."""
    if L1.dims != L2.dims:
        raise TransformError(f"Cannot compare labelings of {L1.dims} and {L2.dims}")
    return standardize(L1) == standardize(L2)
