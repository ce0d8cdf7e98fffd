"""
Exhaustive Enumeration Service

Features:
- Depth-first search with face-equation propagation
- Pure mode (face equations only) and lemma-assisted mode (fixed magic
  values, forced digon corner)
- Wrap-face checks at the earliest depth where a face is complete
- Symmetry-orbit deduplication via canonical forms
- Deterministic fan-out of depth-2 subtrees over a process pool
- Node budget with flagged-incomplete reports
- Conjecture harness and bicentral equivalence census

Assignment order: row 1 left to right, then for each later row its first
cell (free) followed by the rest of the row, each forced by
x_{i+1,j} = S - x_{i,j-1} - x_{i+1,j-1} - x_{i,j}.
"""

import itertools
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from facemagic.config import settings
from facemagic.errors import GridError
from facemagic.models import Dims, FactorizationSequence, Labeling, Symmetry
from facemagic.services import grid
from facemagic.services.construct import constructed_labelings
from facemagic.services.counting import beta
from facemagic.services.labeling import (
    admissible_values,
    canonical_labels,
    digon_targets,
    orbit_labels,
)
from facemagic.services.transform import equivalence_class, standardize
from facemagic.utils.logger import log_search_run, log_subtree, logger


Labels = Tuple[int, ...]

# Brute-force oracle refuses grids larger than this (10! permutations)
BRUTE_FORCE_MAX_CELLS = 10


# ============================================================
# Configuration & Reports
# ============================================================

class SearchConfig(BaseModel):
    """One enumeration run."""
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    n: int = Field(ge=2)
    value_filter: Union[Literal["all"], int] = "all"
    up_to_symmetry: bool = True
    pruning: Literal["pure", "lemma"] = "pure"
    workers: int = Field(default=1, ge=1)
    max_nodes: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _lemma_applies(self) -> "SearchConfig":
        if self.pruning == "lemma" and not grid.is_admissible(Dims(self.m, self.n)):
            raise ValueError(
                f"Lemma-assisted pruning needs m and n of equal parity, got {self.m}x{self.n}"
            )
        return self

    @property
    def dims(self) -> Dims:
        return Dims(self.m, self.n)

    @classmethod
    def from_settings(cls, m: int, n: int, **overrides: object) -> "SearchConfig":
        """Defaults from settings.search; overrides that are None are ignored."""
        defaults = settings.search
        values: Dict[str, object] = {
            "m": m,
            "n": n,
            "up_to_symmetry": defaults.up_to_symmetry,
            "pruning": defaults.pruning,
            "workers": defaults.workers,
            "max_nodes": defaults.max_nodes,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)  # type: ignore[arg-type]


class ValueCount(BaseModel):
    """Counts for one magic value."""
    S: int
    raw: int
    up_to_symmetry: int
    orbit_sizes: Dict[int, int]  # orbit size -> number of classes
    representatives: List[Labels]  # canonical forms, sorted


class EnumerationReport(BaseModel):
    """Per-value counts, canonical representatives and search statistics."""
    m: int
    n: int
    pruning: str
    value_filter: Union[Literal["all"], int]
    up_to_symmetry: bool
    group: List[str]
    values: Dict[int, ValueCount] = {}
    complete: bool = True
    nodes: int = 0
    wall_time_ms: float = 0.0
    workers: int = 1

    @property
    def dims(self) -> Dims:
        return Dims(self.m, self.n)

    def raw_count(self, S: int) -> int:
        return self.values[S].raw if S in self.values else 0

    def class_count(self, S: int) -> int:
        return self.values[S].up_to_symmetry if S in self.values else 0

    def counts(self) -> Dict[int, int]:
        """S -> count, up to symmetry or raw according to the run."""
        if self.up_to_symmetry:
            return {S: v.up_to_symmetry for S, v in self.values.items()}
        return {S: v.raw for S, v in self.values.items()}

    def total(self) -> int:
        return sum(self.counts().values())

    def labelings(self, S: int) -> List[Labeling]:
        """Every labeling found with value S (orbits of the representatives)."""
        if S not in self.values:
            return []
        dims = self.dims
        group = [Symmetry(tag) for tag in self.group]
        found = {
            image
            for rep in self.values[S].representatives
            for image in orbit_labels(dims, rep, group)
        }
        return [Labeling(dims, labels) for labels in sorted(found)]

    def result_signature(self) -> Tuple[object, ...]:
        """Everything but statistics and run settings; equal across modes and worker counts."""
        return (
            self.m,
            self.n,
            self.complete,
            tuple(
                (S, v.raw, v.up_to_symmetry, tuple(sorted(v.orbit_sizes.items())), tuple(v.representatives))
                for S, v in sorted(self.values.items())
            ),
        )

    def same_result(self, other: "EnumerationReport") -> bool:
        return self.result_signature() == other.result_signature()


# ============================================================
# Search Kernel
# ============================================================

_FREE, _FORCED, _S_DEFINING, _DIGON_FORCED = range(4)


@dataclass(frozen=True)
class _Plan:
    order: Tuple[int, ...]
    kinds: Tuple[int, ...]
    deps: Tuple[Tuple[int, ...], ...]
    checks: Tuple[Tuple[Tuple[int, int, int, int], ...], ...]


@lru_cache(maxsize=64)
def _plan(m: int, n: int, s_known: bool, digon: bool) -> _Plan:
    dims = Dims(m, n)
    order: List[int] = []
    kinds: List[int] = []
    deps: List[Tuple[int, ...]] = []

    for i in range(1, m + 1):
        order.append(dims.index(i, 1))
        kinds.append(_FREE)
        deps.append(())

    for j in range(2, n + 1):
        order.append(dims.index(1, j))
        if digon and j == n:
            kinds.append(_DIGON_FORCED)
            deps.append((dims.index(m, 1),))
        else:
            kinds.append(_FREE)
            deps.append(())
        for i in range(1, m):
            order.append(dims.index(i + 1, j))
            kinds.append(_S_DEFINING if (not s_known and i == 1 and j == 2) else _FORCED)
            deps.append((dims.index(i, j - 1), dims.index(i + 1, j - 1), dims.index(i, j)))

    position = {cell: p for p, cell in enumerate(order)}
    checks: List[List[Tuple[int, int, int, int]]] = [[] for _ in order]
    for face, cells in zip(grid.c4_faces(dims), grid.face_index_table(dims)):
        if face.family == "interior":
            continue  # forced cells satisfy every interior face
        checks[max(position[c] for c in cells)].append(cells)

    return _Plan(tuple(order), tuple(kinds), tuple(deps), tuple(tuple(c) for c in checks))


@dataclass(frozen=True)
class SubtreeTask:
    """Subtree rooted at fixed x_{1,1}, x_{2,1} (and S when known)."""
    m: int
    n: int
    S: Optional[int]
    digon: bool
    x11: int
    x21: int
    max_nodes: Optional[int]
    group: Tuple[str, ...]


@dataclass
class SubtreeResult:
    task: SubtreeTask
    found: Dict[int, Dict[Labels, int]] = field(default_factory=dict)  # S -> canonical -> hits
    nodes: int = 0
    truncated: bool = False


class _BudgetHit(Exception):
    pass


def _run_subtree(task: SubtreeTask) -> SubtreeResult:
    """Search one subtree. Module-level so process pools can pickle it."""
    m, n = task.m, task.n
    mn = m * n
    dims = Dims(m, n)
    plan = _plan(m, n, task.S is not None, task.digon)
    order, kinds, deps, checks = plan.order, plan.kinds, plan.deps, plan.checks
    sources = [grid.symmetry_source_indices(Symmetry(tag), dims) for tag in task.group]
    prefix = (task.x11, task.x21)
    last = mn - 1
    cap = task.max_nodes

    D1 = D2 = 0
    if task.digon and task.S is not None:
        targets = digon_targets(dims, task.S)
        if targets is None:
            return SubtreeResult(task)
        D1, D2 = targets

    x = [0] * mn
    used = [False] * (mn + 1)
    result = SubtreeResult(task)
    found = result.found
    nodes = 0
    S = task.S if task.S is not None else 0
    all_values = range(1, mn + 1)

    def emit() -> None:
        labels = tuple(x)
        canon = min(tuple([labels[k] for k in src]) for src in sources)
        bucket = found.setdefault(S, {})
        bucket[canon] = bucket.get(canon, 0) + 1

    def dfs(p: int) -> None:
        nonlocal nodes, S
        if p == mn:
            emit()
            return
        cell = order[p]
        kind = kinds[p]
        candidates: Iterable[int]
        if p < 2:
            candidates = (prefix[p],)
        elif kind == _FREE or kind == _S_DEFINING:
            candidates = all_values
        elif kind == _FORCED:
            a, b, c = deps[p]
            candidates = (S - x[a] - x[b] - x[c],)
        else:
            candidates = (D2 - x[deps[p][0]],)

        for v in candidates:
            if v < 1 or v > mn or used[v]:
                continue
            nodes += 1
            if cap is not None and nodes > cap:
                raise _BudgetHit
            x[cell] = v
            used[v] = True
            if kind == _S_DEFINING:
                S = x[0] + x[1] + x[m] + v
            ok = True
            for f in checks[p]:
                if x[f[0]] + x[f[1]] + x[f[2]] + x[f[3]] != S:
                    ok = False
                    break
            if ok and task.digon and p == last and x[0] + x[last] != D1:
                ok = False
            if ok:
                dfs(p + 1)
            used[v] = False
            x[cell] = 0

    try:
        dfs(0)
    except _BudgetHit:
        result.truncated = True
    result.nodes = nodes
    return result


# ============================================================
# Enumeration
# ============================================================

def value_range(dims: Dims) -> range:
    """Every integer a quad face of distinct labels can sum to."""
    mn = dims.size
    return range(1 + 2 + 3 + 4, 4 * mn - 6 + 1)


def _values_to_search(cfg: SearchConfig) -> List[Optional[int]]:
    dims = cfg.dims
    if cfg.pruning == "lemma":
        allowed = list(admissible_values(dims))
        if cfg.value_filter == "all":
            return list(allowed)
        return [cfg.value_filter] if cfg.value_filter in allowed else []
    if cfg.value_filter == "all":
        return [None]
    return [cfg.value_filter] if cfg.value_filter in value_range(dims) else []


def _subtree_tasks(cfg: SearchConfig, group: Sequence[Symmetry]) -> List[SubtreeTask]:
    dims = cfg.dims
    digon = cfg.pruning == "lemma" and dims.is_odd
    tags = tuple(sym.value for sym in group)
    return [
        SubtreeTask(cfg.m, cfg.n, S, digon, a, b, cfg.max_nodes, tags)
        for S in _values_to_search(cfg)
        for a, b in itertools.permutations(range(1, dims.size + 1), 2)
    ]


def _merge_value_counts(
    dims: Dims, merged: Dict[int, Dict[Labels, int]], group: Sequence[Symmetry]
) -> Dict[int, ValueCount]:
    values: Dict[int, ValueCount] = {}
    for S in sorted(merged):
        bucket = merged[S]
        reps = sorted(bucket)
        sizes = Counter(len(orbit_labels(dims, rep, group)) for rep in reps)
        values[S] = ValueCount(
            S=S,
            raw=sum(bucket.values()),
            up_to_symmetry=len(reps),
            orbit_sizes=dict(sorted(sizes.items())),
            representatives=reps,
        )
    return values


def enumerate_all(cfg: SearchConfig) -> EnumerationReport:
    """
    Enumerate every C4-face-magic labeling of P(m,n) selected by cfg.

    Args:
        cfg: dims, value filter, pruning mode, workers, node budget

    Returns:
        EnumerationReport; complete is False when the node budget ran out
    """
    dims = cfg.dims
    group = grid.symmetry_group(dims)
    tasks = _subtree_tasks(cfg, group)
    start = time.perf_counter()

    logger.info(
        "Enumeration started",
        m=cfg.m,
        n=cfg.n,
        pruning=cfg.pruning,
        value_filter=cfg.value_filter,
        workers=cfg.workers,
        tasks=len(tasks),
        max_nodes=cfg.max_nodes,
    )

    merged: Dict[int, Dict[Labels, int]] = {}
    nodes = 0
    complete = True

    executor = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 and len(tasks) > 1 else None
    try:
        if executor is not None:
            chunksize = max(1, len(tasks) // (cfg.workers * 8))
            results: Iterable[SubtreeResult] = executor.map(_run_subtree, tasks, chunksize=chunksize)
        else:
            results = map(_run_subtree, tasks)

        # Results arrive in task order, so the merge is deterministic
        for result in results:
            task = result.task
            log_subtree(
                (task.S, task.x11, task.x21),
                found=sum(sum(b.values()) for b in result.found.values()),
                nodes=result.nodes,
                truncated=result.truncated,
            )
            nodes += result.nodes
            for S, bucket in result.found.items():
                target = merged.setdefault(S, {})
                for canon, hits in bucket.items():
                    target[canon] = target.get(canon, 0) + hits
            if result.truncated or (cfg.max_nodes is not None and nodes > cfg.max_nodes):
                complete = False
                break
    finally:
        if executor is not None:
            executor.shutdown(wait=True, cancel_futures=True)

    values = _merge_value_counts(dims, merged, group)
    elapsed_ms = (time.perf_counter() - start) * 1000

    log_search_run(
        m=cfg.m,
        n=cfg.n,
        pruning=cfg.pruning,
        counts={S: v.raw for S, v in values.items()},
        nodes=nodes,
        duration_ms=elapsed_ms,
        complete=complete,
    )

    return EnumerationReport(
        m=cfg.m,
        n=cfg.n,
        pruning=cfg.pruning,
        value_filter=cfg.value_filter,
        up_to_symmetry=cfg.up_to_symmetry,
        group=[sym.value for sym in group],
        values=values,
        complete=complete,
        nodes=nodes,
        wall_time_ms=round(elapsed_ms, 3),
        workers=cfg.workers,
    )


def brute_force_labelings(dims: Dims, S: Optional[int] = None) -> List[Labeling]:
    """
    Magic labelings found by scanning every permutation of 1..mn.

    Reference oracle for small grids only.
    """
    if dims.size > BRUTE_FORCE_MAX_CELLS:
        raise GridError(f"Brute force is limited to {BRUTE_FORCE_MAX_CELLS} cells, got {dims}")
    faces = grid.face_index_table(dims)
    first, rest = faces[0], faces[1:]
    found = []
    for perm in itertools.permutations(range(1, dims.size + 1)):
        total = perm[first[0]] + perm[first[1]] + perm[first[2]] + perm[first[3]]
        if S is not None and total != S:
            continue
        if all(perm[a] + perm[b] + perm[c] + perm[d] == total for a, b, c, d in rest):
            found.append(Labeling(dims, perm))
    return found


# ============================================================
# Conjecture Harness
# ============================================================

ConjectureVerdict = Literal["equal", "enumerated-strictly-larger", "constructed-not-found", "inconclusive"]


class ConjectureReport(BaseModel):
    """Enumerated standard labelings against HBBL/VBBL constructions."""
    m: int
    n: int
    S: int
    verdict: ConjectureVerdict
    complete: bool
    nodes: int
    enumerated_standard: List[Labels]
    constructed: Dict[str, Labels]
    extra_witnesses: List[Labels] = []      # enumerated but not constructed
    missing_witnesses: List[str] = []       # constructed but not enumerated
    collisions: List[List[str]] = []        # sequences sharing one labeling


def conjecture_check(
    m: int,
    n: int,
    max_nodes: Optional[int] = None,
    workers: int = 1,
    pruning: Literal["pure", "lemma"] = "lemma",
) -> ConjectureReport:
    """
    Compare every standard labeling with magic value 2mn+3 against the
    HBBL/VBBL constructions. Reports evidence; never asserts the conjecture.
    """
    dims = Dims(m, n)
    dims.require_odd()
    S = 2 * dims.size + 3

    report = enumerate_all(SearchConfig(
        m=m, n=n, value_filter=S, pruning=pruning, workers=workers, max_nodes=max_nodes,
    ))
    enumerated = sorted({standardize(L).labels for L in report.labelings(S)})

    built = constructed_labelings(m, n)
    by_labels: Dict[Labels, List[FactorizationSequence]] = {}
    for seq, L in built.items():
        by_labels.setdefault(L.labels, []).append(seq)
    collisions = [[str(s) for s in seqs] for seqs in by_labels.values() if len(seqs) > 1]

    enumerated_set = set(enumerated)
    constructed_set = set(by_labels)
    missing = [str(seq) for seq, L in built.items() if L.labels not in enumerated_set]
    extra = sorted(enumerated_set - constructed_set)

    verdict: ConjectureVerdict
    if not report.complete:
        verdict = "inconclusive"
    elif missing:
        verdict = "constructed-not-found"
    elif extra:
        verdict = "enumerated-strictly-larger"
    else:
        verdict = "equal"

    log = logger.info if verdict in ("equal", "enumerated-strictly-larger") else logger.warning
    log(
        "Conjecture check finished",
        m=m,
        n=n,
        verdict=verdict,
        enumerated=len(enumerated),
        constructed=len(constructed_set),
        collisions=len(collisions),
    )

    return ConjectureReport(
        m=m,
        n=n,
        S=S,
        verdict=verdict,
        complete=report.complete,
        nodes=report.nodes,
        enumerated_standard=enumerated,
        constructed={str(seq): L.labels for seq, L in built.items()},
        extra_witnesses=extra,
        missing_witnesses=missing,
        collisions=collisions,
    )


# ============================================================
# Bicentral Equivalence Census
# ============================================================

class CensusEntry(BaseModel):
    standard: Labels
    class_size: int
    rect_quotient: int   # classes under {R0, R180, H, V}
    full_quotient: int   # orbits of the full symmetry group meeting the class
    matches_expected: bool


class CensusReport(BaseModel):
    m: int
    n: int
    source: Literal["enumeration", "constructed"]
    expected_class_size: int
    complete: bool
    entries: List[CensusEntry]

    @property
    def total_class_size(self) -> int:
        return sum(e.class_size for e in self.entries)


def bicentral_equivalence_census(
    m: int,
    n: int,
    source: Literal["enumeration", "constructed"] = "enumeration",
    max_nodes: Optional[int] = None,
    workers: int = 1,
) -> CensusReport:
    """
    Size of every equivalence class of standard bicentrally balanced labelings.

    The expected class size is beta(m) 2^m0 beta(n) 2^n0; the rectangular
    symmetry group sits inside the elementary operations, so the expected
    quotient is a quarter of that.
    """
    dims = Dims(m, n)
    dims.require_odd()
    expected = beta(m) * 2 ** dims.m0 * beta(n) * 2 ** dims.n0
    complete = True

    if source == "enumeration":
        S = 2 * dims.size + 3
        report = enumerate_all(SearchConfig(
            m=m, n=n, value_filter=S, pruning="lemma", workers=workers, max_nodes=max_nodes,
        ))
        complete = report.complete
        seeds: Iterable[Labeling] = report.labelings(S)
    else:
        seeds = constructed_labelings(m, n).values()

    standards = sorted({standardize(L).labels for L in seeds})
    entries = []
    for labels in standards:
        members = equivalence_class(Labeling(dims, labels))
        rect = {canonical_labels(dims, L.labels, grid.RECTANGULAR_GROUP) for L in members}
        full = {canonical_labels(dims, L.labels) for L in members}
        entries.append(CensusEntry(
            standard=labels,
            class_size=len(members),
            rect_quotient=len(rect),
            full_quotient=len(full),
            matches_expected=len(members) == expected and len(rect) * 4 == expected,
        ))

    logger.info(
        "Census finished",
        m=m,
        n=n,
        source=source,
        classes=len(entries),
        expected_class_size=expected,
        complete=complete,
    )
    return CensusReport(
        m=m,
        n=n,
        source=source,
        expected_class_size=expected,
        complete=complete,
        entries=entries,
    )
