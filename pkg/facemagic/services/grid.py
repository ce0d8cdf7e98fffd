"""
Projective Grid Geometry

Features:
- Vertices, quadrilateral faces and digons of the projective grid P(m,n)
- Symmetry group induced by plane isometries (4 or 8 elements)
- Coordinate actions, composition and inverses
- Cached row-major index tables for the search and labeling kernels
"""

from functools import lru_cache
from typing import Dict, List, Tuple

from facemagic.errors import GridError
from facemagic.models import Digon, Dims, QuadFace, Symmetry, Vertex


RECTANGULAR_GROUP: Tuple[Symmetry, ...] = (Symmetry.R0, Symmetry.R180, Symmetry.H, Symmetry.V)
DIHEDRAL_GROUP: Tuple[Symmetry, ...] = (
    Symmetry.R0, Symmetry.R90, Symmetry.R180, Symmetry.R270,
    Symmetry.H, Symmetry.V, Symmetry.D_PLUS, Symmetry.D_MINUS,
)

_INVERSES: Dict[Symmetry, Symmetry] = {
    Symmetry.R90: Symmetry.R270,
    Symmetry.R270: Symmetry.R90,
}


# ============================================================
# Vertices & Faces
# ============================================================

def vertices(dims: Dims) -> List[Vertex]:
    """All vertices in row-major order (row j = 1 first)."""
    return [Vertex(i, j) for j in range(1, dims.n + 1) for i in range(1, dims.m + 1)]


def check_vertex(dims: Dims, v: Vertex) -> None:
    if not (1 <= v.i <= dims.m and 1 <= v.j <= dims.n):
        raise GridError(f"Vertex ({v.i},{v.j}) is outside the {dims} grid")


def center(dims: Dims) -> Vertex:
    """Center vertex (m0+1, n0+1) of an odd grid."""
    return Vertex(dims.m0p, dims.n0p)


def is_admissible(dims: Dims) -> bool:
    """P(m,n) has a C4-face-magic labeling iff m and n share parity."""
    return dims.m % 2 == dims.n % 2


@lru_cache(maxsize=256)
def c4_faces(dims: Dims) -> Tuple[QuadFace, ...]:
    """
    All mn-1 quadrilateral faces of P(m,n).

    Order: interior faces (row by row), then the right-left wrap family,
    then the top-bottom wrap family.
    """
    m, n = dims.m, dims.n
    faces: List[QuadFace] = []

    for j in range(1, n):
        for i in range(1, m):
            faces.append(QuadFace(
                (Vertex(i, j), Vertex(i, j + 1), Vertex(i + 1, j + 1), Vertex(i + 1, j)),
                "interior",
            ))

    # Edge (m, j) -> (1, n+1-j)
    for j in range(1, n):
        faces.append(QuadFace(
            (Vertex(m, j), Vertex(m, j + 1), Vertex(1, n - j), Vertex(1, n + 1 - j)),
            "right-left",
        ))

    # Edge (i, n) -> (m+1-i, 1)
    for i in range(1, m):
        faces.append(QuadFace(
            (Vertex(i, n), Vertex(i + 1, n), Vertex(m - i, 1), Vertex(m + 1 - i, 1)),
            "top-bottom",
        ))

    return tuple(faces)


@lru_cache(maxsize=256)
def face_index_table(dims: Dims) -> Tuple[Tuple[int, int, int, int], ...]:
    """Row-major indices of every quad face, in c4_faces order."""
    return tuple(
        tuple(dims.index(v.i, v.j) for v in face.vertices)  # type: ignore[misc]
        for face in c4_faces(dims)
    )


def digons(dims: Dims) -> Tuple[Digon, Digon]:
    """The two corner digons {(1,1),(m,n)} and {(m,1),(1,n)}."""
    return (
        Digon((Vertex(1, 1), Vertex(dims.m, dims.n))),
        Digon((Vertex(dims.m, 1), Vertex(1, dims.n))),
    )


# ============================================================
# Symmetries
# ============================================================

def symmetry_group(dims: Dims) -> Tuple[Symmetry, ...]:
    """{R0, R180, H, V} for rectangles, the dihedral group of order 8 for squares."""
    return DIHEDRAL_GROUP if dims.is_square else RECTANGULAR_GROUP


def check_symmetry(sym: Symmetry, dims: Dims) -> None:
    if sym.square_only and not dims.is_square:
        raise GridError(f"Symmetry {sym.value} needs a square grid, got {dims}")


def apply_symmetry(sym: Symmetry, dims: Dims, v: Vertex) -> Vertex:
    """
    Coordinate action of a symmetry.

    Args:
        sym: Symmetry tag
        dims: Grid dimensions
        v: Vertex to move

    Returns:
        Image vertex
    """
    check_symmetry(sym, dims)
    m, n = dims.m, dims.n
    i, j = v.i, v.j

    if sym is Symmetry.R0:
        return Vertex(i, j)
    if sym is Symmetry.R180:
        return Vertex(m + 1 - i, n + 1 - j)
    if sym is Symmetry.H:
        return Vertex(i, n + 1 - j)
    if sym is Symmetry.V:
        return Vertex(m + 1 - i, j)
    if sym is Symmetry.R90:
        return Vertex(j, m + 1 - i)
    if sym is Symmetry.R270:
        return Vertex(n + 1 - j, i)
    if sym is Symmetry.D_PLUS:
        return Vertex(j, i)
    if sym is Symmetry.D_MINUS:
        return Vertex(m + 1 - j, m + 1 - i)
    raise GridError(f"Unknown symmetry: {sym}")


def inverse(sym: Symmetry) -> Symmetry:
    return _INVERSES.get(sym, sym)


def compose(a: Symmetry, b: Symmetry, dims: Dims) -> Symmetry:
    """The group element acting as a(b(v))."""
    check_symmetry(a, dims)
    check_symmetry(b, dims)
    target = [apply_symmetry(a, dims, apply_symmetry(b, dims, v)) for v in vertices(dims)]
    for c in symmetry_group(dims):
        if all(apply_symmetry(c, dims, v) == w for v, w in zip(vertices(dims), target)):
            return c
    raise GridError(f"Composition of {a.value} and {b.value} left the group on {dims}")


@lru_cache(maxsize=1024)
def symmetry_source_indices(sym: Symmetry, dims: Dims) -> Tuple[int, ...]:
    """
    Index table for moving labels by a symmetry.

    new_labels[t] = labels[src[t]] realises x'_v = x_{sym^-1(v)}.
    """
    check_symmetry(sym, dims)
    src = [0] * dims.size
    for v in vertices(dims):
        w = apply_symmetry(sym, dims, v)
        src[dims.index(w.i, w.j)] = dims.index(v.i, v.j)
    return tuple(src)
