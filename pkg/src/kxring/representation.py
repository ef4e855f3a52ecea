"""Explicit representations of a cyclic quiver with n+1 vertices.

Edge ``x`` joins vertices x and x+1 (mod n+1).  ``orientation[x]`` True means
the arrow points a_x -> a_{x+1}; the default shape points every arrow that way.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field
from .linalg import ExactMatrix, kronecker


@dataclass(frozen=True)
class QuiverShape:
    n: int
    orientation: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if not self.orientation:
            object.__setattr__(self, "orientation", (True,) * (self.n + 1))
        else:
            object.__setattr__(self, "orientation", tuple(bool(o) for o in self.orientation))
        if len(self.orientation) != self.n + 1:
            raise ValueError("need one orientation flag per edge")

    @property
    def vertices(self) -> int:
        return self.n + 1

    def source(self, x: int) -> int:
        return x if self.orientation[x] else (x + 1) % self.vertices

    def target(self, x: int) -> int:
        return (x + 1) % self.vertices if self.orientation[x] else x

    def is_cyclic(self) -> bool:
        o = self.orientation
        return all(o) or not any(o)


@dataclass(frozen=True)
class Representation:
    """Vector space dimensions per vertex and one matrix per arrow (target x source)."""

    shape: QuiverShape
    field: Field
    dims: tuple
    maps: tuple = dc_field(default=())

    def __post_init__(self):
        if len(self.dims) != self.shape.vertices or len(self.maps) != self.shape.vertices:
            raise ValueError("representation needs a space per vertex and a map per arrow")
        for x, m in enumerate(self.maps):
            want = (self.dims[self.shape.target(x)], self.dims[self.shape.source(x)])
            if m.shape != want:
                raise ValueError(f"arrow {x} has shape {m.shape}, expected {want}")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


def _mat(field: Field, rows: int, cols: int, entries=None) -> ExactMatrix:
    m = [[field.zero] * cols for _ in range(rows)]
    for (i, j), v in (entries or {}).items():
        m[i][j] = v
    return ExactMatrix(field, m, ncols=cols)


def zero_map(field: Field, rows: int, cols: int) -> ExactMatrix:
    return _mat(field, rows, cols)


def tensor_rep(a: Representation, b: Representation) -> Representation:
    """Vertex-wise tensor product; arrows act diagonally."""
    if a.shape != b.shape:
        raise ValueError("representations of different quivers")
    dims = tuple(x * y for x, y in zip(a.dims, b.dims))
    maps = []
    for x, (ma, mb) in enumerate(zip(a.maps, b.maps)):
        if ma.nrows * mb.nrows == 0 or ma.ncols * mb.ncols == 0:
            maps.append(zero_map(a.field, ma.nrows * mb.nrows, ma.ncols * mb.ncols))
        else:
            maps.append(kronecker(ma, mb))
    return Representation(a.shape, a.field, dims, tuple(maps))


def _block_diag(field: Field, blocks: list) -> ExactMatrix:
    rows = sum(b.nrows for b in blocks)
    cols = sum(b.ncols for b in blocks)
    out = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = r
        r0 += b.nrows
        c0 += b.ncols
    return ExactMatrix(field, out, ncols=cols)


def direct_sum_rep(reps: list, shape: QuiverShape, field: Field) -> Representation:
    if not reps:
        z = tuple(0 for _ in range(shape.vertices))
        return Representation(shape, field, z, tuple(zero_map(field, 0, 0) for _ in z))
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(shape.vertices))
    maps = tuple(_block_diag(field, [r.maps[x] for r in reps]) for x in range(shape.vertices))
    return Representation(shape, field, dims, maps)


__all__ = ["QuiverShape", "Representation", "tensor_rep", "direct_sum_rep", "zero_map"]
