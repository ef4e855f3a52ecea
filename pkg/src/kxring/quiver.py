"""Representation ring of a cyclic quiver of type A~_n.

Indecomposables are strings ``S(i, j)`` (basis e_i..e_j, e_s at vertex s mod
n+1, consecutive vectors joined by the arrow between their vertices) and bands
``B_f(s)`` (k[x]/f^s at every vertex, identities on every arrow except the
last, which acts by x).  Strings span an ideal on which a band acts by its
dimension; band products are those of the loop quiver.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .fields import Field
from .linalg import ExactMatrix, companion
from .poly import Polynomial, format_poly
from .repring import Band, Nil, RingElement, tensor as band_product
from .representation import QuiverShape, Representation, zero_map


@dataclass(frozen=True)
class StringDesc:
    """String starting at vertex ``i`` (stored mod n+1) with ``length`` arrows."""

    i: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.i < 0:
            raise ValueError("string needs i >= 0 and length >= 0")

    @classmethod
    def from_ends(cls, i: int, j: int, n: int) -> "StringDesc":
        if j < i:
            raise ValueError(f"empty string S({i},{j})")
        return cls(i % (n + 1), j - i)

    @property
    def j(self) -> int:
        return self.i + self.length

    def dim_vector(self, shape: QuiverShape) -> tuple:
        dims = [0] * shape.vertices
        for s in range(self.i, self.j + 1):
            dims[s % shape.vertices] += 1
        return tuple(dims)


@dataclass(frozen=True)
class BandDesc:
    """Band with k[x]/f^s at each vertex."""

    f: Polynomial
    s: int

    @classmethod
    def checked(cls, f: Polynomial, s: int) -> "BandDesc":
        b = Band.checked(f, s)
        return cls(b.f, b.s)

    def as_band(self) -> Band:
        return Band(self.f, self.s)

    def dim_vector(self, shape: QuiverShape) -> tuple:
        return (self.s * self.f.degree,) * shape.vertices


QuiverDesc = Union[StringDesc, BandDesc]


def _sort_key(d: QuiverDesc):
    if isinstance(d, StringDesc):
        return (0, d.i, -d.length)
    return (1, d.f.sort_key(), -d.s)


def describe(d: QuiverDesc) -> str:
    if isinstance(d, StringDesc):
        return f"S({d.i},{d.j})"
    return f"B({format_poly(d.f).replace(' ', '')},{d.s})"


class QuiverRingElement:
    """Integer combination of strings and bands for one shape and field."""

    __slots__ = ("shape", "field", "terms")

    def __init__(self, shape: QuiverShape, field: Field, terms: Mapping | Iterable = ()):
        self.shape = shape
        self.field = field
        acc: dict = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for d, c in items:
            if isinstance(d, StringDesc) and d.i > shape.n:
                d = StringDesc(d.i % shape.vertices, d.length)
            acc[d] += c
        self.terms = {d: acc[d] for d in sorted((d for d in acc if acc[d]), key=_sort_key)}

    @classmethod
    def of(cls, shape: QuiverShape, field: Field, d: QuiverDesc, c: int = 1):
        return cls(shape, field, {d: c})

    @classmethod
    def one(cls, shape: QuiverShape, field: Field):
        one = field.one
        return cls(shape, field, {BandDesc(Polynomial(field, (field.neg(one), one), reduced=True), 1): 1})

    def __eq__(self, other):
        if not isinstance(other, QuiverRingElement):
            return NotImplemented
        return (self.shape, self.field, self.terms) == (other.shape, other.field, other.terms)

    def __hash__(self):
        return hash((self.shape, self.field, tuple(self.terms.items())))

    def __repr__(self):
        return f"QuiverRingElement(n={self.shape.n}, {self})"

    def __str__(self):
        parts = []
        for d, c in self.terms.items():
            body = describe(d)
            term = body if abs(c) == 1 else f"{abs(c)}*{body}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append((" + " if c > 0 else " - ") + term)
        return "".join(parts) if parts else "0"

    def __iter__(self):
        return iter(self.terms.items())

    def _same(self, other):
        if self.shape != other.shape or self.field != other.field:
            raise ValueError("quiver elements over different shapes or fields")

    def __add__(self, other):
        self._same(other)
        return QuiverRingElement(self.shape, self.field, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return QuiverRingElement(self.shape, self.field, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return QuiverRingElement(self.shape, self.field, {d: k * c for d, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return qring_mul(self, other)

    __rmul__ = __mul__

    def dim_vector(self) -> tuple:
        out = [0] * self.shape.vertices
        for d, c in self.terms.items():
            for v, k in enumerate(d.dim_vector(self.shape)):
                out[v] += c * k
        return tuple(out)

    @property
    def dim(self) -> int:
        return sum(self.dim_vector())


# -- the three product clauses ----------------------------------------------


def string_tensor(a: StringDesc, b: StringDesc, n: int) -> dict:
    """Decompose S(i,j) (x) S(i',j') as a {StringDesc: multiplicity} map.

    With the pair ordered so that i' <= i (both in 0..n) the summands are
    S(i, min(j, j' - k(n+1))) for 0 <= k <= floor((j'-i)/(n+1)) and
    S(i', min(j', j - k(n+1))) for 1 <= k <= floor((j-i')/(n+1)).
    Each comes from one diagonal {(e_s, e'_t) : t - s = const} of the basis.
    """
    N = n + 1
    a = StringDesc(a.i % N, a.length)
    b = StringDesc(b.i % N, b.length)
    if b.i > a.i:
        a, b = b, a
    i, j, i2, j2 = a.i, a.j, b.i, b.j
    out: dict = defaultdict(int)
    for k in range(0, (j2 - i) // N + 1):
        out[StringDesc.from_ends(i, min(j, j2 - k * N), n)] += 1
    for k in range(1, (j - i2) // N + 1):
        out[StringDesc.from_ends(i2, min(j2, j - k * N), n)] += 1
    return dict(out)


def string_band_tensor(a: StringDesc, b: BandDesc) -> dict:
    return {a: b.s * b.f.degree}


def band_band_tensor(a: BandDesc, b: BandDesc, field: Field) -> dict:
    prod = band_product(field, a.as_band(), b.as_band())
    return {BandDesc(d.f, d.s): c for d, c in prod.terms.items()}


def _pair(shape: QuiverShape, field: Field, a: QuiverDesc, b: QuiverDesc) -> dict:
    if isinstance(a, StringDesc) and isinstance(b, StringDesc):
        return string_tensor(a, b, shape.n)
    if isinstance(a, StringDesc):
        return string_band_tensor(a, b)
    if isinstance(b, StringDesc):
        return string_band_tensor(b, a)
    return band_band_tensor(a, b, field)


def qring_mul(a: QuiverRingElement, b: QuiverRingElement) -> QuiverRingElement:
    a._same(b)
    acc: dict = defaultdict(int)
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            for d, c in _pair(a.shape, a.field, da, db).items():
                acc[d] += ca * cb * c
    return QuiverRingElement(a.shape, a.field, acc)


# -- explicit matrices -----------------------------------------------------------


def realize(d: QuiverDesc, shape: QuiverShape, field: Field, band_arrow: int | None = None) -> Representation:
    """Matrices for a string or band.

    ``band_arrow`` picks which arrow carries the companion matrix of f^s
    (default: the last one, n).
    """
    V = shape.vertices
    if isinstance(d, BandDesc):
        size = d.s * d.f.degree
        cm = companion(d.f ** d.s)
        which = shape.n if band_arrow is None else band_arrow
        maps = tuple(cm if x == which else ExactMatrix.identity(field, size) for x in range(V))
        return Representation(shape, field, (size,) * V, maps)
    # strings: local index of each basis vector inside its vertex space
    dims = [0] * V
    local = {}
    for s in range(d.i, d.j + 1):
        v = s % V
        local[s] = dims[v]
        dims[v] += 1
    entries: list = [dict() for _ in range(V)]
    for s in range(d.i, d.j):
        x = s % V  # edge between e_s and e_{s+1}
        if shape.orientation[x]:
            entries[x][(local[s + 1], local[s])] = field.one
        else:
            entries[x][(local[s], local[s + 1])] = field.one
    maps = []
    for x in range(V):
        rows, cols = dims[shape.target(x)], dims[shape.source(x)]
        m = zero_map(field, rows, cols)
        if entries[x]:
            grid = [list(r) for r in m.rows]
            for (r, c), val in entries[x].items():
                grid[r][c] = val
            m = ExactMatrix(field, grid, ncols=cols)
        maps.append(m)
    return Representation(shape, field, tuple(dims), tuple(maps))


# -- loop quiver bridge ----------------------------------------------------------


def to_repring(e: QuiverRingElement) -> RingElement:
    """n = 0: S(0, j) is k[x]/x^(j+1) and B_f(s) is k[x]/f^s."""
    if e.shape.n != 0:
        raise ValueError("only the loop quiver identifies with k[x]-modules")
    terms = {}
    for d, c in e.terms.items():
        terms[Nil(d.length + 1) if isinstance(d, StringDesc) else d.as_band()] = c
    return RingElement(e.field, terms)


def from_repring(e: RingElement) -> QuiverRingElement:
    shape = QuiverShape(0)
    terms = {}
    for d, c in e.terms.items():
        if isinstance(d, Nil):
            terms[StringDesc(0, d.s - 1)] = c
        elif isinstance(d, Band):
            terms[BandDesc(d.f, d.s)] = c
        else:
            raise ValueError("real-closed blocks have no quiver counterpart")
    return QuiverRingElement(shape, e.field, terms)
