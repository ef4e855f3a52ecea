"""Brute-force verifiers that never consult the product formulas.

* :func:`verify_module_product` compares invariant factors of a Kronecker
  product with those of a predicted block-diagonal matrix.
* :func:`jordan_type_unipotent` recovers a partition from the ranks of powers
  of ``M - lam I``.
* :func:`generic_decompose` splits a quiver representation into
  indecomposables using random elements of its endomorphism algebra.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (CapExceeded, DegreeTooLarge, DimensionMismatch, Inconclusive,
                     NotUnipotent, UnsupportedField)
from .fields import Field, PrimeField, Rationals, RealClosedModel
from .linalg import (ExactMatrix, InvariantFactors, charpoly, column_space, companion,
                     from_columns, inverse, invariant_factors, jordan_block, kronecker,
                     nullspace, poly_at_matrix, rank, real_block, sparse_nullspace, trace,
                     direct_sum)
from .poly import QQ_DEGREE_CAP, Polynomial, embed_rational, factor, squarefree_decomposition
from .repring import Band, JBlock, Nil, RBlock
from .representation import Representation

GENERIC_DIM_CAP = 64
DEFAULT_DRAWS = 8


# -- Jordan type from ranks -----------------------------------------------------


@dataclass(frozen=True)
class JordanType:
    partition: tuple

    def __post_init__(self):
        object.__setattr__(self, "partition", tuple(sorted(self.partition, reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.partition)

    def multiplicities(self) -> dict:
        return dict(Counter(self.partition))


def _rank_powers_mod_p(m: ExactMatrix, lam, p: int) -> list:
    n = m.nrows
    a = np.array(m.rows, dtype=np.int64) % p
    a[np.diag_indices(n)] = (a[np.diag_indices(n)] - int(lam)) % p
    from .linalg import _matmul_mod_p, _rank_mod_p

    ranks = [n]
    power = a.copy()
    while True:
        r = _rank_mod_p(power, p)
        if r == ranks[-1] and r > 0:
            raise NotUnipotent(f"M - {lam}I is not nilpotent")
        ranks.append(r)
        if r == 0:
            return ranks
        power = _matmul_mod_p(power, a, p)


def _rank_powers(m: ExactMatrix, lam) -> list:
    F = m.field
    n = m.nrows
    shifted = m - ExactMatrix.identity(F, n).scale(embed_rational(F, lam))
    ranks = [n]
    power = shifted
    while True:
        r = rank(power)
        if r == ranks[-1] and r > 0:
            raise NotUnipotent(f"M - {lam}I is not nilpotent")
        ranks.append(r)
        if r == 0:
            return ranks
        power = power @ shifted


def rank_sequence(m: ExactMatrix, lam) -> list:
    """``[r_0, r_1, ..., 0]`` with ``r_j = rank((M - lam I)^j)``."""
    F = m.field
    if m.nrows == 0:
        return [0]
    if isinstance(F, PrimeField) and F.p < (1 << 20):
        return _rank_powers_mod_p(m, lam, F.p)
    return _rank_powers(m, lam)


def jordan_type_unipotent(m: ExactMatrix, lam) -> JordanType:
    """Block sizes of ``M`` at eigenvalue ``lam`` (M - lam I must be nilpotent)."""
    r = rank_sequence(m, lam) + [0]
    parts = []
    for j in range(1, len(r) - 1):
        mult = r[j - 1] - 2 * r[j] + r[j + 1]
        parts.extend([j] * mult)
    return JordanType(tuple(parts))


# -- invariant-factor comparison ---------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    match: bool
    lhs_fingerprint: InvariantFactors
    rhs_fingerprint: InvariantFactors
    elapsed: float


def matrix_field(field: Field) -> Field:
    """Matrices for the real-closed model live over Q (similarity descends)."""
    return Rationals() if isinstance(field, RealClosedModel) else field


def block_matrix(d, field: Field) -> ExactMatrix:
    """Matrix of x acting on an indecomposable descriptor."""
    F = matrix_field(field)
    if isinstance(d, Nil):
        return jordan_block(F, 0, d.s)
    if isinstance(d, Band):
        return companion(d.f ** d.s)
    if isinstance(d, JBlock):
        return jordan_block(F, d.lam, d.s)
    if isinstance(d, RBlock):
        return real_block(d.lam, d.s, F)
    raise TypeError(f"cannot realize {d!r}")


def _descriptor_dim(d) -> int:
    return d.dim


def predicted_matrix(predicted, field: Field) -> ExactMatrix:
    blocks = []
    for d, c in predicted:
        if c < 0:
            raise ValueError("predicted decomposition has a negative coefficient")
        blocks.extend([block_matrix(d, field)] * c)
    return direct_sum(*blocks, field=matrix_field(field))


def verify_module_product(a, b, predicted, field: Field | None = None) -> VerificationReport:
    """Check ``a (x) b`` against a predicted decomposition by invariant factors.

    ``predicted`` is a RingElement or an iterable of (descriptor, multiplicity).
    """
    start = time.perf_counter()
    field = field if field is not None else predicted.field
    items = list(predicted.terms.items()) if hasattr(predicted, "terms") else list(predicted)
    want = _descriptor_dim(a) * _descriptor_dim(b)
    got = sum(c * _descriptor_dim(d) for d, c in items)
    if got != want:
        raise DimensionMismatch(f"prediction has dimension {got}, product has {want}")
    lhs = invariant_factors(kronecker(block_matrix(a, field), block_matrix(b, field)))
    rhs = invariant_factors(predicted_matrix(items, field))
    return VerificationReport(lhs == rhs, lhs, rhs, time.perf_counter() - start)


# -- generic decomposition of quiver representations ----------------------------


@dataclass(frozen=True)
class Summand:
    dims: tuple
    fingerprint: tuple
    rep: Representation


def cycle_composite(rep: Representation) -> ExactMatrix | None:
    """Composite of all arrows around the cycle at vertex 0 (cyclic orientations only)."""
    shape = rep.shape
    if not shape.is_cyclic():
        return None
    F = rep.field
    d0 = rep.dims[0]
    out = ExactMatrix.identity(F, d0)
    order = range(shape.vertices) if shape.orientation[0] else reversed(range(shape.vertices))
    for x in order:
        out = rep.maps[x] @ out
    return out


def fingerprint(rep: Representation) -> tuple:
    """(dimension vector, arrow ranks, invariant factors of the cycle composite)."""
    ranks = tuple(rank(m) for m in rep.maps)
    comp = cycle_composite(rep)
    inv = () if comp is None or comp.nrows == 0 else tuple(invariant_factors(comp).factors)
    return (tuple(rep.dims), ranks, inv)


class _Splitter:
    def __init__(self, field: Field, rng: random.Random, draws: int):
        if not isinstance(field, (Rationals, PrimeField)) or isinstance(field, RealClosedModel):
            raise UnsupportedField("generic decomposition runs over Q or F_p")
        self.F = field
        self.rng = rng
        self.draws = draws

    # endomorphisms are tuples of per-vertex matrices

    def end_basis(self, rep: Representation) -> list:
        F = self.F
        dims = rep.dims
        offs, total = [], 0
        for d in dims:
            offs.append(total)
            total += d * d

        def idx(v, r, c):
            return offs[v] + r * dims[v] + c

        rows = []
        for x, a in enumerate(rep.maps):
            u, w = rep.shape.source(x), rep.shape.target(x)
            for r in range(dims[w]):
                for c in range(dims[u]):
                    row: dict = {}
                    for k in range(dims[w]):
                        val = a.rows[k][c]
                        if not F.is_zero(val):
                            j = idx(w, r, k)
                            row[j] = F.add(row.get(j, F.zero), val)
                    for k in range(dims[u]):
                        val = a.rows[r][k]
                        if not F.is_zero(val):
                            j = idx(u, k, c)
                            row[j] = F.sub(row.get(j, F.zero), val)
                    if row:
                        rows.append(row)
        basis = sparse_nullspace(rows, total, F)
        out = []
        for vec in basis:
            mats = []
            for v, d in enumerate(dims):
                o = offs[v]
                mats.append(ExactMatrix(F, [vec[o + r * d:o + (r + 1) * d] for r in range(d)], ncols=d))
            out.append(tuple(mats))
        return out

    def coeff(self):
        if isinstance(self.F, PrimeField):
            return self.rng.randrange(self.F.p)
        return embed_rational(self.F, self.rng.randint(-5, 5))

    def combine(self, basis: list, coeffs: Sequence, dims) -> tuple:
        F = self.F
        out = []
        for v, d in enumerate(dims):
            acc = [[F.zero] * d for _ in range(d)]
            for c, e in zip(coeffs, basis):
                if F.is_zero(c):
                    continue
                for r in range(d):
                    row, src = acc[r], e[v].rows[r]
                    for k in range(d):
                        if not F.is_zero(src[k]):
                            row[k] = F.add(row[k], F.mul(c, src[k]))
            out.append(ExactMatrix(F, acc, ncols=d))
        return tuple(out)

    def random_element(self, basis: list, dims) -> tuple:
        return self.combine(basis, [self.coeff() for _ in basis], dims)

    # splitting a representation along a direct-sum decomposition of every vertex

    def split(self, rep: Representation, parts: list) -> list:
        F = self.F
        shape = rep.shape
        P, Pinv, sizes = [], [], []
        for v, d in enumerate(rep.dims):
            cols = [vec for part in parts for vec in part[v]]
            sizes.append([len(part[v]) for part in parts])
            mat = from_columns(F, d, cols)
            P.append(mat)
            Pinv.append(inverse(mat) if d else mat)
        subs = []
        for pi in range(len(parts)):
            dims = tuple(sizes[v][pi] for v in range(shape.vertices))
            maps = []
            for x, a in enumerate(rep.maps):
                u, w = shape.source(x), shape.target(x)
                full = Pinv[w] @ a @ P[u] if rep.dims[u] and rep.dims[w] else None
                r0 = sum(sizes[w][:pi])
                c0 = sum(sizes[u][:pi])
                rows = [list(full.rows[r0 + r][c0:c0 + dims[u]]) if full else [F.zero] * dims[u]
                        for r in range(dims[w])]
                maps.append(ExactMatrix(F, rows, ncols=dims[u]))
            subs.append(Representation(shape, F, dims, tuple(maps)))
        return subs

    def eigen_split(self, rep: Representation, phi: tuple):
        F = self.F
        char = Polynomial.one(F)
        for m in phi:
            if m.nrows:
                char = char * charpoly(m)
        if char.degree < 1:
            return None
        sqf = squarefree_decomposition(char)
        radical = Polynomial.one(F)
        for g, _ in sqf:
            radical = radical * g
        pieces = [g for g, _ in sqf]
        try:
            if radical.degree <= QQ_DEGREE_CAP or not isinstance(F, Rationals):
                pieces = [h for h, _ in factor(radical).factors]
        except DegreeTooLarge:
            pass
        if len(pieces) < 2:
            return None
        parts = []
        for h in pieces:
            part = []
            for v, m in enumerate(phi):
                d = m.nrows
                if d == 0:
                    part.append([])
                    continue
                part.append(nullspace(poly_at_matrix(h, m) ** d))
            parts.append(part)
        parts = [p for p in parts if any(p)]
        return parts if len(parts) > 1 else None

    def fitting_split(self, rep: Representation, psi: tuple):
        parts_img, parts_ker = [], []
        for m in psi:
            d = m.nrows
            if d == 0:
                parts_img.append([])
                parts_ker.append([])
                continue
            pw = m ** d
            parts_img.append(column_space(pw))
            parts_ker.append(nullspace(pw))
        if any(parts_img) and any(parts_ker):
            return [parts_img, parts_ker]
        return None

    def annihilator_element(self, rep: Representation, basis: list, dual: bool, where=None):
        """Random element of End killing a random vector (or covector when
        ``dual``).  ``where`` fixes the vertex and the subspace to draw from;
        by default the socle (top) at a random vertex is used."""
        F = self.F
        shape = rep.shape
        if where is not None:
            v0, space = where
            return self._killing(rep, basis, v0, [list(b) for b in space], False)
        verts = [v for v, d in enumerate(rep.dims) if d]
        v0 = self.rng.choice(verts)
        d = rep.dims[v0]
        if not dual:
            # socle at v0: killed by every arrow leaving v0
            outgoing = [rep.maps[x] for x in range(shape.vertices) if shape.source(x) == v0]
            stacked = [list(r) for m in outgoing for r in m.rows]
            space = nullspace(ExactMatrix(F, stacked, ncols=d)) if stacked else None
        else:
            # top at v0: covectors vanishing on every arrow entering v0
            incoming = [rep.maps[x] for x in range(shape.vertices) if shape.target(x) == v0]
            stacked = [list(r) for m in incoming for r in m.transpose().rows]
            space = nullspace(ExactMatrix(F, stacked, ncols=d)) if stacked else None
        if space is None:
            space = [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]
        return self._killing(rep, basis, v0, space, dual)

    def _killing(self, rep: Representation, basis: list, v0: int, space: list, dual: bool):
        F = self.F
        d = rep.dims[v0]
        if not space:
            return None
        vec = [F.zero] * d
        for b in space:
            c = self.coeff()
            vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, b)]
        if all(F.is_zero(x) for x in vec):
            return None
        cols = []
        for e in basis:
            m = e[v0]
            if not dual:
                cols.append([sum_f(F, (F.mul(m.rows[r][k], vec[k]) for k in range(d))) for r in range(d)])
            else:
                cols.append([sum_f(F, (F.mul(vec[k], m.rows[k][c]) for k in range(d))) for c in range(d)])
        system = from_columns(F, d, cols)
        ann = nullspace(system)
        if not ann:
            return None
        coeffs = [F.zero] * len(basis)
        for b in ann:
            c = self.coeff()
            coeffs = [F.add(x, F.mul(c, y)) for x, y in zip(coeffs, b)]
        return self.combine(basis, coeffs, rep.dims)

    # certification that the endomorphism algebra is local

    def is_local(self, rep: Representation, basis: list) -> bool:
        F = self.F
        k = len(basis)
        if k == 1:
            return True
        if F.characteristic == 0:
            gram = [[sum_f(F, (trace(a[v] @ b[v]) for v in range(len(rep.dims)) if rep.dims[v]))
                     for b in basis] for a in basis]
            q = rank(ExactMatrix(F, gram))
        else:
            if not self._commutative(basis, rep.dims):
                return False
            p = F.characteristic
            e = 1
            while p ** e < sum(rep.dims):
                e += 1
            cols = []
            for b in basis:
                powered = [m ** (p ** e) if m.nrows else m for m in b]
                cols.append([x for m in powered for x in m.entries])
            q = rank(from_columns(F, len(cols[0]), cols))
        if q == 1:
            return True
        for _ in range(self.draws):
            if self._generates_residue_field(rep, basis, q):
                return True
        return False

    def _generates_residue_field(self, rep: Representation, basis: list, q: int) -> bool:
        # a random element whose semisimple part has irreducible minimal
        # polynomial of degree q = dim(End/rad) generates End/rad as a field
        F = self.F
        phi = self.random_element(basis, rep.dims)
        radical = None
        for m in phi:
            if not m.nrows:
                continue
            sqf = squarefree_decomposition(charpoly(m))
            r = Polynomial.one(F)
            for g, _ in sqf:
                r = r * g
            if radical is None:
                radical = r
            elif r != radical:
                return False
        if radical is None or radical.degree != q:
            return False
        try:
            return len(factor(radical).factors) == 1
        except DegreeTooLarge:
            return False

    def _commutative(self, basis, dims) -> bool:
        for i, a in enumerate(basis):
            for b in basis[i + 1:]:
                for v, d in enumerate(dims):
                    if d and a[v] @ b[v] != b[v] @ a[v]:
                        return False
        return True

    def try_split(self, rep: Representation, basis: list):
        minimal = None
        for _ in range(self.draws):
            parts = self.eigen_split(rep, self.random_element(basis, rep.dims))
            if parts:
                return parts
            for dual in (False, True):
                psi = self.annihilator_element(rep, basis, dual)
                if psi is None:
                    continue
                parts = self.fitting_split(rep, psi)
                if parts:
                    return parts
            # random vectors of a socle may mix isomorphic summands (End has a
            # matrix-algebra quotient); draw from a minimal functorial subspace
            if minimal is None:
                minimal = minimal_functorial_subspaces(rep)
            if minimal:
                psi = self.annihilator_element(rep, basis, False, where=self.rng.choice(minimal))
                parts = self.fitting_split(rep, psi) if psi is not None else None
                if parts:
                    return parts
        return None


# -- subspaces preserved by every endomorphism ------------------------------------


def _span(F: Field, d: int, vecs) -> tuple:
    """Reduced echelon basis of the span of ``vecs`` inside k^d."""
    vecs = [list(v) for v in vecs if any(not F.is_zero(x) for x in v)]
    if not vecs:
        return ()
    return tuple(tuple(r) for r in column_space(from_columns(F, d, vecs)))


def _annihilator_rows(F: Field, d: int, X: tuple) -> list:
    if not X:
        return [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]
    return nullspace(ExactMatrix(F, X, ncols=d))


def _image(a: ExactMatrix, X: tuple) -> tuple:
    F = a.field
    if not X:
        return ()
    cols = a @ from_columns(F, a.ncols, [list(x) for x in X])
    return _span(F, a.nrows, [list(c) for c in zip(*cols.rows)])


def _preimage(a: ExactMatrix, Y: tuple) -> tuple:
    """``{x : a x in Y}``."""
    F = a.field
    ann = _annihilator_rows(F, a.nrows, Y)
    if not ann:
        return _span(F, a.ncols, _annihilator_rows(F, a.ncols, ()))
    return _span(F, a.ncols, nullspace(ExactMatrix(F, ann, ncols=a.nrows) @ a))


def _intersect(F: Field, d: int, X: tuple, Y: tuple) -> tuple:
    if not X or not Y:
        return ()
    ann = _annihilator_rows(F, d, Y)
    if not ann:
        return X
    xs = from_columns(F, d, [list(x) for x in X])
    coeffs = nullspace(ExactMatrix(F, ann, ncols=d) @ xs)
    return _span(F, d, [[sum_f(F, (F.mul(c, x[i]) for c, x in zip(cf, X))) for i in range(d)]
                        for cf in coeffs])


def minimal_functorial_subspaces(rep: Representation, rounds: int = 3, cap: int = 64) -> list:
    """Smallest nonzero subspaces found by closing {0, V_v} under images and
    preimages along arrows and pairwise intersections; every endomorphism
    preserves them.  Returns ``[(vertex, basis), ...]``."""
    F = rep.field
    shape, dims = rep.shape, rep.dims
    full = [_span(F, d, _annihilator_rows(F, d, ())) for d in dims]
    spaces = [{(), full[v]} if dims[v] else set() for v in range(len(dims))]
    for _ in range(rounds):
        grown = [set(sp) for sp in spaces]
        for x, a in enumerate(rep.maps):
            u, w = shape.source(x), shape.target(x)
            if not dims[u] or not dims[w]:
                continue
            for X in spaces[u]:
                grown[w].add(_image(a, X))
            for Y in spaces[w]:
                grown[u].add(_preimage(a, Y))
        for v, d in enumerate(dims):
            fresh = [X for X in grown[v] if X not in spaces[v]]
            for X in fresh:
                for Y in list(grown[v]):
                    if len(grown[v]) >= cap:
                        break
                    grown[v].add(_intersect(F, d, X, Y))
        if grown == spaces:
            break
        spaces = grown
    found = [(v, X) for v in range(len(dims)) for X in spaces[v] if X]
    if not found:
        return []
    low = min(len(X) for _, X in found)
    return sorted(((v, X) for v, X in found if len(X) == low), key=lambda t: t[0])


def sum_f(F: Field, values: Iterable):
    acc = F.zero
    for v in values:
        acc = F.add(acc, v)
    return acc


def generic_decompose(rep: Representation, field: Field | None = None, *, seed: int = 0,
                      draws: int = DEFAULT_DRAWS, max_dim: int = GENERIC_DIM_CAP) -> list:
    """Split ``rep`` into indecomposable summands.

    Returns :class:`Summand` records sorted by fingerprint.  Raises
    :class:`Inconclusive` when no split is found but the endomorphism algebra
    cannot be certified local.
    """
    field = field or rep.field
    if rep.total_dim > max_dim:
        raise CapExceeded(f"representation of dimension {rep.total_dim} exceeds {max_dim}")
    splitter = _Splitter(field, random.Random(seed), draws)
    stack = [rep] if rep.total_dim else []
    done = []
    while stack:
        cur = stack.pop()
        basis = splitter.end_basis(cur)
        if len(basis) > 1:
            parts = splitter.try_split(cur, basis)
            if parts:
                stack.extend(s for s in splitter.split(cur, parts) if s.total_dim)
                continue
            if not splitter.is_local(cur, basis):
                raise Inconclusive(
                    f"no split found for dims {cur.dims} with endomorphism dimension {len(basis)}")
        done.append(Summand(tuple(cur.dims), fingerprint(cur), cur))
    done.sort(key=lambda s: _fp_key(s.fingerprint))
    return done


def _fp_key(fp) -> tuple:
    dims, ranks, inv = fp
    return (dims, ranks, tuple(f.sort_key() for f in inv))


def fingerprint_multiset(reps: Iterable[Representation]) -> Counter:
    return Counter(fingerprint(r) for r in reps)
