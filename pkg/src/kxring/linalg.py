"""Exact dense matrices and the invariant-factor fingerprint.

Two matrices are similar over k exactly when the Smith normal forms of their
characteristic matrices ``xI - A`` over k[x] agree; :func:`invariant_factors`
returns that divisor chain. Over Q the chain is assembled from rank
sequences of ``g(A)^j`` for the irreducible factors ``g`` of the
characteristic polynomial, which avoids coefficient growth in k[x].
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DegreeTooLarge, RealParameter
from .fields import Field, GaussianRational, PrimeField, Rationals
from .poly import Polynomial, factor, gcd

MAX_SIDE = 4096
_NUMPY_P_LIMIT = 1 << 24


class ExactMatrix:
    """Immutable dense matrix over a :class:`~kxring.fields.Field`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        self.field = field
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)
        if self.nrows > MAX_SIDE or self.ncols > MAX_SIDE:
            raise CapExceeded(f"matrix {self.nrows}x{self.ncols} exceeds the {MAX_SIDE} side cap")
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = rows

    @classmethod
    def from_values(cls, field: Field, rows) -> "ExactMatrix":
        """Rows of ints/Fractions mapped into ``field``."""
        from .poly import embed_rational

        return cls(field, [[embed_rational(field, v) for v in r] for r in rows])

    @classmethod
    def zeros(cls, field: Field, n: int, m: int | None = None) -> "ExactMatrix":
        m = n if m is None else m
        return cls(field, [[field.zero] * m for _ in range(n)], ncols=m)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> list:
        return [v for r in self.rows for v in r]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        return f"ExactMatrix({self.field.tag}, {[list(r) for r in self.rows]})"

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        F = self.field
        return ExactMatrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           ncols=self.ncols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        F = self.field
        return ExactMatrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           ncols=self.ncols)

    def scale(self, c) -> "ExactMatrix":
        F = self.field
        return ExactMatrix(F, [[F.mul(c, a) for a in r] for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        F = self.field
        if 0 in (self.nrows, self.ncols, other.ncols):
            return ExactMatrix.zeros(F, self.nrows, other.ncols)
        if isinstance(F, PrimeField) and F.p < _NUMPY_P_LIMIT:
            a = np.array(self.rows, dtype=np.int64)
            b = np.array(other.rows, dtype=np.int64)
            return ExactMatrix(F, _matmul_mod_p(a, b, F.p).tolist(), ncols=other.ncols)
        if isinstance(F, Rationals):
            return _matmul_rational(self, other)
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        if F.native:
            red = F.reduce
            for r in self.rows:
                nz = [(k, v) for k, v in enumerate(r) if v]
                out.append([red(sum((v * c[k] for k, v in nz), F.zero)) for c in cols])
        else:
            for r in self.rows:
                row = []
                for c in cols:
                    acc = F.zero
                    for a, b in zip(r, c):
                        acc = F.add(acc, F.mul(a, b))
                    row.append(acc)
                out.append(row)
        return ExactMatrix(F, out, ncols=other.ncols)

    def __pow__(self, n: int) -> "ExactMatrix":
        result = ExactMatrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, list(zip(*self.rows)) if self.nrows else [], ncols=self.nrows)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(v == z for r in self.rows for v in r)

    def to_json(self) -> list:
        F = self.field
        if isinstance(F, Rationals):
            return [[str(v) for v in r] for r in self.rows]
        if isinstance(F, PrimeField):
            return [list(r) for r in self.rows]
        return [[list(v) for v in r] for r in self.rows]


# -- rational fast path ------------------------------------------------------


def _common_denominator(rows) -> int:
    den = 1
    for r in rows:
        for v in r:
            d = v.denominator
            if d != 1:
                den = den * d // _gcd(den, d)
    return den


def _scaled_int(rows, den: int) -> list:
    return [[v.numerator * (den // v.denominator) if v else 0 for v in r] for r in rows]


def _matmul_int(a: list, b: list, m: int) -> list:
    out = []
    for r in a:
        acc = [0] * m
        for k, v in enumerate(r):
            if not v:
                continue
            bk = b[k]
            for j in range(m):
                if bk[j]:
                    acc[j] += v * bk[j]
        out.append(acc)
    return out


def _matmul_rational(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    # scale both sides to integers so the inner loop avoids Fraction arithmetic
    da, db = _common_denominator(a.rows), _common_denominator(b.rows)
    ai = _scaled_int(a.rows, da)
    bi = _scaled_int(b.rows, db)
    den = da * db
    out = [[Fraction(x, den) if den != 1 else Fraction(x) for x in r]
           for r in _matmul_int(ai, bi, b.ncols)]
    return ExactMatrix(a.field, out, ncols=b.ncols)


def _primitive(rows: list) -> list:
    g = 0
    for r in rows:
        for v in r:
            if v:
                g = _gcd(g, v)
    return [[v // g for v in r] for r in rows] if g > 1 else rows


def _poly_at_int(f: Polynomial, m: ExactMatrix) -> list:
    """Integer multiple of ``f(M)`` for rational ``M``."""
    n = m.nrows
    dm = _common_denominator(m.rows)
    a = _scaled_int(m.rows, dm)
    dc = _common_denominator([f.coeffs])
    deg = f.degree
    out = [[0] * n for _ in range(n)]
    # f(A/dm) * dc * dm^deg = sum_k (dc c_k dm^(deg-k)) A^k, evaluated by Horner
    for k in range(deg, -1, -1):
        out = _matmul_int(out, a, n) if k < deg else out
        b = int(f.coeffs[k] * dc) * dm ** (deg - k)
        for i in range(n):
            out[i][i] += b
    return _primitive(out)


# -- constructors -------------------------------------------------------------


def jordan_block(field: Field, lam, size: int) -> ExactMatrix:
    """``size`` x ``size`` with ``lam`` on the diagonal and 1 above it."""
    if size < 1:
        raise ValueError("Jordan block size must be positive")
    from .poly import embed_rational

    lam = embed_rational(field, lam)
    z, o = field.zero, field.one
    return ExactMatrix(field, [[lam if i == j else (o if j == i + 1 else z) for j in range(size)]
                               for i in range(size)])


def real_block(lam: GaussianRational, size: int, field: Field | None = None) -> ExactMatrix:
    """Block bidiagonal 2l x 2l matrix: rotation-scaling blocks ``[[a,-b],[b,a]]``
    on the diagonal and 2x2 identities on the superdiagonal."""
    if lam.im == 0:
        raise RealParameter(f"{lam} is real; use a Jordan block")
    field = field or Rationals()
    a, b = lam.re, lam.im
    n = 2 * size
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k in range(size):
        i = 2 * k
        rows[i][i], rows[i][i + 1] = a, -b
        rows[i + 1][i], rows[i + 1][i + 1] = b, a
        if k + 1 < size:
            rows[i][i + 2] = Fraction(1)
            rows[i + 1][i + 3] = Fraction(1)
    return ExactMatrix(field, rows)


def companion(f: Polynomial) -> ExactMatrix:
    """Companion matrix with ones on the subdiagonal and ``-f_i`` in the last column."""
    if f.degree < 1:
        raise ValueError("companion matrix needs a nonconstant polynomial")
    F = f.field
    f = f.monic()
    n = f.degree
    rows = [[F.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = F.one
    for i in range(n):
        rows[i][n - 1] = F.neg(f.coeffs[i])
    return ExactMatrix(F, rows)


def kronecker(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    F = a.field
    if F != b.field:
        raise AssertionError("field mismatch in Kronecker product")
    mul = F.mul
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([mul(x, y) for x in ra for y in rb])
    return ExactMatrix(F, rows, ncols=a.ncols * b.ncols)


def direct_sum(*blocks: ExactMatrix, field: Field | None = None) -> ExactMatrix:
    F = blocks[0].field if blocks else field
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows = [[F.zero] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            rows[r0 + i][c0:c0 + b.ncols] = r
        r0 += b.nrows
        c0 += b.ncols
    return ExactMatrix(F, rows, ncols=m)


# -- elimination ----------------------------------------------------------------


def _matmul_mod_p(a, b, p: int):
    """Exact ``a @ b mod p`` for reduced int64 arrays."""
    bound = a.shape[1] * (p - 1) ** 2
    if bound < 1 << 53:
        # BLAS float product is exact below 2^53
        return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64) % p
    if bound < 1 << 63:
        return (a @ b) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(np.int64)


def _rank_mod_p(rows, p: int) -> int:
    a = np.array(rows, dtype=np.int64) % p
    n, m = a.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        # after the swap the old row r sits at piv and is zero in column c
        hit = r + nz[1:]
        if hit.size:
            # only rows with a nonzero entry in column c, only columns c onwards
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], a[r, c:])) % p
        r += 1
    return r


def _rank_rational(rows) -> int:
    work = []
    for r in rows:
        den = 1
        for v in r:
            den = den * v.denominator // _gcd(den, v.denominator)
        work.append([v.numerator * (den // v.denominator) if v else 0 for v in r])
    return _rank_int(work)


def _rank_int(rows) -> int:
    # fraction-free: eliminate with cross-multiplication, divide by content
    work = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pr = work[rank]
        pc = pr[c]
        for i in range(rank + 1, len(work)):
            ri = work[i]
            f = ri[c]
            if f:
                new = [pc * x - f * y for x, y in zip(ri, pr)]
                g = 0
                for v in new:
                    if v:
                        g = _gcd(g, v)
                        if g == 1:
                            break
                if g > 1:
                    new = [v // g for v in new]
                work[i] = new
        rank += 1
    return rank


def _gcd(a: int, b: int) -> int:
    from math import gcd as g

    return g(a, b)


def _row_echelon(m: ExactMatrix):
    """Reduced row echelon form with pivot columns (generic field path)."""
    F = m.field
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(rows)) if not F.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: ExactMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    F = m.field
    if isinstance(F, PrimeField) and F.p < _NUMPY_P_LIMIT:
        return _rank_mod_p(m.rows, F.p)
    if isinstance(F, Rationals):
        return _rank_rational(m.rows)
    return len(_row_echelon(m)[1])


def nullspace(m: ExactMatrix) -> list:
    """Basis of the right kernel as lists of field elements."""
    F = m.field
    echelon, pivots = _row_echelon(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [F.zero] * m.ncols
        v[fc] = F.one
        for row, pc in zip(echelon, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def nullity(m: ExactMatrix) -> int:
    return len(nullspace(m))


# -- characteristic polynomial ----------------------------------------------


def charpoly(m: ExactMatrix) -> Polynomial:
    """Characteristic polynomial via Hessenberg reduction (any field)."""
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    F = m.field
    n = m.nrows
    h = [list(r) for r in m.rows]
    add, sub, mul = F.add, F.sub, F.mul
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if not F.is_zero(h[i][j])), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = F.inv(h[j + 1][j])
        for i in range(j + 2, n):
            if F.is_zero(h[i][j]):
                continue
            u = mul(h[i][j], inv)
            hi, hj = h[i], h[j + 1]
            for k in range(n):
                hi[k] = sub(hi[k], mul(u, hj[k]))
            for row in h:
                row[j + 1] = add(row[j + 1], mul(u, row[i]))
    X = Polynomial.x(F)
    polys = [Polynomial.one(F)]
    for k in range(1, n + 1):
        pk = (X - Polynomial.constant(F, h[k - 1][k - 1])) * polys[k - 1]
        prod = F.one
        for i in range(1, k):
            prod = mul(prod, h[k - i][k - i - 1])
            coef = mul(prod, h[k - i - 1][k - 1])
            if not F.is_zero(coef):
                pk = pk - polys[k - i - 1].scale(coef)
        polys.append(pk)
    return polys[n]


# -- Smith normal form over k[x] ----------------------------------------------


class PolyMatrix:
    """Sparse square matrix over k[x], rows kept as ``{col: Polynomial}``."""

    def __init__(self, field: Field, n: int, rows: list):
        self.field = field
        self.n = n
        self.rows = rows

    @classmethod
    def characteristic(cls, m: ExactMatrix) -> "PolyMatrix":
        """``xI - A``."""
        F = m.field
        rows = []
        for i, r in enumerate(m.rows):
            d = {}
            for j, v in enumerate(r):
                if i == j:
                    d[j] = Polynomial(F, (F.neg(v), F.one), reduced=True)
                elif not F.is_zero(v):
                    d[j] = Polynomial(F, (F.neg(v),), reduced=True)
            rows.append(d)
        return cls(F, m.nrows, rows)

    def smith_diagonal(self) -> list:
        """Diagonalize by unimodular row/column operations; returns the
        diagonal entries (monic), not yet in divisibility order."""
        F = self.field
        rows = {i: dict(r) for i, r in enumerate(self.rows)}
        cols: dict[int, set] = {j: set() for j in range(self.n)}
        for i, r in rows.items():
            for j in r:
                cols[j].add(i)
        diag = []

        def row_axpy(dst: int, q: Polynomial, src: int):
            # row_dst -= q * row_src
            rd, rs = rows[dst], rows[src]
            for j, v in rs.items():
                nv = rd.get(j)
                t = q * v
                nv = -t if nv is None else nv - t
                if nv.is_zero():
                    if j in rd:
                        del rd[j]
                        cols[j].discard(dst)
                else:
                    rd[j] = nv
                    cols[j].add(dst)

        def col_axpy(dst: int, q: Polynomial, src: int):
            # col_dst -= q * col_src
            for i in list(cols[src]):
                r = rows[i]
                v = r[src]
                nv = r.get(dst)
                t = v * q
                nv = -t if nv is None else nv - t
                if nv.is_zero():
                    if dst in r:
                        del r[dst]
                        cols[dst].discard(i)
                else:
                    r[dst] = nv
                    cols[dst].add(i)

        while rows:
            best = None
            for i, r in rows.items():
                for j, v in r.items():
                    key = (len(v.coeffs), (len(r) - 1) * (len(cols[j]) - 1))
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if key == (1, 0):
                            break
                if best and best[0] == (1, 0):
                    break
            if best is None:
                # remaining block is zero: each leftover row contributes a zero invariant
                diag.extend(Polynomial.zero(F) for _ in rows)
                break
            _, pr, pc = best
            while True:
                piv = rows[pr][pc]
                dirty = None
                for i in list(cols[pc]):
                    if i == pr:
                        continue
                    q, rem = divmod(rows[i][pc], piv)
                    if not q.is_zero():
                        row_axpy(i, q, pr)
                    if not rem.is_zero() and (dirty is None or rem.degree < dirty[0]):
                        dirty = (rem.degree, i, pc)
                if dirty is None:
                    for j in list(rows[pr]):
                        if j == pc:
                            continue
                        q, rem = divmod(rows[pr][j], piv)
                        if not q.is_zero():
                            col_axpy(j, q, pc)
                        if not rem.is_zero() and (dirty is None or rem.degree < dirty[0]):
                            dirty = (rem.degree, pr, j)
                if dirty is None:
                    break
                _, pr, pc = dirty
            diag.append(rows[pr][pc].monic())
            for j in rows[pr]:
                cols[j].discard(pr)
            del rows[pr]
            for i in cols.pop(pc):
                rows[i].pop(pc, None)
        return diag


@dataclass(frozen=True)
class InvariantFactors:
    """Nonconstant monic divisor chain ``d1 | d2 | ...``."""

    factors: tuple

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def product(self, field: Field) -> Polynomial:
        out = Polynomial.one(field)
        for f in self.factors:
            out = out * f
        return out

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.factors) + "]"


def divisor_chain(diagonal: Iterable[Polynomial]) -> tuple:
    """Turn any diagonal of a Smith-equivalent matrix into the divisibility chain."""
    entries = [d for d in diagonal if d.degree > 0]
    n = len(entries)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = entries[i], entries[j]
            g = gcd(a, b)
            if g == a:
                continue
            entries[i] = g
            entries[j] = (a * b).exact_div(g).monic()
    return tuple(e for e in entries if e.degree > 0)


def invariant_factors(m: ExactMatrix) -> InvariantFactors:
    if not m.is_square():
        raise ValueError("invariant factors of a non-square matrix")
    if m.nrows == 0:
        return InvariantFactors(())
    if isinstance(m.field, Rationals):
        try:
            return InvariantFactors(_chain_from_ranks(m))
        except DegreeTooLarge:
            pass
    diag = PolyMatrix.characteristic(m).smith_diagonal()
    return InvariantFactors(divisor_chain(diag))


def primary_partition(m: ExactMatrix, g: Polynomial, mult: int) -> list:
    """Block sizes (descending) of the ``g``-primary part of ``m``.

    ``mult`` is the multiplicity of ``g`` in the characteristic polynomial.
    """
    n, d = m.nrows, g.degree
    target = n - mult * d
    if isinstance(m.field, Rationals):
        # ranks are unchanged by scaling, so stay with primitive integer matrices
        base = _poly_at_int(g, m)
        power = base
        ranks = [n, _rank_int(power)]
        while ranks[-1] > target:
            power = _primitive(_matmul_int(power, base, n))
            ranks.append(_rank_int(power))
    else:
        base = poly_at_matrix(g, m)
        power = base
        ranks = [n, rank(power)]
        while ranks[-1] > target:
            power = power @ base
            ranks.append(rank(power))
    # blocks of size >= j number (r_{j-1} - r_j) / d
    at_least = [(ranks[j - 1] - ranks[j]) // d for j in range(1, len(ranks))]
    sizes = []
    for j, cnt in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        sizes.extend([j] * (cnt - nxt))
    return sorted(sizes, reverse=True)


def _chain_from_ranks(m: ExactMatrix) -> tuple:
    F = m.field
    parts = [(g, primary_partition(m, g, e)) for g, e in factor(charpoly(m)).factors]
    length = max(len(sizes) for _, sizes in parts)
    chain = []
    # k-th largest block of every primary part goes into the k-th last factor
    for k in range(length):
        f = Polynomial.one(F)
        for g, sizes in parts:
            if k < len(sizes):
                f = f * g ** sizes[k]
        chain.append(f)
    return tuple(reversed(chain))


# -- helpers for the endomorphism splitter ---------------------------------------


def sparse_nullspace(rows: Iterable[dict], ncols: int, field: Field) -> list:
    """Kernel basis of a sparse system given as ``{col: value}`` rows.

    Maintains a fully reduced echelon form so each new row needs one pass.
    """
    F = field
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {j: v for j, v in row.items() if not F.is_zero(v)}
        for pc in [j for j in r if j in pivots]:
            c = r.get(pc)
            if c is None or F.is_zero(c):
                continue
            for j, v in pivots[pc].items():
                nv = F.sub(r.get(j, F.zero), F.mul(c, v))
                if F.is_zero(nv):
                    r.pop(j, None)
                else:
                    r[j] = nv
        if not r:
            continue
        pc = min(r)
        inv = F.inv(r[pc])
        r = {j: F.mul(inv, v) for j, v in r.items()}
        for other in pivots.values():
            c = other.get(pc)
            if c is None:
                continue
            for j, v in r.items():
                nv = F.sub(other.get(j, F.zero), F.mul(c, v))
                if F.is_zero(nv):
                    other.pop(j, None)
                else:
                    other[j] = nv
        pivots[pc] = r
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for pc, r in pivots.items():
            c = r.get(f)
            if c is not None:
                v[pc] = F.neg(c)
        basis.append(v)
    return basis


def inverse(m: ExactMatrix) -> ExactMatrix:
    from .errors import DivisionByZero

    F = m.field
    n = m.nrows
    aug = ExactMatrix(F, [list(r) + [F.one if i == j else F.zero for j in range(n)]
                          for i, r in enumerate(m.rows)], ncols=2 * n)
    echelon, pivots = _row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DivisionByZero("matrix is singular")
    return ExactMatrix(F, [r[n:] for r in echelon[:n]], ncols=n)


def column_space(m: ExactMatrix) -> list:
    """Basis of the column space as lists."""
    if m.nrows == 0 or m.ncols == 0:
        return []
    return _row_echelon(m.transpose())[0]


def from_columns(field: Field, nrows: int, cols: list) -> ExactMatrix:
    if not cols:
        return ExactMatrix(field, [[] for _ in range(nrows)], ncols=0)
    return ExactMatrix(field, [list(r) for r in zip(*cols)], ncols=len(cols))


def poly_at_matrix(f: Polynomial, m: ExactMatrix) -> ExactMatrix:
    """Horner evaluation ``f(M)``."""
    F = m.field
    n = m.nrows
    out = ExactMatrix.zeros(F, n)
    ident = ExactMatrix.identity(F, n)
    for c in reversed(f.coeffs):
        out = out @ m + ident.scale(c)
    return out


def trace(m: ExactMatrix):
    F = m.field
    acc = F.zero
    for i in range(m.nrows):
        acc = F.add(acc, m.rows[i][i])
    return acc
