"""Dense univariate polynomials over the fields in :mod:`kxring.fields`.

Coefficients are stored low degree first. The zero polynomial has an empty
coefficient tuple and degree ``-inf``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DegreeTooLarge,
    DivisionByZero,
    ParseError,
    UnsupportedField,
    ZeroConstantTerm,
)
from .fields import (
    ExtensionField,
    Field,
    PrimeField,
    Rationals,
    RealClosedModel,
    next_prime,
)

NEG_INF = float("-inf")

QQ_DEGREE_CAP = 16
ROOT_ENUMERATION_CAP = 2 ** 20


class Polynomial:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs: Iterable = (), *, reduced: bool = False):
        if reduced:
            c = list(coeffs)
        elif field.native:
            red = field.reduce
            c = [red(a) for a in coeffs]
        else:
            c = [tuple(a) for a in coeffs]
        zero = field.zero
        while c and c[-1] == zero:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)
        self._hash = None

    # -- constructors
    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls(field, (), reduced=True)

    @classmethod
    def one(cls, field: Field) -> "Polynomial":
        return cls(field, (field.one,), reduced=True)

    @classmethod
    def x(cls, field: Field) -> "Polynomial":
        return cls(field, (field.zero, field.one), reduced=True)

    @classmethod
    def constant(cls, field: Field, c) -> "Polynomial":
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field: Field, coeffs: Sequence) -> "Polynomial":
        """Coefficients given as ints or Fractions, mapped into ``field``."""
        return cls(field, [embed_rational(field, c) for c in coeffs], reduced=False)

    @classmethod
    def monomial(cls, field: Field, n: int, c=None) -> "Polynomial":
        c = field.one if c is None else c
        return cls(field, [field.zero] * n + [c])

    # -- basic accessors
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    @property
    def lc(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        if self.is_monic():
            return self
        return self.scale(self.field.inv(self.lc))

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.field.tag}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def sort_key(self):
        """Degree first, then coefficients from the top down."""
        return (len(self.coeffs), tuple(_coeff_key(c) for c in reversed(self.coeffs)))

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if self.field != other.field:
            raise AssertionError(f"field mismatch: {self.field.tag} vs {other.field.tag}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.field, (embed_rational(self.field, other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if F.native:
            red = F.reduce
            c = [red(x + y) for x, y in zip(a, b)] + list(a[len(b):])
        else:
            c = [F.add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
        return Polynomial(F, c, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(F, [F.neg(x) for x in self.coeffs], reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        F = self.field
        if F.native:
            red = F.reduce
            return Polynomial(F, [red(x * c) for x in self.coeffs], reduced=True)
        return Polynomial(F, [F.mul(x, c) for x in self.coeffs], reduced=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        else:
            self._check(other)
        a, b = self.coeffs, other.coeffs
        F = self.field
        if not a or not b:
            return Polynomial(F, (), reduced=True)
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        if F.native:
            return Polynomial(F, _native_mul(F, a, b), reduced=True)
        out = [F.zero] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x == F.zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Polynomial(F, out, reduced=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: "Polynomial"):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, value):
        """Horner evaluation at a field element."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, value), c)
        return acc

    def derivative(self) -> "Polynomial":
        F = self.field
        return Polynomial(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = poly_divmod(self, other)
        if r.coeffs:
            raise ArithmeticError("inexact polynomial division")
        return q

    def to_json(self) -> dict:
        F = self.field
        if isinstance(F, Rationals):
            return {"coeffs": [str(c) for c in self.coeffs]}
        if isinstance(F, PrimeField):
            return {"coeffs": list(self.coeffs)}
        return {"coeffs": [list(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, field: Field, doc: dict) -> "Polynomial":
        cs = doc["coeffs"]
        if isinstance(field, Rationals):
            return cls(field, [Fraction(c) for c in cs])
        if isinstance(field, PrimeField):
            return cls(field, [int(c) for c in cs])
        return cls(field, [tuple(c) for c in cs])


def _coeff_key(c):
    if isinstance(c, tuple):
        return c
    return c


def _native_mul(F: Field, a, b) -> list:
    n = len(a) + len(b) - 1
    if isinstance(F, PrimeField):
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        p = F.p
        return [v % p for v in out]
    # Q: clear denominators, convolve integers, rescale once
    da = math.lcm(*(c.denominator for c in a))
    db = math.lcm(*(c.denominator for c in b))
    ia = [c.numerator * (da // c.denominator) for c in a]
    ib = [c.numerator * (db // c.denominator) for c in b]
    out = [0] * n
    for i, x in enumerate(ia):
        if x:
            for j, y in enumerate(ib):
                out[i + j] += x * y
    d = da * db
    return [Fraction(v, d) for v in out]


def embed_rational(field: Field, c):
    """Map an int or Fraction into ``field``."""
    if isinstance(field, Rationals):
        return Fraction(c)
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return field.from_int(c.numerator)
        return field.div(field.from_int(c.numerator), field.from_int(c.denominator))
    if isinstance(c, tuple):
        return c
    return field.from_int(int(c))


def poly_divmod(a: Polynomial, b: Polynomial):
    a._check(b)
    F = a.field
    if not b.coeffs:
        raise DivisionByZero("polynomial division by zero")
    db = len(b.coeffs) - 1
    if len(a.coeffs) - 1 < db:
        return Polynomial.zero(F), a
    r = list(a.coeffs)
    bc = b.coeffs
    q = [F.zero] * (len(r) - db)
    inv_lc = F.inv(bc[-1])
    if F.native:
        red = F.reduce
        monic_b = bc[-1] == F.one
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == F.zero:
                continue
            if not monic_b:
                c = red(c * inv_lc)
            q[i - db] = c
            base = i - db
            for j in range(db):
                r[base + j] = red(r[base + j] - c * bc[j])
            r[i] = F.zero
    else:
        mul, sub = F.mul, F.sub
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == F.zero:
                continue
            c = mul(c, inv_lc)
            q[i - db] = c
            base = i - db
            for j in range(db):
                r[base + j] = sub(r[base + j], mul(c, bc[j]))
            r[i] = F.zero
    return Polynomial(F, q, reduced=True), Polynomial(F, r[:db], reduced=True)


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Polynomial, b: Polynomial):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.one(F), Polynomial.zero(F)
    t0, t1 = Polynomial.zero(F), Polynomial.one(F)
    while r1.coeffs:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.coeffs:
        return r0, s0, t0
    c = F.inv(r0.lc)
    return r0.scale(c), s0.scale(c), t0.scale(c)


def derivative(f: Polynomial) -> Polynomial:
    return f.derivative()


def evaluate(f: Polynomial, value):
    return f(value)


def powmod(base: Polynomial, n: int, modulus: Polynomial) -> Polynomial:
    result = Polynomial.one(base.field)
    base = base % modulus
    while n:
        if n & 1:
            result = (result * base) % modulus
        n >>= 1
        if n:
            base = (base * base) % modulus
    return result


def resultant(a: Polynomial, b: Polynomial):
    """Resultant over a field via the Euclidean remainder sequence."""
    a._check(b)
    F = a.field
    if not a.coeffs or not b.coeffs:
        raise ValueError("resultant of the zero polynomial")
    if a.degree == 0:
        return F.pow(a.lc, b.degree)
    res = F.one
    while b.degree > 0:
        r = a % b
        if not r.coeffs:
            return F.zero
        da, db, dr = a.degree, b.degree, r.degree
        factor = F.pow(b.lc, da - dr)
        if (da * db) % 2:
            factor = F.neg(factor)
        res = F.mul(res, factor)
        a, b = b, r
    return F.mul(res, F.pow(b.lc, a.degree))


def _bareiss_det(m: list) -> Polynomial:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(m)
    F = m[0][0].field
    m = [row[:] for row in m]
    sign = 1
    prev = Polynomial.one(F)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial.zero(F)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                v = row_i[j] * pivot
                if not mik.is_zero() and not row_k[j].is_zero():
                    v = v - mik * row_k[j]
                row_i[j] = v.exact_div(prev) if not prev.is_one() else v
            row_i[k] = Polynomial.zero(F)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _sylvester(fc: list, gc: list) -> list:
    """Sylvester matrix of two polynomials given as coefficient lists (low first)."""
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = fc[0] - fc[0]
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return rows


def _check_star_inputs(f: Polynomial, g: Polynomial):
    f._check(g)
    F = f.field
    if isinstance(F, RealClosedModel) or not isinstance(F, (Rationals, PrimeField, ExtensionField)):
        raise UnsupportedField(f"star product is not defined over {F.tag}")
    if f.degree < 1 or g.degree < 1:
        raise ValueError("star product needs nonconstant polynomials")
    if F.is_zero(f.constant_term()) or F.is_zero(g.constant_term()):
        raise ZeroConstantTerm("star product requires nonzero constant terms")


@lru_cache(maxsize=4096)
def star_product(f: Polynomial, g: Polynomial) -> Polynomial:
    """Composed multiplication: the monic polynomial whose roots are the
    products of a root of ``f`` with a root of ``g``.

    Computed as ``Res_y(f(y), y^d g(x/y))`` with ``d = deg g``; no roots are
    ever constructed.
    """
    _check_star_inputs(f, g)
    F = f.field
    f, g = f.monic(), g.monic()
    if f.degree == 1:
        # roots of f: {-f0}; answer is (-f0)^d g(x / -f0) made monic
        lam = F.neg(f.coeffs[0])
        d = g.degree
        cs = [F.mul(c, F.pow(lam, d - j)) for j, c in enumerate(g.coeffs)]
        return Polynomial(F, cs, reduced=True).monic()
    if g.degree == 1:
        return star_product(g, f)
    d = g.degree
    X = Polynomial.x(F)
    fy = [Polynomial(F, (c,), reduced=True) for c in f.coeffs]
    # coefficient of y^(d-j) in y^d g(x/y) is g_j x^j
    gy = [Polynomial.zero(F)] * (d + 1)
    for j, c in enumerate(g.coeffs):
        gy[d - j] = (X ** j).scale(c)
    det = _bareiss_det(_sylvester(fy, gy))
    return det.monic()


# -- squarefree decomposition -------------------------------------------------


def pth_root(f: Polynomial) -> Polynomial:
    F = f.field
    p = F.characteristic
    cs = f.coeffs
    if any(not F.is_zero(c) for i, c in enumerate(cs) if i % p):
        raise ArithmeticError("polynomial is not a p-th power")
    return Polynomial(F, [F.pth_root(cs[i]) for i in range(0, len(cs), p)], reduced=True)


def _sqf_yun(f: Polynomial) -> list:
    out = []
    fp = f.derivative()
    a0 = gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _sqf_char_p(f: Polynomial) -> list:
    p = f.field.characteristic
    out = []
    fp = f.derivative()
    if fp.is_zero():
        return [(g, e * p) for g, e in _sqf_char_p(pth_root(f))]
    c = gcd(f, fp)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        out.extend((g, e * p) for g, e in _sqf_char_p(pth_root(c)))
    return out


def squarefree_decomposition(f: Polynomial) -> list:
    """Pairwise coprime squarefree monic parts with multiplicities.

    Parts sharing a multiplicity are merged; the result is sorted by
    multiplicity.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    f = f.monic()
    if f.degree < 1:
        return []
    parts = _sqf_char_p(f) if f.field.characteristic else _sqf_yun(f)
    merged: dict[int, Polynomial] = {}
    for g, e in parts:
        merged[e] = merged[e] * g if e in merged else g
    return sorted(((g.monic(), e) for e, g in merged.items()), key=lambda t: t[1])


# -- factorization -----------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: tuple  # of (Polynomial monic irreducible, multiplicity)

    def expand(self, field: Field) -> Polynomial:
        out = Polynomial.constant(field, self.unit)
        for g, e in self.factors:
            out = out * g ** e
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _distinct_degree(f: Polynomial) -> list:
    """f monic squarefree over a finite field -> [(product of degree-d factors, d)]."""
    F = f.field
    q = F.order
    X = Polynomial.x(F)
    out = []
    h = X
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, rest)
        g = gcd(h - X, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(F: Field, deg: int, rng: random.Random) -> Polynomial:
    return Polynomial(F, [F.random(rng) for _ in range(deg)] + [F.one], reduced=True)


def _equal_degree(f: Polynomial, d: int, rng: random.Random) -> list:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    n = f.degree
    if n == d:
        return [f]
    F = f.field
    q = F.order
    while True:
        a = _random_poly(F, rng.randrange(1, n), rng) if n > 1 else Polynomial.x(F)
        if F.characteristic == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1)), q = 2^k
            k = F.degree
            t = a % f
            acc = t
            for _ in range(k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = powmod(a, (q ** d - 1) // 2, f) - Polynomial.one(F)
        g = gcd(b, f)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(f.exact_div(g), d, rng)


def _factor_finite_squarefree(f: Polynomial, rng: random.Random) -> list:
    out = []
    for g, d in _distinct_degree(f):
        out.extend(_equal_degree(g, d, rng))
    return out


def _factor_finite(f: Polynomial, seed: int) -> Factorization:
    rng = random.Random(seed)
    unit = f.lc
    factors = []
    for part, e in squarefree_decomposition(f):
        for g in _factor_finite_squarefree(part, rng):
            factors.append((g.monic(), e))
    return Factorization(unit, tuple(sorted(factors, key=lambda t: (t[0].sort_key(), t[1]))))


def _primitive_int(f: Polynomial) -> tuple:
    """Q polynomial -> (rational unit, primitive integer coefficient list)."""
    den = math.lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    cont = math.gcd(*ints)
    if ints[-1] < 0:
        cont = -cont
    ints = [c // cont for c in ints]
    return Fraction(cont, den), ints


def _int_poly_divides(a: list, b: list):
    """Return b / a over Z if exact, else None (both integer lists, low first)."""
    b = list(b)
    da = len(a) - 1
    if len(b) - 1 < da:
        return None
    q = [0] * (len(b) - da)
    for i in range(len(b) - 1, da - 1, -1):
        c, r = divmod(b[i], a[-1])
        if r:
            return None
        q[i - da] = c
        if c:
            for j in range(da + 1):
                b[i - da + j] -= c * a[j]
    if any(b[:da]):
        return None
    return q


def _symmetric(v: int, m: int) -> int:
    v %= m
    return v - m if v > m // 2 else v


def _factor_int_squarefree(g: list, cap: int) -> list:
    """Factor a primitive squarefree integer polynomial (positive lc) over Z."""
    n = len(g) - 1
    if n <= 1:
        return [g]
    if g[0] == 0:
        # pull out x
        rest = g[1:]
        return [[0, 1]] + _factor_int_squarefree(rest, cap)
    if n > cap:
        raise DegreeTooLarge(f"degree {n} exceeds the Q factorization cap {cap}")
    lc = g[-1]
    norm2 = math.isqrt(sum(c * c for c in g)) + 1
    bound = 2 * abs(lc) * (2 ** n) * norm2
    P = next_prime(max(bound, 2 ** 31))
    while True:
        FP = PrimeField(P)
        gp = Polynomial(FP, g)
        if lc % P and gcd(gp, gp.derivative()).degree == 0:
            break
        P = next_prime(P)
    FP = PrimeField(P)
    gp = Polynomial(FP, g).monic()
    modular = _factor_finite_squarefree(gp, random.Random(P))
    modular = [h.monic() for h in modular]
    factors = []
    remaining = g
    size = 1
    while 2 * size <= len(modular):
        found = False
        for subset in itertools.combinations(range(len(modular)), size):
            lc_r = remaining[-1]
            cand = Polynomial.constant(FP, lc_r)
            for k in subset:
                cand = cand * modular[k]
            ints = [_symmetric(c, P) for c in cand.coeffs]
            cont = math.gcd(*ints)
            ints = [c // cont for c in ints]
            if ints[-1] < 0:
                ints = [-c for c in ints]
            q = _int_poly_divides(ints, remaining)
            if q is not None:
                factors.append(ints)
                remaining = q
                if remaining[-1] < 0:
                    remaining = [-c for c in remaining]
                modular = [h for k, h in enumerate(modular) if k not in subset]
                found = True
                break
        if not found:
            size += 1
    factors.append(remaining)
    return factors


def _factor_rationals(f: Polynomial, cap: int) -> Factorization:
    F = f.field
    unit = f.lc
    factors = []
    for part, e in squarefree_decomposition(f):
        _, ints = _primitive_int(part)
        for h in _factor_int_squarefree(ints, cap):
            factors.append((Polynomial(F, [Fraction(c) for c in h]).monic(), e))
    return Factorization(unit, tuple(sorted(factors, key=lambda t: (t[0].sort_key(), t[1]))))


@lru_cache(maxsize=8192)
def factor(f: Polynomial, seed: int = 0, degree_cap: int = QQ_DEGREE_CAP) -> Factorization:
    """Complete factorization into monic irreducibles.

    Finite fields use distinct-degree plus Cantor-Zassenhaus splitting driven
    by ``random.Random(seed)``; Q uses a large-prime modular factorization
    with exhaustive recombination (degree at most ``degree_cap``).
    """
    F = f.field
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if isinstance(F, RealClosedModel):
        raise UnsupportedField("factorization is not provided for the real-closed model")
    if isinstance(F, Rationals):
        return _factor_rationals(f, degree_cap)
    if isinstance(F, (PrimeField, ExtensionField)):
        return _factor_finite(f, seed)
    raise UnsupportedField(f"cannot factor over {F.tag}")


def _prime_divisors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Polynomial) -> bool:
    if f.degree < 1:
        raise ValueError("irreducibility of a constant")
    F = f.field
    if isinstance(F, (PrimeField, ExtensionField)):
        # Rabin's test
        g = f.monic()
        n = g.degree
        q = F.order
        X = Polynomial.x(F)
        for r in _prime_divisors(n):
            h = X
            for _ in range(n // r):
                h = powmod(h, q, g)
            if gcd(h - X, g).degree != 0:
                return False
        h = X
        for _ in range(n):
            h = powmod(h, q, g)
        return (h - X) % g == Polynomial.zero(F)
    fac = factor(f)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


# -- extension fields and root enumeration ----------------------------------


@lru_cache(maxsize=None)
def extension_field(p: int, m: int) -> ExtensionField:
    """F_{p^m} with the lexicographically first monic irreducible modulus."""
    Fp = PrimeField(p)
    if m == 1:
        return ExtensionField(p, (0, 1))
    for n in range(p ** m):
        tail = []
        for _ in range(m):
            n, r = divmod(n, p)
            tail.append(r)
        if tail[0] == 0:
            continue
        cand = Polynomial(Fp, tail + [1])
        if is_irreducible(cand):
            return ExtensionField(p, tuple(cand.coeffs))
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def lift(f: Polynomial, E: ExtensionField) -> Polynomial:
    """Map a polynomial over F_p into E[x]."""
    return Polynomial(E, [E.from_int(c) for c in f.coeffs], reduced=True)


def _root_multiplicity(f: Polynomial, r) -> int:
    F = f.field
    lin = Polynomial(F, (F.neg(r), F.one), reduced=True)
    k = 0
    while True:
        q, rem = divmod(f, lin)
        if not rem.is_zero():
            return k
        k += 1
        f = q


_AUTO_ENUMERATE = 256


def roots_in_extension(f: Polynomial, m: int, *, cap: int = ROOT_ENUMERATION_CAP,
                       method: str = "auto", seed: int = 0) -> list:
    """All roots (with multiplicity) of ``f`` over F_p lying in F_{p^m}.

    ``method="enumerate"`` brute-forces every field element and refuses
    fields larger than ``cap``. ``"split"`` factors over F_p and splits the
    factors of degree dividing ``m`` by Cantor-Zassenhaus over F_{p^m}. ``"auto"`` enumerates only tiny fields
    (at most ``min(cap, 256)`` elements) and splits otherwise.
    """
    F = f.field
    if not isinstance(F, PrimeField):
        raise UnsupportedField("roots_in_extension expects a polynomial over F_p")
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    p = F.p
    size = p ** m
    if method == "enumerate" and size > cap:
        raise CapExceeded(f"F_{p}^{m} has {size} elements, cap is {cap}")
    E = extension_field(p, m)
    fe = lift(f, E)
    roots = []
    if method == "enumerate" or (method == "auto" and size <= min(cap, _AUTO_ENUMERATE)):
        for a in E.elements():
            if E.is_zero(fe(a)):
                roots.extend([a] * _root_multiplicity(fe, a))
    elif method in ("split", "auto"):
        # factor over F_p first; an irreducible factor of degree d has its
        # roots in F_{p^m} iff d | m, and then splits into d linear factors
        rng = random.Random(seed)
        for g, e in _factor_finite(f, seed).factors:
            if m % g.degree:
                continue
            for lin in _equal_degree(lift(g, E), 1, rng):
                roots.extend([E.neg(lin.monic().coeffs[0])] * e)
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(roots)


# -- text grammar ------------------------------------------------------------


def format_coeff(field: Field, c) -> str:
    if isinstance(field, ExtensionField):
        return f"({field.fmt(c)})"
    return str(c)


def format_poly(f: Polynomial) -> str:
    """Descending degree with explicit signs, e.g. ``x^2 - x + 1``."""
    F = f.field
    if f.is_zero():
        return "0"
    parts = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if F.is_zero(c):
            continue
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and mag == F.one:
            body = mono
        elif mono:
            body = f"{format_coeff(F, mag)}*{mono}"
        else:
            body = format_coeff(F, mag)
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


class _PolyParser:
    """Recursive descent over the grammar

        expr   := term (('+'|'-') term)*
        term   := unary ('*'? unary)*
        unary  := '-' unary | power
        power  := atom ('^' INT)?
        atom   := NUMBER ('/' NUMBER)? | 'x' | '(' expr ')'
    """

    def __init__(self, text: str, field: Field, offset: int = 0):
        self.text = text
        self.field = field
        self.pos = 0
        self.offset = offset

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos + self.offset)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def number(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a number")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        if not self.peek():
            self.error("empty polynomial")
        out = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return out

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                acc = acc * self.unary()
            elif ch and (ch.isdigit() or ch in "x("):
                acc = acc * self.unary()
            else:
                return acc

    def unary(self) -> Polynomial:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        if self.peek() == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.number()
        return base

    def atom(self) -> Polynomial:
        ch = self.peek()
        F = self.field
        if ch == "x":
            self.pos += 1
            return Polynomial.x(F)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if ch.isdigit():
            num = self.number()
            value = Fraction(num)
            if self.peek() == "/":
                self.pos += 1
                den = self.number()
                if den == 0:
                    self.error("zero denominator")
                value = Fraction(num, den)
            try:
                return Polynomial.constant(F, embed_rational(F, value))
            except DivisionByZero:
                self.error(f"denominator vanishes in {F.tag}")
        self.error("expected x, a number or '('")


def parse_poly(text: str, field: Field, offset: int = 0) -> Polynomial:
    return _PolyParser(text, field, offset).parse()
