"""Exact ground fields.

Elements never carry their field: a ``Field`` object supplies the arithmetic
and callers keep track of which field a value belongs to.

* ``Rationals``: elements are ``fractions.Fraction``.
* ``PrimeField(p)``: elements are ``int`` in ``[0, p)``.
* ``ExtensionField(p, modulus)``: elements are tuples of ``m`` residues, the
  coordinates of a class modulo a monic irreducible of degree ``m``.
* ``RealClosedModel``: scalars are ``Fraction``; non-real block parameters
  are ``GaussianRational`` values.
"""
from __future__ import annotations

from random import Random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import CompositeModulus, DivisionByZero, ReducibleModulus, UnsupportedField

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


class Field:
    """Arithmetic on bare element values.

    ``native`` fields have elements supporting ``+ - *`` directly; ``reduce``
    canonicalizes the raw result. Polynomial kernels use that fast path.
    """

    tag: str = ""
    characteristic: int = 0
    native: bool = False

    # -- to be provided by subclasses
    zero: object
    one: object

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def reduce(self, a):
        return a

    # -- shared
    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    def describe(self) -> str:
        return self.tag


@dataclass(frozen=True)
class Rationals(Field):
    tag = "q"
    characteristic = 0
    native = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def from_int(self, n: int):
        return Fraction(n)

    def reduce(self, a):
        return a if isinstance(a, Fraction) else Fraction(a)

    def fmt(self, a) -> str:
        return str(a)


@dataclass(frozen=True)
class RealClosedModel(Rationals):
    """Real closed field modelled by rational scalars plus Gaussian-rational
    block parameters. Matrix arithmetic happens over Q."""

    tag = "rc"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    native = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise CompositeModulus(f"{self.p} is not prime")

    @property
    def tag(self):  # type: ignore[override]
        return f"f{self.p}"

    @property
    def characteristic(self):  # type: ignore[override]
        return self.p

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_int(self, n: int):
        return n % self.p

    def reduce(self, a):
        return a % self.p

    def pth_root(self, a):
        return a

    def random(self, rng: Random):
        return rng.randrange(self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def fmt(self, a) -> str:
        return str(a)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _mod_p_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lc = pow(b[-1], -1, p)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv_lc % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


@dataclass(frozen=True)
class ExtensionField(Field):
    """F_{p^m} as F_p[y]/(modulus); ``modulus`` is low-to-high, monic."""

    p: int
    modulus: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise CompositeModulus(f"{self.p} is not prime")
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) < 2 or mod[-1] != 1:
            raise ValueError("extension modulus must be monic of degree >= 1")
        object.__setattr__(self, "modulus", mod)
        from .poly import Polynomial, is_irreducible  # deferred: poly imports fields

        if not is_irreducible(Polynomial(PrimeField(self.p), mod)):
            raise ReducibleModulus(f"modulus {mod} is reducible over F_{self.p}")
        # Kronecker packing for mul: slots wide enough for an unreduced
        # product plus the folded-in reduction terms
        m, p = len(mod) - 1, self.p
        bits = (m * m * (p - 1) ** 3 + m * (p - 1) ** 2).bit_length() + 1
        red, cur = [], list(mod[:-1])
        cur = [-c % p for c in cur]  # y^m mod modulus
        for _ in range(m - 1):
            red.append(sum(c << (bits * j) for j, c in enumerate(cur)))
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * mc) % p for c, mc in zip(cur, mod)]
        object.__setattr__(self, "_bits", bits)
        object.__setattr__(self, "_red", tuple(red))

    @property
    def tag(self):  # type: ignore[override]
        return f"f{self.p}^{self.degree}"

    @property
    def characteristic(self):  # type: ignore[override]
        return self.p

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p ** self.degree

    @property
    def zero(self):  # type: ignore[override]
        return (0,) * self.degree

    @property
    def one(self):  # type: ignore[override]
        return (1,) + (0,) * (self.degree - 1)

    def _pack(self, c) -> tuple:
        c = list(c) + [0] * (self.degree - len(c))
        return tuple(c)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, m, bits = self.p, len(a), self._bits
        mask = (1 << bits) - 1
        ia = ib = 0
        for i in range(m - 1, -1, -1):
            ia = (ia << bits) | a[i]
            ib = (ib << bits) | b[i]
        prod = ia * ib
        low = prod & ((1 << (bits * m)) - 1)
        high = prod >> (bits * m)
        # y^(m+k) contributes prod_{m+k} * (y^(m+k) mod modulus)
        for r in self._red:
            if high:
                c = high & mask
                if c:
                    low += c * r
                high >>= bits
        out = []
        for _ in range(m):
            out.append((low & mask) % p)
            low >>= bits
        return tuple(out)

    def inv(self, a):
        p = self.p
        if not any(a):
            raise DivisionByZero("inverse of zero in extension field")
        # extended Euclid on (modulus, a) over F_p
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _mod_p_divmod(r0, r1, p)
            qs = [0] * (len(q) + len(s1))
            for i, x in enumerate(q):
                for j, y in enumerate(s1):
                    qs[i + j] += x * y
            n = max(len(s0), len(qs))
            s2 = _trim([((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p for i in range(n)])
            r0, r1, s0, s1 = r1, r, s1, s2
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        return self._pack([x * c % p for x in s0])

    def from_int(self, n: int):
        return self._pack([n % self.p])

    def embed(self, a: int):
        return self.from_int(a)

    def pth_root(self, a):
        # Frobenius has order m, so its inverse is x -> x^(p^(m-1))
        return self.pow(a, self.p ** (self.degree - 1))

    def random(self, rng: Random):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def elements(self) -> Iterator[tuple]:
        p, m = self.p, self.degree
        for n in range(p ** m):
            coords = []
            for _ in range(m):
                n, r = divmod(n, p)
                coords.append(r)
            yield tuple(coords)

    def fmt(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*y^{i}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True, order=True)
class GaussianRational:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _as_gauss(o) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        o = _as_gauss(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _as_gauss(o)
        n = o.norm()
        if not n:
            raise DivisionByZero("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def is_imaginary(self) -> bool:
        """Nonzero and in the k-span of i."""
        return self.re == 0 and self.im != 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def canonical(self) -> "GaussianRational":
        """Representative with positive imaginary part (lambda ~ conj(lambda))."""
        return self.conjugate() if self.im < 0 else self

    def __str__(self):
        return format_gaussian(self)


def _as_gauss(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Fraction(x), Fraction(0))


def format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return str(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = f"{z.im}i"
    if z.re == 0:
        return im
    sign = "" if im.startswith("-") else "+"
    return f"{z.re}{sign}{im}"


def make_field(tag: str, *params) -> Field:
    """Build a field descriptor.

    ``make_field("q")``, ``make_field("rc")``, ``make_field("prime", 3)``,
    ``make_field("ext", 2, (1, 1, 1))``. Also accepts CLI spellings such as
    ``"f5"``.
    """
    tag = tag.lower()
    if tag in ("q", "rationals", "qq"):
        return Rationals()
    if tag in ("rc", "realclosed", "realclosedmodel"):
        return RealClosedModel()
    if tag in ("prime", "primefield", "fp"):
        (p,) = params
        return PrimeField(int(p))
    if tag in ("ext", "extension", "extensionfield"):
        p, modulus = params
        if hasattr(modulus, "coeffs"):
            modulus = modulus.coeffs
        return ExtensionField(int(p), tuple(int(c) for c in modulus))
    if tag.startswith("f") and tag[1:].isdigit():
        return PrimeField(int(tag[1:]))
    raise UnsupportedField(f"unknown field tag {tag!r}")
