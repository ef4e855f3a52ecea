"""Representation ring of k[x] with comultiplication x -> x (x) x.

Indecomposables are ``Nil(s)`` = k[x]/x^s and ``Band(f, s)`` = k[x]/f^s with f
irreducible and f(0) != 0.  A band factors as the unipotent class of size s
times the semisimple class of f, so a product of bands is the product of the
size parts (a Clebsch-Gordan ladder in characteristic 0, the Green ring in
characteristic p) times the factorization of the composed product f * g.
Nil classes span an ideal on which any class V acts as multiplication by dim V.

Over the real-closed model the bands are ``JBlock(lam, s)`` for real lam and
``RBlock(lam, s)`` for non-real lam, the latter a 2s-dimensional real block.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import NotIrreducible, UnsupportedField, ZeroConstantTerm, ZeroEigenvalue
from .fields import (ExtensionField, Field, GaussianRational, PrimeField, Rationals,
                     RealClosedModel, format_gaussian)
from .green import basis_product
from .poly import QQ_DEGREE_CAP, Polynomial, factor, format_poly, is_irreducible, star_product

# largest degree of a composed product factored over Q; the CLI may lower or raise it
DEGREE_CAP = QQ_DEGREE_CAP


@dataclass(frozen=True)
class Nil:
    """k[x]/x^s."""

    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("Nil size must be positive")

    @property
    def dim(self) -> int:
        return self.s


@dataclass(frozen=True)
class Band:
    """k[x]/f^s with f monic irreducible and f(0) != 0."""

    f: Polynomial
    s: int

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("Band size must be positive")
        if not self.f.is_monic():
            object.__setattr__(self, "f", self.f.monic())

    @classmethod
    def checked(cls, f: Polynomial, s: int) -> "Band":
        """Validate f before building the band."""
        f = f.monic()
        if f.degree < 1:
            raise NotIrreducible(f"{format_poly(f)} is constant")
        if f.field.is_zero(f.constant_term()):
            raise ZeroConstantTerm(f"{format_poly(f)} has zero constant term; use a nilpotent term")
        if isinstance(f.field, RealClosedModel):
            raise UnsupportedField("use J/R blocks over the real-closed model")
        if not is_irreducible(f):
            raise NotIrreducible(f"{format_poly(f)} is reducible")
        return cls(f, s)

    @property
    def dim(self) -> int:
        return self.s * self.f.degree


@dataclass(frozen=True)
class JBlock:
    """Jordan block J_lam(s) with real (rational) eigenvalue."""

    lam: Fraction
    s: int

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.s < 1:
            raise ValueError("block size must be positive")

    @property
    def dim(self) -> int:
        return self.s


@dataclass(frozen=True)
class RBlock:
    """Real block of size 2s for the conjugate pair lam, conj(lam); stored with im > 0."""

    lam: GaussianRational
    s: int

    def __post_init__(self):
        from .errors import RealParameter

        if self.lam.im == 0:
            raise RealParameter(f"{self.lam} is real; use a J block")
        object.__setattr__(self, "lam", self.lam.canonical())
        if self.s < 1:
            raise ValueError("block size must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.s


Indecomposable = Union[Nil, Band, JBlock, RBlock]


def sort_key(d: Indecomposable):
    """Nil by size descending, then bands by (deg f, coefficients, size descending)."""
    if isinstance(d, Nil):
        return (0, -d.s)
    if isinstance(d, Band):
        return (1, d.f.sort_key(), -d.s)
    if isinstance(d, JBlock):
        return (2, d.lam, -d.s)
    return (3, (d.lam.re, d.lam.im), -d.s)


def _compact(f: Polynomial) -> str:
    return format_poly(f).replace(" ", "")


def describe(d: Indecomposable) -> str:
    """Module-expression spelling, e.g. ``(x-1)^2``, ``x^3``, ``J(2,1)``."""
    if isinstance(d, Nil):
        return "x" if d.s == 1 else f"x^{d.s}"
    if isinstance(d, Band):
        return f"({_compact(d.f)})^{d.s}"
    if isinstance(d, JBlock):
        return f"J({d.lam},{d.s})"
    return f"R({format_gaussian(d.lam)},{d.s})"


class RingElement:
    """Integer combination of indecomposable classes over one field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping | Iterable = ()):
        self.field = field
        acc: dict = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for d, c in items:
            acc[d] += c
        self.terms = {d: acc[d] for d in sorted((d for d in acc if acc[d]), key=sort_key)}

    @classmethod
    def of(cls, field: Field, d: Indecomposable, c: int = 1) -> "RingElement":
        return cls(field, {d: c})

    @classmethod
    def one(cls, field: Field) -> "RingElement":
        return cls(field, {identity_block(field): 1})

    @classmethod
    def zero(cls, field: Field) -> "RingElement":
        return cls(field)

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(self.terms.items())))

    def __repr__(self):
        return f"RingElement({self.field.tag}: {self})"

    def __str__(self):
        return format_element(self)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def _same(self, other: "RingElement"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field.tag} vs {other.field.tag}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        return RingElement(self.field, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return RingElement(self.field, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, k: int) -> "RingElement":
        return RingElement(self.field, {d: k * c for d, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return ring_mul(self, other)

    __rmul__ = __mul__

    @property
    def dim(self) -> int:
        return dim(self)

    def is_effective(self) -> bool:
        """True when every coefficient is nonnegative (an actual module)."""
        return all(c > 0 for c in self.terms.values())


def format_element(e: RingElement) -> str:
    parts = []
    for d, c in e.terms.items():
        body = describe(d)
        mag = abs(c)
        term = body if mag == 1 else f"{mag}*{body}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append((" + " if c > 0 else " - ") + term)
    return "".join(parts) if parts else "0"


def identity_block(field: Field) -> Indecomposable:
    """The class of k[x]/(x-1), the unit of the ring."""
    if isinstance(field, RealClosedModel):
        return JBlock(Fraction(1), 1)
    one = field.one
    return Band(Polynomial(field, (field.neg(one), one), reduced=True), 1)


def dim(v: RingElement | Indecomposable) -> int:
    if isinstance(v, RingElement):
        return sum(c * d.dim for d, c in v.terms.items())
    return v.dim


# -- term-pair products ---------------------------------------------------------


def size_ladder(s: int, t: int) -> list:
    """Sizes s+t-1-2i for 0 <= i < min(s, t): J_1(s) (x) J_1(t) in characteristic 0."""
    return [s + t - 1 - 2 * i for i in range(min(s, t))]


def tensor_nil(field: Field, a: Indecomposable, b: Indecomposable) -> RingElement:
    if not isinstance(a, Nil):
        a, b = b, a
    if not isinstance(a, Nil):
        raise ValueError("tensor_nil needs a nilpotent factor")
    if not isinstance(b, Nil):
        return RingElement(field, {a: b.dim})
    s, t = sorted((a.s, b.s))
    terms = {Nil(s): t - s + 1}
    for i in range(1, s):
        terms[Nil(i)] = 2
    return RingElement(field, terms)


def _semisimple_part(f: Polynomial, g: Polynomial, seed: int = 0) -> tuple:
    """Irreducible factors (h, e) of f * g; k[x]/f (x) k[x]/g = sum e [k[x]/h]."""
    return factor(star_product(f, g), seed=seed, degree_cap=DEGREE_CAP).factors


def tensor_char0(field: Field, a: Band, b: Band) -> RingElement:
    if field.characteristic != 0 or isinstance(field, RealClosedModel):
        raise UnsupportedField("characteristic-0 band product needs the rationals")
    terms: dict = defaultdict(int)
    for h, e in _semisimple_part(a.f, b.f):
        for m in size_ladder(a.s, b.s):
            terms[Band(h, m)] += e
    return RingElement(field, terms)


def tensor_charp(field: Field, a: Band, b: Band) -> RingElement:
    p = field.characteristic
    if not p:
        raise UnsupportedField("Green-ring band product needs a finite field")
    sizes = basis_product(a.s, b.s, p)
    terms: dict = defaultdict(int)
    for h, e in _semisimple_part(a.f, b.f):
        for m, c in sizes.items():
            terms[Band(h, m)] += e * c
    return RingElement(field, terms)


def _param_product(lam, mu) -> list:
    """Decompose the product of two 1-block parameters over a real-closed field.

    Each parameter is a Fraction (scalar) or a GaussianRational with im != 0
    (the 2x2 rotation-scaling block).  Returns (kind, parameter, multiplicity).
    """
    lam_real = not isinstance(lam, GaussianRational)
    mu_real = not isinstance(mu, GaussianRational)
    if lam_real and mu_real:
        return [("J", lam * mu, 1)]
    if lam_real or mu_real:
        return [("R", GaussianRational(lam, 0) * mu if lam_real else lam * GaussianRational(mu, 0), 1)]
    prod = lam * mu
    cprod = lam.conjugate() * mu
    if lam.is_imaginary() and mu.is_imaginary():
        return [("J", prod.re, 2), ("J", -prod.re, 2)]
    if (lam.conjugate() / mu).is_real():
        return [("J", prod.re, 2), ("R", cprod, 1)]
    if (lam / mu).is_real():
        return [("J", cprod.re, 2), ("R", prod, 1)]
    return [("R", prod, 1), ("R", cprod, 1)]


def tensor_realclosed(field: Field, a: Indecomposable, b: Indecomposable) -> RingElement:
    if isinstance(a, Nil) or isinstance(b, Nil):
        return tensor_nil(field, a, b)
    for blk in (a, b):
        if isinstance(blk, Band):
            raise UnsupportedField("polynomial bands are not used over the real-closed model")
        if isinstance(blk, JBlock) and blk.lam == 0:
            raise ZeroEigenvalue("zero eigenvalue belongs to the nilpotent part")
    terms: dict = defaultdict(int)
    for kind, param, mult in _param_product(a.lam, b.lam):
        for m in size_ladder(a.s, b.s):
            blk = JBlock(param, m) if kind == "J" else RBlock(param, m)
            terms[blk] += mult
    return RingElement(field, terms)


@lru_cache(maxsize=65536)
def _pair_product(field: Field, a: Indecomposable, b: Indecomposable) -> RingElement:
    if isinstance(field, RealClosedModel):
        return tensor_realclosed(field, a, b)
    if isinstance(a, Nil) or isinstance(b, Nil):
        return tensor_nil(field, a, b)
    if isinstance(field, Rationals):
        return tensor_char0(field, a, b)
    if isinstance(field, (PrimeField, ExtensionField)):
        return tensor_charp(field, a, b)
    raise UnsupportedField(f"no tensor rule over {field.tag}")


def tensor(field: Field, a: Indecomposable, b: Indecomposable) -> RingElement:
    """Decomposition of the tensor product of two indecomposables."""
    if sort_key(b) < sort_key(a):
        a, b = b, a
    return _pair_product(field, a, b)


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    a._same(b)
    acc: dict = defaultdict(int)
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            for d, c in tensor(a.field, da, db).terms.items():
                acc[d] += ca * cb * c
    return RingElement(a.field, acc)
