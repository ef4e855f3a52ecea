"""Green ring of cyclic p-groups, i.e. the unipotent subring in characteristic p.

Basis element ``v_s`` is the class of k[x]/(x-1)^s.  Products are computed by
rewriting each ``v_s`` as a polynomial in the generators
``w_a = v_{p^a+1} - v_{p^a-1}``, multiplying those polynomials, and expanding
back with the three-case rule for ``w_a * v_r``.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import RangeError
from .fields import is_prime


def _check_p(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def _clean(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


class RPrimeElement:
    """Integer combination of the classes ``v_s`` (s >= 1) for a fixed prime p."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Mapping[int, int] | None = None):
        self.p = p
        coeffs = _clean(coeffs or {})
        for s in coeffs:
            if s < 1:
                raise ValueError(f"basis index must be positive, got {s}")
        self.coeffs = dict(sorted(coeffs.items(), reverse=True))

    @classmethod
    def v(cls, p: int, s: int, c: int = 1) -> "RPrimeElement":
        return cls(p, {s: c} if s > 0 else {})

    @classmethod
    def one(cls, p: int) -> "RPrimeElement":
        return cls(p, {1: 1})

    def __eq__(self, other):
        if not isinstance(other, RPrimeElement):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, tuple(self.coeffs.items())))

    def __repr__(self):
        return f"RPrimeElement(p={self.p}, {self})"

    def __str__(self):
        return format_v(self)

    def __bool__(self):
        return bool(self.coeffs)

    def _same(self, other: "RPrimeElement"):
        if self.p != other.p:
            raise ValueError("elements for different primes")

    def __add__(self, other: "RPrimeElement") -> "RPrimeElement":
        self._same(other)
        out = defaultdict(int, self.coeffs)
        for s, c in other.coeffs.items():
            out[s] += c
        return RPrimeElement(self.p, out)

    def __neg__(self):
        return RPrimeElement(self.p, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other: "RPrimeElement") -> "RPrimeElement":
        return self + (-other)

    def scale(self, k: int) -> "RPrimeElement":
        return RPrimeElement(self.p, {s: k * c for s, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return rprime_mul(self, other)

    __rmul__ = __mul__

    @property
    def dim(self) -> int:
        return sum(s * c for s, c in self.coeffs.items())

    def items(self):
        return self.coeffs.items()


class WPolynomial:
    """Integer polynomial in the commuting generators ``w_0, w_1, ...``.

    Monomials are ascending tuples of generator indices; ``()`` is 1.
    """

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[tuple, int] | None = None):
        self.p = p
        self.terms = {tuple(sorted(m)): c for m, c in _clean(terms or {}).items()}

    @classmethod
    def const(cls, p: int, c: int = 1) -> "WPolynomial":
        return cls(p, {(): c})

    @classmethod
    def gen(cls, p: int, alpha: int) -> "WPolynomial":
        return cls(p, {(alpha,): 1})

    def __eq__(self, other):
        if not isinstance(other, WPolynomial):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __repr__(self):
        return f"WPolynomial(p={self.p}, {self})"

    def __str__(self):
        return format_w(self)

    def __add__(self, other: "WPolynomial") -> "WPolynomial":
        out = defaultdict(int, self.terms)
        for m, c in other.terms.items():
            out[m] += c
        return WPolynomial(self.p, out)

    def __neg__(self):
        return WPolynomial(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "WPolynomial") -> "WPolynomial":
        return self + (-other)

    def __mul__(self, other: "WPolynomial") -> "WPolynomial":
        out = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[tuple(sorted(m1 + m2))] += c1 * c2
        return WPolynomial(self.p, out)


# -- formatting -----------------------------------------------------------------


def _signed_join(parts: Iterable[tuple[int, str]]) -> str:
    out = []
    for c, body in parts:
        mag = abs(c)
        if body == "1":
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if not out:
            out.append(term if c > 0 else f"-{term}")
        else:
            out.append((" + " if c > 0 else " - ") + term)
    return "".join(out) if out else "0"


def format_v(e: RPrimeElement) -> str:
    """E.g. ``v8 - v4 + 2*v2``; indices descending."""
    return _signed_join((c, f"v{s}") for s, c in sorted(e.coeffs.items(), reverse=True))


def _monomial_str(m: tuple) -> str:
    if not m:
        return "1"
    counts: dict[int, int] = defaultdict(int)
    for a in m:
        counts[a] += 1
    return "*".join(f"w{a}" if k == 1 else f"w{a}^{k}" for a, k in sorted(counts.items(), reverse=True))


def format_w(w: WPolynomial) -> str:
    """E.g. ``w1^2*w0 + w1 - w0``; by degree, then index tuple, both descending."""
    order = sorted(w.terms, key=lambda m: (len(m), tuple(sorted(m, reverse=True))), reverse=True)
    return _signed_join((w.terms[m], _monomial_str(m)) for m in order)


# -- the three-case rule and the translation ----------------------------------


def w_times_v(alpha: int, r: int, p: int) -> RPrimeElement:
    """``w_alpha * v_r`` for 1 <= r <= p^(alpha+1)."""
    q = p ** alpha
    if r < 1 or r > p * q:
        raise RangeError(f"w_{alpha} * v_{r} needs 1 <= r <= {p * q}")
    out: dict[int, int] = defaultdict(int)
    if r <= q:
        out[r + q] += 1
        out[q - r] -= 1
    elif r <= (p - 1) * q:
        out[r + q] += 1
        out[r - q] += 1
    else:
        out[r - q] += 1
        out[p * q] += 2
        out[(2 * p - 1) * q - r] -= 1
    out.pop(0, None)
    return RPrimeElement(p, out)


def _split_index(s: int, p: int) -> tuple[int, int, int]:
    # largest q = p^a with q < s, so that 1 <= s - q <= (p-1)q
    a, q = 0, 1
    while q * p < s:
        q *= p
        a += 1
    return a, q, s - q


@lru_cache(maxsize=None)
def _v_to_w_terms(s: int, p: int) -> tuple:
    if s <= 0:
        return ()
    if s == 1:
        return (((), 1),)
    a, q, r = _split_index(s, p)
    w = WPolynomial.gen(p, a) * WPolynomial(p, dict(_v_to_w_terms(r, p)))
    if r <= q:
        w = w + WPolynomial(p, dict(_v_to_w_terms(s - 2 * r, p)))
    else:
        w = w - WPolynomial(p, dict(_v_to_w_terms(s - 2 * q, p)))
    return tuple(sorted(w.terms.items()))


def v_to_w(s: int, p: int) -> WPolynomial:
    """``v_s`` as a polynomial in the generators ``w_a``."""
    _check_p(p)
    if s < 1:
        raise ValueError("v_to_w needs s >= 1")
    return WPolynomial(p, dict(_v_to_w_terms(s, p)))


@lru_cache(maxsize=None)
def _expand_monomial(m: tuple, p: int) -> tuple:
    acc = {1: 1}
    for a in m:  # ascending
        nxt: dict[int, int] = defaultdict(int)
        for r, c in acc.items():
            for t, d in w_times_v(a, r, p).coeffs.items():
                nxt[t] += c * d
        acc = _clean(nxt)
    return tuple(sorted(acc.items()))


def w_expand(w: WPolynomial) -> RPrimeElement:
    """Expand a W-polynomial back into the ``v_s`` basis."""
    out: dict[int, int] = defaultdict(int)
    for m, c in w.terms.items():
        for s, d in _expand_monomial(m, w.p):
            out[s] += c * d
    return RPrimeElement(w.p, out)


@lru_cache(maxsize=None)
def _basis_product(s: int, t: int, p: int) -> tuple:
    if s == 1:
        return ((t, 1),)
    if t == 1:
        return ((s, 1),)
    prod = w_expand(v_to_w(s, p) * v_to_w(t, p))
    return tuple(prod.coeffs.items())


def basis_product(s: int, t: int, p: int) -> RPrimeElement:
    """``v_s * v_t``."""
    if s > t:
        s, t = t, s
    return RPrimeElement(p, dict(_basis_product(s, t, p)))


def rprime_mul(a: RPrimeElement, b: RPrimeElement) -> RPrimeElement:
    a._same(b)
    out: dict[int, int] = defaultdict(int)
    for s, c in a.coeffs.items():
        for t, d in b.coeffs.items():
            lo, hi = min(s, t), max(s, t)
            for u, e in _basis_product(lo, hi, a.p):
                out[u] += c * d * e
    return RPrimeElement(a.p, out)


# -- induction and restriction ------------------------------------------------


def res_map(v: RPrimeElement) -> RPrimeElement:
    """Restriction: ``v_s -> r v_{t+1} + (p-r) v_t`` where s = tp + r."""
    p = v.p
    out: dict[int, int] = defaultdict(int)
    for s, c in v.coeffs.items():
        t, r = divmod(s, p)
        out[t + 1] += c * r
        out[t] += c * (p - r)
    out.pop(0, None)
    return RPrimeElement(p, out)


def ind_map(v: RPrimeElement) -> RPrimeElement:
    """Induction: ``v_s -> v_{ps}``."""
    return RPrimeElement(v.p, {v.p * s: c for s, c in v.coeffs.items()})
