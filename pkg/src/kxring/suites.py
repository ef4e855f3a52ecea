"""Seeded randomized verification suites used by ``kxring verify``.

Every case is a plain tuple of strings so cases can be shipped to worker
processes; the outcome of a case depends only on that tuple.
"""
from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import Inconclusive
from .expr import parse_module_expr
from .fields import Field, make_field
from .green import basis_product
from .linalg import jordan_block, kronecker
from .oracle import fingerprint, generic_decompose, jordan_type_unipotent, verify_module_product
from .poly import Polynomial, format_poly, is_irreducible
from .quiver import qring_mul, realize
from .repring import ring_mul
from .representation import QuiverShape, tensor_rep

SUITES = ("char0", "charp", "nilpotent", "realclosed", "quiver")


def random_irreducible(field: Field, degree: int, rng: random.Random, bound: int = 3) -> Polynomial:
    """Random monic irreducible with nonzero constant term."""
    while True:
        if field.characteristic:
            coeffs = [rng.randrange(field.characteristic) for _ in range(degree)]
        else:
            coeffs = [rng.randint(-bound, bound) for _ in range(degree)]
        f = Polynomial.from_ints(field, coeffs + [1])
        if not field.is_zero(f.constant_term()) and is_irreducible(f):
            return f


def _band_expr(f: Polynomial, s: int) -> str:
    return f"({format_poly(f).replace(' ', '')})^{s}"


def _random_band(field, rng, max_deg=2, max_s=4):
    f = random_irreducible(field, rng.randint(1, max_deg), rng)
    return f, rng.randint(1, max_s)


def _capped_pair(make, max_dim: int, rng):
    while True:
        (a, da), (b, db) = make(rng), make(rng)
        if da * db <= max_dim:
            return a, b


def generate_cases(suite: str, count: int, seed: int, max_dim: int) -> list:
    """Case tuples ``(suite, field, lhs, rhs, n)``."""
    rng = random.Random(f"{suite}:{seed}")
    cases = []
    for _ in range(count):
        if suite in ("char0", "charp"):
            tag = "q" if suite == "char0" else rng.choice(["f2", "f3", "f5", "f7"])
            F = make_field(tag)

            def make(r, F=F):
                f, s = _random_band(F, r)
                return _band_expr(f, s), s * f.degree

            a, b = _capped_pair(make, max_dim, rng)
            cases.append((suite, tag, a, b, -1))
        elif suite == "nilpotent":
            F = make_field("q")

            def make(r, F=F):
                if r.random() < 0.6:
                    s = r.randint(1, 8)
                    return f"x^{s}", s
                f, s = _random_band(F, r, max_s=3)
                return _band_expr(f, s), s * f.degree

            while True:
                a, b = _capped_pair(make, max_dim, rng)
                if a.startswith("x") or b.startswith("x"):
                    break
            cases.append((suite, "q", a, b, -1))
        elif suite == "realclosed":
            def make(r):
                s = r.randint(1, 2)
                if r.random() < 0.3:
                    return f"J({r.choice([1, 2, -1, -2, 3])},{s})", s
                re_, im = r.randint(-2, 2), r.choice([1, 2, -1])
                z = f"{re_}{'+' if im > 0 else '-'}{abs(im)}i" if re_ else f"{im}i"
                return f"R({z},{s})", 2 * s

            a, b = _capped_pair(make, max_dim, rng)
            cases.append((suite, "rc", a, b, -1))
        elif suite == "quiver":
            n = rng.randint(0, 2)
            tag = "q" if rng.random() < 0.7 else "f3"
            F = make_field(tag)

            def make(r, F=F, n=n):
                if r.random() < 0.7:
                    i = r.randint(0, n)
                    length = r.randint(0, 4)
                    return f"S({i},{i + length})", length + 1
                f, s = _random_band(F, r, max_s=2)
                return f"B({format_poly(f).replace(' ', '')},{s})", (n + 1) * s * f.degree

            a, b = _capped_pair(make, max_dim, rng)
            cases.append((suite, tag, a, b, n))
        else:
            raise ValueError(f"unknown suite {suite!r}")
    return cases


def run_case(case: tuple) -> str:
    """Returns ``match``, ``mismatch`` or ``inconclusive``."""
    suite, tag, lhs, rhs, n = case
    F = make_field(tag)
    if n >= 0:
        shape = QuiverShape(n)
        a = parse_module_expr(lhs, F, shape)
        b = parse_module_expr(rhs, F, shape)
        (da, _), = a.terms.items()
        (db, _), = b.terms.items()
        predicted = qring_mul(a, b)
        rep = tensor_rep(realize(da, shape, F), realize(db, shape, F))
        try:
            got = Counter(s.fingerprint for s in generic_decompose(rep, F))
        except Inconclusive:
            return "inconclusive"
        want = Counter()
        for d, c in predicted.terms.items():
            want[fingerprint(realize(d, shape, F))] += c
        return "match" if got == want else "mismatch"
    a = parse_module_expr(lhs, F)
    b = parse_module_expr(rhs, F)
    (da, _), = a.terms.items()
    (db, _), = b.terms.items()
    report = verify_module_product(da, db, ring_mul(a, b), F)
    ok = report.match
    if ok and suite == "charp":
        # unipotent sizes also checked against the rank-sequence oracle
        p = F.characteristic
        m = kronecker(jordan_block(F, 1, da.s), jordan_block(F, 1, db.s))
        jt = jordan_type_unipotent(m, 1)
        ok = Counter(jt.partition) == Counter(
            {s: c for s, c in basis_product(da.s, db.s, p).coeffs.items()})
    return "match" if ok else "mismatch"


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    match: int = 0
    mismatch: int = 0
    inconclusive: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatch == 0 and self.inconclusive == 0


def run_suites(names, count: int, seed: int, max_dim: int, jobs: int = 1) -> list:
    results = []
    for name in names:
        cases = generate_cases(name, count, seed, max_dim)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(run_case, cases))
        else:
            outcomes = [run_case(c) for c in cases]
        res = SuiteResult(name)
        for case, outcome in zip(cases, outcomes):
            res.cases += 1
            setattr(res, outcome, getattr(res, outcome) + 1)
            if outcome != "match":
                res.failures.append({"lhs": case[2], "rhs": case[3], "field": case[1],
                                     "n": case[4], "outcome": outcome})
        results.append(res)
    return results
