"""Command-line interface: ``kxring <command> [flags]``.

Exit status: 0 success, 1 verification mismatch (or inconclusive oracle),
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import __version__, poly, repring
from .errors import KxRingError
from .expr import parse_module_expr
from .fields import ExtensionField, PrimeField, RealClosedModel, format_gaussian, make_field
from .green import WPolynomial, basis_product, format_v, format_w, v_to_w, w_expand
from .oracle import predicted_matrix, block_matrix, verify_module_product
from .linalg import kronecker
from .poly import factor, format_poly, parse_poly, roots_in_extension, star_product
from .quiver import StringDesc, qring_mul
from .repring import Band, JBlock, Nil, RBlock
from .representation import QuiverShape
from .suites import SUITES, run_suites

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- rendering helpers --------------------------------------------------------------


def compact(f) -> str:
    return format_poly(f).replace(" ", "")


def render_factorization(unit, factors, field) -> str:
    """``(x^2+x+1)^1 * (x-1)^2``: factors by degree descending, then coefficients."""
    ordered = sorted(factors, key=lambda he: (-he[0].degree, he[0].sort_key()))
    parts = [f"({compact(h)})^{e}" for h, e in ordered]
    if unit != field.one:
        parts.insert(0, field.fmt(unit) if hasattr(field, "fmt") else str(unit))
    return " * ".join(parts) if parts else (str(unit))


def term_json(d, c) -> dict:
    if isinstance(d, Nil):
        return {"kind": "nil", "s": d.s, "coeff": c}
    if isinstance(d, Band):
        return {"kind": "band", "poly": compact(d.f), "s": d.s, "coeff": c}
    if isinstance(d, JBlock):
        return {"kind": "J", "lambda": str(d.lam), "s": d.s, "coeff": c}
    if isinstance(d, RBlock):
        return {"kind": "R", "lambda": format_gaussian(d.lam), "s": d.s, "coeff": c}
    raise TypeError(d)


def quiver_term_json(d, c, shape) -> dict:
    dims = list(d.dim_vector(shape))
    if isinstance(d, StringDesc):
        return {"kind": "string", "i": d.i, "j": d.j, "coeff": c, "dims": dims}
    return {"kind": "band", "poly": compact(d.f), "s": d.s, "coeff": c, "dims": dims}


def emit(args, doc: dict, text: str):
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, **doc}
        print(json.dumps(doc, sort_keys=False))
    else:
        print(text)


# -- commands ---------------------------------------------------------------------


def _field(args):
    field = make_field(args.field)
    if isinstance(field, ExtensionField):
        raise UsageError("extension fields are not selectable")
    return field


def _apply_caps(args):
    if getattr(args, "degree_cap", None) is not None:
        repring.DEGREE_CAP = args.degree_cap


def cmd_decompose(args) -> int:
    field = _field(args)
    _apply_caps(args)
    a = parse_module_expr(args.lhs, field)
    b = parse_module_expr(args.rhs, field)
    if not (a.is_effective() and b.is_effective()):
        raise UsageError("decompose needs modules (nonnegative coefficients); use 'ring' mode for virtual classes")
    if a.dim * b.dim > args.max_dim and args.verify:
        raise UsageError(f"product dimension {a.dim * b.dim} exceeds --max-dim {args.max_dim}")
    result = a * b
    doc = {"command": "decompose", "field": field.tag, "lhs": str(a), "rhs": str(b),
           "result": str(result), "dim": result.dim,
           "terms": [term_json(d, c) for d, c in result.terms.items()]}
    status = EXIT_OK
    if args.verify or args.dump_matrix:
        if len(a) != 1 or len(b) != 1 or next(iter(a.terms.values())) != 1 or next(iter(b.terms.values())) != 1:
            raise UsageError("--verify and --dump-matrix need single indecomposable operands")
        (da, _), = a.terms.items()
        (db, _), = b.terms.items()
        if args.dump_matrix:
            lhs_m = kronecker(block_matrix(da, field), block_matrix(db, field))
            rhs_m = predicted_matrix(result.terms.items(), field)
            print(json.dumps({"lhs_matrix": lhs_m.to_json(), "predicted_matrix": rhs_m.to_json()}),
                  file=sys.stderr)
        if args.verify:
            report = verify_module_product(da, db, result, field)
            doc["verification"] = {
                "match": report.match,
                "lhs_fingerprint": [compact(f) for f in report.lhs_fingerprint],
                "rhs_fingerprint": [compact(f) for f in report.rhs_fingerprint],
            }
            status = EXIT_OK if report.match else EXIT_MISMATCH
    text = str(result)
    if args.verify:
        text += "\nverified: " + ("match" if status == EXIT_OK else "MISMATCH")
    emit(args, doc, text)
    return status


def cmd_ring(args) -> int:
    """Full Z-linear product of virtual classes."""
    field = _field(args)
    _apply_caps(args)
    a = parse_module_expr(args.lhs, field)
    b = parse_module_expr(args.rhs, field)
    result = a * b
    doc = {"command": "ring", "field": field.tag, "lhs": str(a), "rhs": str(b),
           "result": str(result), "dim": result.dim,
           "terms": [term_json(d, c) for d, c in result.terms.items()]}
    emit(args, doc, str(result))
    return EXIT_OK


def cmd_star(args) -> int:
    field = _field(args)
    if isinstance(field, RealClosedModel):
        raise UsageError("the star product is computed over q or f<p>")
    f = parse_poly(args.f, field)
    g = parse_poly(args.g, field)
    h = star_product(f, g)
    fac = factor(h, seed=args.seed, degree_cap=args.degree_cap)
    text = render_factorization(fac.unit, fac.factors, field)
    doc = {"command": "star", "field": field.tag, "f": compact(f), "g": compact(g),
           "product": compact(h), "result": text,
           "factors": [{"poly": compact(p), "multiplicity": e} for p, e in fac.factors]}
    status = EXIT_OK
    if args.check_roots:
        if not isinstance(field, PrimeField):
            raise UsageError("--check-roots works over f<p>")
        from math import lcm

        m = lcm(f.degree, g.degree)
        rf = roots_in_extension(f, m, cap=args.enum_cap)
        rg = roots_in_extension(g, m, cap=args.enum_cap)
        rh = roots_in_extension(h, m, cap=args.enum_cap)
        E = poly.extension_field(field.p, m)
        prods = Counter(E.mul(a, b) for a in rf for b in rg)
        ok = prods == Counter(rh)
        doc["roots_check"] = ok
        text += "\nroots: " + ("match" if ok else "MISMATCH")
        status = EXIT_OK if ok else EXIT_MISMATCH
    emit(args, doc, text)
    return status


def cmd_factor(args) -> int:
    field = _field(args)
    if isinstance(field, RealClosedModel):
        raise UsageError("factor works over q or f<p>")
    f = parse_poly(args.poly, field)
    fac = factor(f, seed=args.seed, degree_cap=args.degree_cap)
    text = render_factorization(fac.unit, fac.factors, field)
    unit = fac.unit
    doc = {"command": "factor", "field": field.tag, "poly": compact(f), "result": text,
           "unit": str(unit),
           "factors": [{"poly": compact(p), "multiplicity": e} for p, e in fac.factors]}
    emit(args, doc, text)
    return EXIT_OK


def _parse_w(text: str, p: int) -> WPolynomial:
    """Parse ``w1^2*w0 + w1 - w0`` style W-polynomials."""
    import re

    t = text.replace(" ", "")
    if not t:
        raise UsageError("empty W-polynomial")
    if t[0] not in "+-":
        t = "+" + t
    terms: dict = {}
    pos = 0
    pattern = re.compile(r"([+-])(\d+)?\*?((?:w\d+(?:\^\d+)?\*?)*)")
    while pos < len(t):
        m = pattern.match(t, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise UsageError(f"cannot parse W-polynomial at position {pos}")
        c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        mono = []
        for a, k in re.findall(r"w(\d+)(?:\^(\d+))?", m.group(3)):
            mono.extend([int(a)] * int(k or 1))
        key = tuple(sorted(mono))
        terms[key] = terms.get(key, 0) + c
        pos = m.end()
    return WPolynomial(p, terms)


def cmd_green(args) -> int:
    p = args.p
    PrimeField(p)  # rejects composite p
    if args.to_w is not None:
        w = v_to_w(args.to_w, p)
        text = format_w(w)
        doc = {"command": "green", "p": p, "mode": "to-w", "s": args.to_w, "result": text,
               "monomials": [{"alphas": sorted(m, reverse=True), "coeff": c} for m, c in w.terms.items()]}
    elif args.expand is not None:
        e = w_expand(_parse_w(args.expand, p))
        text = format_v(e)
        doc = {"command": "green", "p": p, "mode": "expand", "w": args.expand, "result": text,
               "terms": [{"s": s, "coeff": c} for s, c in e.coeffs.items()]}
    else:
        if args.s is None or args.t is None:
            raise UsageError("green needs --s and --t, --to-w, or --expand")
        e = basis_product(args.s, args.t, p)
        text = format_v(e)
        doc = {"command": "green", "p": p, "mode": "product", "s": args.s, "t": args.t, "result": text,
               "terms": [{"s": s, "coeff": c} for s, c in e.coeffs.items()]}
    emit(args, doc, text)
    return EXIT_OK


def cmd_quiver(args) -> int:
    field = _field(args)
    if isinstance(field, RealClosedModel):
        raise UsageError("quiver products run over q or f<p>")
    _apply_caps(args)
    orientation = ()
    if args.orientation:
        if set(args.orientation) - {"+", "-"}:
            raise UsageError("--orientation is a string of + and - (one per arrow)")
        orientation = tuple(ch == "+" for ch in args.orientation)
    shape = QuiverShape(args.n, orientation)
    a = parse_module_expr(args.lhs, field, shape)
    b = parse_module_expr(args.rhs, field, shape)
    result = qring_mul(a, b)
    doc = {"command": "quiver", "field": field.tag, "n": shape.n,
           "orientation": "".join("+" if o else "-" for o in shape.orientation),
           "lhs": str(a), "rhs": str(b), "result": str(result),
           "dim_vector": list(result.dim_vector()),
           "terms": [quiver_term_json(d, c, shape) for d, c in result.terms.items()]}
    emit(args, doc, str(result))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    results = run_suites(names, args.cases, args.seed, args.max_dim, jobs=args.jobs)
    ok = all(r.ok for r in results)
    lines = [f"{'suite':<12}{'cases':>7}{'match':>7}{'mismatch':>10}{'inconclusive':>14}"]
    for r in results:
        lines.append(f"{r.name:<12}{r.cases:>7}{r.match:>7}{r.mismatch:>10}{r.inconclusive:>14}")
    for r in results:
        for f in r.failures:
            where = f" n={f['n']}" if f["n"] >= 0 else ""
            lines.append(f"{f['outcome'].upper()} {r.name} [{f['field']}{where}]: {f['lhs']} * {f['rhs']}")
    lines.append("result: " + ("ok" if ok else "FAILED"))
    doc = {"command": "verify", "seed": args.seed, "max_dim": args.max_dim, "cases": args.cases,
           "ok": ok,
           "suites": [{"name": r.name, "cases": r.cases, "match": r.match, "mismatch": r.mismatch,
                       "inconclusive": r.inconclusive, "failures": r.failures} for r in results]}
    emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


# -- argument parsing ---------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kxring",
        description="Tensor products of k[x]-modules and cyclic-quiver representations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=_seed, default=0, help="seed for randomized steps")
    common.add_argument("--degree-cap", type=_positive, default=poly.QQ_DEGREE_CAP,
                        help="largest degree factored over Q")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="decompose a tensor product of modules")
    p.add_argument("--field", required=True, help="q, f<p> or rc")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--verify", action="store_true", help="check against the invariant-factor oracle")
    p.add_argument("--dump-matrix", action="store_true", help="write the matrices as JSON to stderr")
    p.add_argument("--max-dim", type=_positive, default=1024)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("ring", parents=[common], help="product of virtual classes (integer coefficients)")
    p.add_argument("--field", required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.set_defaults(run=cmd_ring)

    p = sub.add_parser("star", parents=[common], help="composed product of two polynomials, factored")
    p.add_argument("--field", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--check-roots", action="store_true",
                   help="over f<p>, compare root multisets in a splitting field")
    p.add_argument("--enum-cap", type=_positive, default=poly.ROOT_ENUMERATION_CAP)
    p.set_defaults(run=cmd_star)

    p = sub.add_parser("factor", parents=[common], help="factor a polynomial")
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("green", parents=[common], help="Green ring of cyclic p-groups")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=_positive)
    p.add_argument("--t", type=_positive)
    p.add_argument("--to-w", type=_positive, metavar="S", help="write v_S in the generators w_a")
    p.add_argument("--expand", metavar="W", help="expand a W-polynomial in the basis v_s")
    p.set_defaults(run=cmd_green)

    p = sub.add_parser("quiver", parents=[common], help="products for the cyclic quiver with n+1 vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--orientation", help="one + or - per arrow (+ means a_i -> a_{i+1})")
    p.set_defaults(run=cmd_quiver)

    p = sub.add_parser("verify", parents=[common], help="run randomized oracle suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--cases", type=_positive, default=20, help="cases per suite")
    p.add_argument("--max-dim", type=_positive, default=36)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"kxring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KxRingError as exc:
        print(f"kxring: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"kxring: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
