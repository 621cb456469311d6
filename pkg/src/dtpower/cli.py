"""Command-line front end: parse vector systems, run engines, render results.

Subcommands: count | reduce | closed-form | verify | bench.  Input is one
vector per line of whitespace-separated integers ('#' comments allowed),
taken from a positional file or standard input.  Exit codes: 0 success,
2 invalid input or usage, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .engines import DMContext, brute_force_count, cross_check, dm_count
from .expalg import ExpRatSum
from .linalg import Vec, pointedness_certificate, rank
from .quasipoly import ClosedForm, ConePiece, MultiPoly, closed_form, eval_closed
from .toric import toric_reduce


class InputError(ValueError):
    """Invalid problem input; reported on stderr with exit code 2."""


@dataclass(frozen=True)
class ProblemSpec:
    dimension: int
    vectors: tuple[Vec, ...]
    label: str | None = None


def parse_vectors(text: str, label: str | None = None) -> ProblemSpec:
    """One vector per line; dimension inferred from the first row.

    The multiset order is preserved.  Validation rejects ragged rows, zero
    vectors, rank-deficient systems and non-pointed systems, each with its
    own message.
    """
    vectors = []
    dim = None
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise InputError(f"line {ln}: not an integer vector: {line!r}")
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise InputError(f"line {ln}: ragged row, expected {dim} entries")
        if all(c == 0 for c in row):
            raise InputError(f"line {ln}: zero vector is not allowed")
        vectors.append(row)
    if not vectors:
        raise InputError("no vectors in input")
    if rank(vectors) != dim:
        raise InputError(f"rank-deficient system: rank {rank(vectors)} < dimension {dim}")
    if pointedness_certificate(vectors) is None:
        raise InputError("system is not pointed: a nonzero nonnegative combination vanishes")
    return ProblemSpec(dim, tuple(vectors), label)


# ---------------------------------------------------------------- rendering

def _varnames(s: int) -> list[str]:
    return list("xyz"[:s]) if s <= 3 else [f"x{i + 1}" for i in range(s)]


def fmt_linear(coeffs, names) -> str:
    parts = []
    for c, n in zip(coeffs, names):
        if c == 0:
            continue
        if c == 1:
            parts.append(n)
        elif c == -1:
            parts.append(f"-{n}")
        else:
            parts.append(f"{c}{n}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def fmt_poly(poly: MultiPoly, names) -> str:
    if not poly.monomials:
        return "0"
    bits = []
    for exps in sorted(poly.monomials, key=lambda e: (-sum(e), e)):
        c = poly.monomials[exps]
        var = "*".join(f"{n}^{p}" if p > 1 else n
                       for n, p in zip(names, exps) if p)
        if not var:
            bits.append(str(c))
        elif c == 1:
            bits.append(var)
        elif c == -1:
            bits.append(f"-{var}")
        else:
            bits.append(f"{c}*{var}")
    out = bits[0]
    for b in bits[1:]:
        out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
    return out


def fmt_term(term, names) -> str:
    q = term.num.coeff
    head = f"{q}" if q != 1 else "1"
    e = fmt_linear(term.num.shift, names)
    if e != "0":
        head = f"{head}*e^({e})" if head != "1" else f"e^({e})"
    tail = " ".join(
        f"(1 - e^(-({fmt_linear(f.vector, names)})))^{f.power}" if f.power > 1
        else f"(1 - e^(-({fmt_linear(f.vector, names)})))"
        for f in term.denom)
    return f"{head} / [{tail}]" if tail else head


def render_reduced_text(rf, names=None) -> str:
    names = names or _varnames(len(rf.source[0]))
    return "\n".join(fmt_term(t, names) for t in rf.sum.terms)


def render_reduced_latex(rf) -> str:
    names = _varnames(len(rf.source[0]))
    parts = []
    for t in rf.sum.terms:
        num = f"{_latex_frac(t.num.coeff)} e^{{{fmt_linear(t.num.shift, names)}}}"
        den = "".join(
            f"(1-e^{{-({fmt_linear(f.vector, names)})}})^{{{f.power}}}"
            for f in t.denom)
        parts.append(f"\\frac{{{num}}}{{{den}}}")
    return " + ".join(parts).replace("+ \\frac{-", "- \\frac{")


def _latex_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"\\frac{{{q.numerator}}}{{{q.denominator}}}"


def render_closed_text(cf: ClosedForm) -> str:
    names = _varnames(len(cf.source[0]))
    lines = []
    for p in cf.pieces:
        basis = ", ".join(str(b) for b in p.basis)
        lines.append(f"[{fmt_poly(p.poly, names)}]  on  {p.offset} + N*{{{basis}}}")
    return "\n".join(lines)


def _latex_poly(poly: MultiPoly, names) -> str:
    if not poly.monomials:
        return "0"
    bits = []
    for exps in sorted(poly.monomials, key=lambda e: (-sum(e), e)):
        c = poly.monomials[exps]
        var = " ".join(f"{n}^{p}" if p > 1 else n
                       for n, p in zip(names, exps) if p)
        if not var:
            bits.append(_latex_frac(c))
        elif c == 1:
            bits.append(var)
        elif c == -1:
            bits.append(f"-{var}")
        else:
            bits.append(f"{_latex_frac(c)} {var}")
    out = bits[0]
    for b in bits[1:]:
        out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
    return out


def render_closed_latex(cf: ClosedForm) -> str:
    names = _varnames(len(cf.source[0]))
    parts = []
    for p in cf.pieces:
        basis = ",".join("(" + ",".join(str(c) for c in b) + ")" for b in p.basis)
        shift = ", ".join(f"{n} - ({v})" for n, v in zip(names, p.offset))
        poly = _latex_poly(p.poly, names)
        parts.append(f"\\left({poly}\\right)\\, t_{{\\{{{basis}\\}}}}({shift})")
    return " + ".join(parts)


# ------------------------------------------------------------- JSON schema

def closed_form_to_json(cf: ClosedForm) -> dict:
    return {
        "dimension": len(cf.source[0]),
        "vectors": [list(v) for v in cf.source],
        "pieces": [
            {
                "basis": [list(b) for b in p.basis],
                "offset": list(p.offset),
                "poly": [
                    {"exponents": list(e), "coeff": str(p.poly.monomials[e])}
                    for e in sorted(p.poly.monomials)
                ],
            }
            for p in cf.pieces
        ],
    }


def closed_form_from_json(data: dict) -> ClosedForm:
    pieces = []
    for p in data["pieces"]:
        poly = MultiPoly({tuple(m["exponents"]): Fraction(m["coeff"])
                          for m in p["poly"]})
        pieces.append(ConePiece(tuple(tuple(b) for b in p["basis"]),
                                tuple(p["offset"]), poly))
    return ClosedForm(tuple(tuple(v) for v in data["vectors"]), tuple(pieces))


def reduced_to_json(rf) -> dict:
    return {
        "dimension": len(rf.source[0]),
        "vectors": [list(v) for v in rf.source],
        "terms": [
            {
                "coeff": str(t.num.coeff),
                "shift": list(t.num.shift),
                "denominators": [
                    {"vector": list(f.vector), "power": f.power} for f in t.denom
                ],
            }
            for t in rf.sum.terms
        ],
    }


# ---------------------------------------------------------------- commands

def _read_spec(args) -> ProblemSpec:
    if args.input and args.input != "-":
        with open(args.input) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return parse_vectors(text, label=args.input)


def _parse_point(text: str, dim: int) -> Vec:
    try:
        point = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"invalid point: {text!r}")
    if len(point) != dim:
        raise InputError(f"point has {len(point)} coordinates, expected {dim}")
    return point


def _parse_box(text: str, dim: int) -> tuple[Vec, Vec]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise InputError(f"invalid box: {text!r} (expected lo:hi)")
    if hi < lo:
        raise InputError("box upper corner below lower corner")
    return (lo,) * dim, (hi,) * dim


def cmd_count(args) -> int:
    spec = _read_spec(args)
    alpha = _parse_point(args.point, spec.dimension)
    if args.engine == "brute":
        cert = pointedness_certificate(spec.vectors)
        value = brute_force_count(spec.vectors, alpha, cert)
    elif args.engine == "recursion":
        value = dm_count(spec.vectors, alpha)
    else:
        value = eval_closed(closed_form(spec.vectors), alpha)
    print(value)
    return 0


def cmd_reduce(args) -> int:
    spec = _read_spec(args)
    rf = toric_reduce(spec.vectors)
    if args.format == "json":
        print(json.dumps(reduced_to_json(rf), indent=2))
    elif args.format == "latex":
        print(render_reduced_latex(rf))
    else:
        print(render_reduced_text(rf))
    return 0


def cmd_closed_form(args) -> int:
    spec = _read_spec(args)
    cf = closed_form(spec.vectors)
    if args.format == "json":
        print(json.dumps(closed_form_to_json(cf), indent=2))
    elif args.format == "latex":
        print(render_closed_latex(cf))
    else:
        print(render_closed_text(cf))
    return 0


def cmd_verify(args) -> int:
    spec = _read_spec(args)
    lo, hi = _parse_box(args.box, spec.dimension)
    report = cross_check(spec.vectors, lo, hi, seed=args.seed)
    npts = report.totals["brute"]
    if report.ok:
        print(f"OK: {npts} points, 0 mismatches")
        return 0
    print(f"FAIL: {npts} points, {len(report.mismatches)} mismatches")
    for alpha, b, r, c in report.mismatches:
        print(f"  at {alpha}: brute={b} recursion={r} closed={c}")
    return 3


def cmd_bench(args) -> int:
    spec = _read_spec(args)
    lo, hi = _parse_box(args.box, spec.dimension)
    report = cross_check(spec.vectors, lo, hi)
    print(f"{'engine':<12}{'points':>8}{'seconds':>12}")
    for eng in ("brute", "recursion", "closed"):
        print(f"{eng:<12}{report.totals[eng]:>8}{report.timings[eng]:>12.4f}")
    if not report.ok:
        print(f"{len(report.mismatches)} mismatches!")
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dtpower",
        description="Count nonnegative integer solutions of sum(beta_i * a_i) = alpha.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", nargs="?", default="-",
                       help="vector file, one integer vector per line (default: stdin)")

    p = sub.add_parser("count", help="count solutions at one lattice point")
    p.add_argument("--point", required=True, help="target point, e.g. 2 or 1,3")
    p.add_argument("--engine", choices=["brute", "recursion", "closed"],
                   default="closed")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("reduce", help="print the toric reduction")
    p.add_argument("--format", choices=["text", "json", "latex"], default="text")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("closed-form", help="print the closed form")
    p.add_argument("--format", choices=["text", "json", "latex"], default="text")
    common(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("verify", help="cross-check all engines on a box")
    p.add_argument("--box", default="-6:12", help="per-coordinate range lo:hi")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time all engines on a box")
    p.add_argument("--box", default="-6:12", help="per-coordinate range lo:hi")
    common(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
