"""Closed forms: polynomials supported on shifted lattice cones.

Each reduced term q * e^{<c,x>} / prod_i (1 - e^{-<b_i,x>})^{h_i} with an
independent denominator basis B inverts to a single polynomial piece

    poly(alpha) = q * prod_i prod_{j=1}^{h_i-1} <B_i^perp, alpha + c + j*b_i>
                      / ((h_i - 1)! * <B_i^perp, b_i>^{h_i - 1})

supported on the shifted lattice cone offset + N*b_1 + ... + N*b_s with
offset = -c - sum_i (h_i - 1) * b_i.  Summing the pieces of a full toric
reduction evaluates, exactly, to the number of nonnegative integer solutions
of sum beta_i a_i = alpha at every integer point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, factorial, floor

from .expalg import ExpRatTerm
from .linalg import Vec, dot, orth_complement, rank, scale, solve_square, vadd, vsub
from .toric import toric_reduce


@dataclass
class MultiPoly:
    """Polynomial in s variables: exponent tuple -> rational coefficient."""

    monomials: dict[Vec, Fraction]

    @classmethod
    def constant(cls, value, dim: int) -> "MultiPoly":
        value = Fraction(value)
        return cls({(0,) * dim: value} if value else {})

    @classmethod
    def linear(cls, coeffs: Vec, const) -> "MultiPoly":
        """sum coeffs[k] * x_k + const."""
        s = len(coeffs)
        mono = {}
        for k, c in enumerate(coeffs):
            if c:
                e = tuple(1 if j == k else 0 for j in range(s))
                mono[e] = Fraction(c)
        if const:
            mono[(0,) * s] = Fraction(const)
        return cls(mono)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.monomials)
        for e, c in other.monomials.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(out)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict[Vec, Fraction] = {}
        for e1, c1 in self.monomials.items():
            for e2, c2 in other.monomials.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly(out)

    def scaled(self, q) -> "MultiPoly":
        q = Fraction(q)
        return MultiPoly({e: c * q for e, c in self.monomials.items()} if q else {})

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.monomials.items():
            v = c
            for x, p in zip(point, e):
                if p:
                    v *= x ** p
            total += v
        return total

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.monomials:
            return -1
        return max(sum(e) for e in self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials


@dataclass(frozen=True)
class ConePiece:
    basis: tuple[Vec, ...]
    offset: Vec
    poly: MultiPoly = field(compare=False)


@dataclass(frozen=True)
class ClosedForm:
    source: tuple[Vec, ...]
    pieces: tuple[ConePiece, ...]


@lru_cache(maxsize=None)
def _cone_solver(basis: tuple[Vec, ...]):
    """(det, adj) with det > 0 and lambda_i = <adj[i], u> / det for B*lambda = u."""
    s = len(basis)
    inv_cols = []
    det = Fraction(1)
    # Build B^{-1} column by column; det via pivot product of one elimination.
    rows = [[Fraction(basis[j][k]) for j in range(s)] for k in range(s)]
    work = [r[:] for r in rows]
    for col in range(s):
        piv = next((i for i in range(col, s) if work[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular basis")
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        for i in range(col + 1, s):
            if work[i][col] != 0:
                f = work[i][col] / work[col][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    for i in range(s):
        e = tuple(1 if k == i else 0 for k in range(s))
        lam = solve_square(basis, e)
        inv_cols.append(lam)
    d = int(det)
    adj = tuple(tuple(int(inv_cols[k][i] * det) for k in range(s)) for i in range(s))
    if d < 0:
        d = -d
        adj = tuple(tuple(-x for x in row) for row in adj)
    return d, adj


def support_membership(basis, offset: Vec, alpha: Vec) -> bool:
    """True iff alpha lies on offset + N*basis[0] + ... + N*basis[s-1]."""
    d, adj = _cone_solver(tuple(tuple(b) for b in basis))
    u = vsub(tuple(alpha), tuple(offset))
    for row in adj:
        num = dot(row, u)
        if num < 0 or num % d != 0:
            return False
    return True


def inverse_laplace_term(term: ExpRatTerm) -> ConePiece:
    """One reduced term to one polynomial piece on a shifted lattice cone."""
    basis = [f.vector for f in term.denom]
    s = len(basis[0]) if basis else 0
    if len(basis) != s or rank(basis) != s:
        raise ValueError("term denominators must form an invertible basis")
    c = term.num.shift
    poly = MultiPoly.constant(term.num.coeff, s)
    offset = vsub((0,) * s, c)
    for i, f in enumerate(term.denom):
        w = orth_complement(basis, i)
        pair = dot(w, f.vector)
        for j in range(1, f.power):
            poly = poly * MultiPoly.linear(w, dot(w, c) + j * pair)
        if f.power > 1:
            poly = poly.scaled(Fraction(1, factorial(f.power - 1) * pair ** (f.power - 1)))
        offset = vsub(offset, scale(f.vector, f.power - 1))
    return ConePiece(tuple(basis), offset, poly)


def closed_form(X) -> ClosedForm:
    """Toric-reduce X and invert every term; merge pieces on (basis, offset)."""
    rf = toric_reduce(X)
    return merge_pieces(rf.source, [inverse_laplace_term(t) for t in rf.sum.terms])


def merge_pieces(source, pieces) -> ClosedForm:
    acc: dict[tuple, MultiPoly] = {}
    for p in pieces:
        key = (p.basis, p.offset)
        acc[key] = acc[key] + p.poly if key in acc else p.poly
    merged = [ConePiece(b, off, poly) for (b, off), poly in acc.items()
              if not poly.is_zero()]
    merged.sort(key=lambda p: (p.basis, p.offset))
    return ClosedForm(tuple(tuple(a) for a in source), tuple(merged))


def eval_closed(cf: ClosedForm, alpha) -> int:
    """Exact count at one lattice point; always a nonnegative integer."""
    alpha = tuple(alpha)
    total = Fraction(0)
    for p in cf.pieces:
        if support_membership(p.basis, p.offset, alpha):
            total += p.poly.evaluate(alpha)
    assert total.denominator == 1 and total >= 0, \
        f"closed form produced non-count value {total} at {alpha}"
    return int(total)


def eval_closed_box(cf: ClosedForm, lo: Vec, hi: Vec) -> dict[Vec, int]:
    """Counts for every lattice point of the box, walking each piece's own
    support lattice instead of testing membership pointwise."""
    s = len(lo)
    acc: dict[Vec, Fraction] = {}
    corners = list(product(*[(l, h) for l, h in zip(lo, hi)]))
    for p in cf.pieces:
        d, adj = _cone_solver(p.basis)
        ranges = []
        for i in range(s):
            vals = [Fraction(dot(adj[i], vsub(c, p.offset)), d) for c in corners]
            lo_i = max(0, ceil(min(vals)))
            hi_i = floor(max(vals))
            if hi_i < lo_i:
                ranges = None
                break
            ranges.append(range(lo_i, hi_i + 1))
        if ranges is None:
            continue
        for lam in product(*ranges):
            alpha = p.offset
            for li, b in zip(lam, p.basis):
                alpha = vadd(alpha, scale(b, li))
            if all(l <= a <= h for l, a, h in zip(lo, alpha, hi)):
                acc[alpha] = acc.get(alpha, Fraction(0)) + p.poly.evaluate(alpha)
    out = {}
    for alpha, v in acc.items():
        assert v.denominator == 1 and v >= 0
        if v:
            out[alpha] = int(v)
    return out
