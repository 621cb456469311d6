"""Exact rational linear algebra for small dense integer systems.

Everything works over Python ints and fractions.Fraction; no floats enter
any computation here.  Vectors are plain tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Vec = tuple[int, ...]


def dot(u, v):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def scale(v: Vec, n: int) -> Vec:
    return tuple(n * c for c in v)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(v: Vec) -> Vec:
    return tuple(-c for c in v)


def is_zero(v: Vec) -> bool:
    return all(c == 0 for c in v)


@dataclass(frozen=True)
class IntegerRelation:
    """Primitive relation: multiplier * target == sum(coefficients[i] * basis[i]).

    The multiplier is always positive and gcd(multiplier, *coefficients) == 1;
    the sign pattern of the coefficients is free.
    """

    multiplier: int
    coefficients: tuple[int, ...]


@dataclass(frozen=True)
class PointedCertificate:
    """Rational vector xi with <xi, a> >= 1 for every a in the certified system."""

    xi: tuple[Fraction, ...]

    def pairing(self, v) -> Fraction:
        return sum(x * c for x, c in zip(self.xi, v))

    def scaled(self) -> tuple[Vec, int]:
        """Integer multiple (L*xi, L) of the certificate, L the lcm of denominators."""
        m = lcm(*(f.denominator for f in self.xi)) if self.xi else 1
        return tuple(int(f * m) for f in self.xi), m


def solve_columns(basis, rhs):
    """Solve sum(lambda_j * basis[j]) == rhs exactly, basis given as columns.

    Returns a tuple of Fractions, or None when the columns are dependent /
    singular or the system is inconsistent (rhs outside the column span).
    """
    s = len(rhs)
    r = len(basis)
    for b in basis:
        if len(b) != s:
            raise ValueError("dimension mismatch between basis and right-hand side")
    rows = [[Fraction(basis[j][k]) for j in range(r)] + [Fraction(rhs[k])]
            for k in range(s)]
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, s) if rows[i][col] != 0), None)
        if piv is None:
            return None  # dependent columns
        rows[row], rows[piv] = rows[piv], rows[row]
        pv = rows[row][col]
        rows[row] = [x / pv for x in rows[row]]
        for i in range(s):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[row])]
        row += 1
    for i in range(row, s):
        if rows[i][r] != 0:
            return None  # inconsistent
    return tuple(rows[c][r] for c in range(r))


def solve_square(basis, rhs):
    """Solve a square system: s basis vectors of dimension s. None when singular."""
    s = len(rhs)
    if len(basis) != s:
        raise ValueError(f"expected {s} basis vectors, got {len(basis)}")
    return solve_columns(basis, rhs)


def rank(X) -> int:
    """Rank over the rationals of the span of the given integer vectors."""
    if not X:
        return 0
    rows = [[Fraction(c) for c in v] for v in X]
    s = len(rows[0])
    rk = 0
    for col in range(s):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pv = rows[rk][col]
        for i in range(rk + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def integer_relation(basis, target):
    """Primitive integer relation m * target == sum(c_i * basis[i]).

    basis must be linearly independent.  Returns None when target lies outside
    the span.  The multiplier m is the least positive integer clearing the
    denominators of the rational solution, which makes the relation primitive.
    """
    lam = solve_columns(basis, target)
    if lam is None:
        return None
    m = lcm(*(f.denominator for f in lam)) if lam else 1
    coeffs = tuple(int(f * m) for f in lam)
    return IntegerRelation(m, coeffs)


def orth_complement(basis, i: int) -> Vec:
    """Primitive integer vector orthogonal to all basis vectors except basis[i].

    basis must be s invertible columns; the returned w satisfies
    <w, basis[j]> == 0 for j != i and <w, basis[i]> > 0, with content 1.
    Index i is 0-based.
    """
    s = len(basis)
    cols = [tuple(b[k] for b in basis) for k in range(s)]  # transpose
    e = tuple(1 if k == i else 0 for k in range(s))
    w = solve_columns(cols, e)
    if w is None:
        raise ValueError("basis is singular")
    m = lcm(*(f.denominator for f in w))
    v = [int(f * m) for f in w]
    g = gcd(*v)
    return tuple(c // g for c in v)


def pointedness_certificate(X):
    """Rational xi with <xi, a> >= 1 for all a in X, via Fourier-Motzkin.

    Returns None exactly when the system is infeasible, i.e. the cone spanned
    by X contains a line (some nonzero nonnegative combination vanishes).
    """
    if not X:
        return PointedCertificate(())
    s = len(X[0])
    cons = [(tuple(Fraction(c) for c in a), Fraction(1)) for a in X]
    stages = []
    for var in range(s):
        stages.append(cons)
        pos = [c for c in cons if c[0][var] > 0]
        neg = [c for c in cons if c[0][var] < 0]
        new = [c for c in cons if c[0][var] == 0]
        for cp, rp in pos:
            for cn, rn in neg:
                coefs = tuple(cp[k] / cp[var] - cn[k] / cn[var] for k in range(s))
                new.append((coefs, rp / cp[var] - rn / cn[var]))
        cons = new
    if any(r > 0 for _, r in cons):
        return None
    xi = [Fraction(0)] * s
    for var in reversed(range(s)):
        lo = hi = None
        for coefs, r in stages[var]:
            c = coefs[var]
            if c == 0:
                continue
            bound = (r - sum(coefs[k] * xi[k] for k in range(var + 1, s))) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            xi[var] = Fraction(0)
        elif lo is None:
            xi[var] = hi
        elif hi is None:
            xi[var] = lo
        else:
            xi[var] = (lo + hi) / 2
    cert = PointedCertificate(tuple(xi))
    assert all(cert.pairing(a) >= 1 for a in X)
    return cert
