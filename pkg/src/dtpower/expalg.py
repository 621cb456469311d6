"""Formal algebra of exponential-rational expressions.

A term is q * e^{<c,x>} / prod_a (1 - e^{-<a,x>})^{h_a} with q a nonzero
rational, c an integer vector and the a nonzero integer vectors.  Sums of
such terms are kept normalized: denominators sorted, duplicate vectors
merged by adding powers, terms merged on the (shift, denominator) key.

All algebra is exact; numeric evaluation exists only to spot-check
identities and never feeds results.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, dot, is_zero, pointedness_certificate, scale, vadd, vneg

SINGULAR_TOL = 1e-12


class SingularPoint(Exception):
    """Raised when a numeric evaluation point annihilates a denominator factor.

    Retryable: pick another point.
    """


@dataclass(frozen=True)
class ExpMonomial:
    """q * e^{<shift, x>} with q != 0."""

    coeff: Fraction
    shift: Vec


@dataclass(frozen=True, order=True)
class DenomFactor:
    """(1 - e^{-<vector, x>})^power in a denominator; vector != 0, power >= 1."""

    vector: Vec
    power: int


@dataclass(frozen=True)
class ExpRatTerm:
    num: ExpMonomial
    denom: tuple[DenomFactor, ...]

    @property
    def key(self):
        return (self.num.shift, self.denom)

    def total_power(self) -> int:
        return sum(f.power for f in self.denom)


@dataclass(frozen=True)
class ExpRatSum:
    terms: tuple[ExpRatTerm, ...]


def make_term(coeff, shift: Vec, factors=()) -> ExpRatTerm:
    """Build a term, merging duplicate denominator vectors and sorting."""
    coeff = Fraction(coeff)
    if coeff == 0:
        raise ValueError("zero coefficient in term")
    merged: dict[Vec, int] = {}
    for f in factors:
        if is_zero(f.vector):
            raise ValueError("zero vector in denominator")
        if f.power < 1:
            raise ValueError("denominator power must be >= 1")
        merged[f.vector] = merged.get(f.vector, 0) + f.power
    denom = tuple(DenomFactor(v, merged[v]) for v in sorted(merged))
    return ExpRatTerm(ExpMonomial(coeff, shift), denom)


def make_sum(terms) -> ExpRatSum:
    """Normalize: merge terms sharing (shift, denom), drop zeros, sort."""
    acc: dict[tuple, Fraction] = {}
    for t in terms:
        acc[t.key] = acc.get(t.key, Fraction(0)) + t.num.coeff
    out = [ExpRatTerm(ExpMonomial(c, shift), denom)
           for (shift, denom), c in acc.items() if c != 0]
    out.sort(key=lambda t: t.key)
    return ExpRatSum(tuple(out))


def normalize(s: ExpRatSum) -> ExpRatSum:
    return make_sum(s.terms)


def monomial(coeff, shift: Vec) -> ExpRatSum:
    return make_sum([make_term(coeff, shift)])


def one(dim: int) -> ExpRatSum:
    return monomial(1, (0,) * dim)


def add(a: ExpRatSum, b: ExpRatSum) -> ExpRatSum:
    return make_sum(a.terms + b.terms)


def mul_terms(a: ExpRatTerm, b: ExpRatTerm) -> ExpRatTerm:
    return make_term(a.num.coeff * b.num.coeff,
                     vadd(a.num.shift, b.num.shift),
                     a.denom + b.denom)


def mul(a: ExpRatSum, b: ExpRatSum) -> ExpRatSum:
    return make_sum([mul_terms(ta, tb) for ta in a.terms for tb in b.terms])


def laplace_generating(X) -> ExpRatTerm:
    """The product term 1 / prod_{a in X} (1 - e^{-<a,x>})."""
    if not X:
        raise ValueError("empty vector system")
    for a in X:
        if is_zero(a):
            raise ValueError("zero vector in system")
    dim = len(X[0])
    return make_term(1, (0,) * dim, [DenomFactor(tuple(a), 1) for a in X])


def geometric_factor(a: Vec, m: int) -> ExpRatSum:
    """beta = sum_{j=0}^{m-1} e^{-<j*a, x>}, so (1-e^{-<m*a,x>}) = beta*(1-e^{-<a,x>})."""
    if is_zero(a):
        raise ValueError("zero vector")
    if m < 1:
        raise ValueError("m must be >= 1")
    return make_sum([make_term(1, scale(a, -j)) for j in range(m)])


def eval_numeric(expr, x) -> float:
    """Floating evaluation at the real point x; raises SingularPoint when a
    denominator pairing vanishes within tolerance."""
    if isinstance(expr, ExpRatSum):
        return sum(eval_numeric(t, x) for t in expr.terms)
    val = float(expr.num.coeff) * math.exp(dot_f(expr.num.shift, x))
    for f in expr.denom:
        p = dot_f(f.vector, x)
        if abs(p) < SINGULAR_TOL:
            raise SingularPoint(f"pairing with {f.vector} vanishes at {x}")
        val /= (1.0 - math.exp(-p)) ** f.power
    return val


def dot_f(v, x) -> float:
    return sum(float(c) * float(xc) for c, xc in zip(v, x))


def random_generic_point(vectors, seed) -> tuple[float, ...]:
    """Deterministic point x with <a,x> >= 0.1 for every listed vector.

    Built from the pointedness certificate plus a small seeded perturbation;
    pairings are kept inside [0.1, 5] for comfortable float evaluation.
    """
    vectors = [tuple(v) for v in vectors]
    cert = pointedness_certificate(vectors)
    if cert is None:
        raise ValueError("system is not pointed; no generic point available")
    rng = random.Random(seed)
    xi = [float(c) for c in cert.xi]
    big = max(float(cert.pairing(a)) for a in vectors)
    t = max(0.15, min(1.0, 4.0 / big))
    span = max(sum(abs(c) for c in a) for a in vectors)
    eps = 0.05 * t / span
    fallback = None
    for _ in range(50):
        x = tuple(t * c + rng.uniform(-eps, eps) for c in xi)
        pairings = [dot_f(a, x) for a in vectors]
        if min(pairings) >= 0.1:
            if max(pairings) <= 5.0:
                return x
            fallback = fallback or x
        eps /= 2
    if fallback is not None:
        # certificate forces a wide pairing spread; lower bound still holds
        return fallback
    raise RuntimeError("could not place a generic point for this system")
