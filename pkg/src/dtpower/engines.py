"""Independent counting engines and cross-engine verification.

Three ways to count nonnegative integer solutions of sum beta_i a_i = alpha:
exhaustive enumeration bounded by a pointedness certificate (the ground
truth), the removal recursion t_X(alpha) = sum_j t_{X minus a}(alpha - j*a),
and evaluation of the toric closed form.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from .expalg import eval_numeric, laplace_generating, random_generic_point
from .linalg import (PointedCertificate, Vec, dot, pointedness_certificate,
                     rank, scale, solve_columns, vsub)
from .quasipoly import closed_form, eval_closed_box
from .toric import toric_reduce

IDENTITY_RTOL = 1e-9


@dataclass
class CountReport:
    box: tuple[Vec, Vec]
    mismatches: list = field(default_factory=list)
    totals: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _require_certificate(X, certificate=None) -> PointedCertificate:
    cert = certificate or pointedness_certificate(X)
    if cert is None:
        raise ValueError("system is not pointed")
    return cert


def brute_force_count(X, alpha, certificate: PointedCertificate) -> int:
    """Exhaustive count of beta in N^n with sum beta_i a_i == alpha.

    The certificate bounds each coordinate: beta_i <= <xi,alpha>/<xi,a_i>,
    and the depth-first walk prunes on the remaining certificate budget.
    """
    xs, _ = certificate.scaled()
    alpha = tuple(alpha)
    budget = dot(xs, alpha)
    if budget < 0:
        return 0
    X = [tuple(a) for a in X]
    weights = [dot(xs, a) for a in X]
    n = len(X)

    def walk(i: int, residual: Vec, b: int) -> int:
        if i == n:
            return 1 if all(c == 0 for c in residual) else 0
        a, w = X[i], weights[i]
        total = 0
        for j in range(b // w + 1):
            total += walk(i + 1, tuple(r - j * c for r, c in zip(residual, a)),
                          b - j * w)
        return total

    return walk(0, alpha, budget)


def brute_force_box(X, lo: Vec, hi: Vec, certificate: PointedCertificate) -> dict[Vec, int]:
    """Counts for every point of the box by one exhaustive enumeration.

    Enumerates all beta whose certificate pairing fits below the box maximum
    and histograms sum beta_i a_i.  Equivalent to calling brute_force_count
    per point: pairings only grow along a branch, so nothing in the box is
    pruned away.
    """
    xs, _ = certificate.scaled()
    X = [tuple(a) for a in X]
    weights = [dot(xs, a) for a in X]
    cap = sum(max(x * l, x * h) for x, l, h in zip(xs, lo, hi))
    n = len(X)
    counts: dict[Vec, int] = {}

    def walk(i: int, point: Vec, used: int) -> None:
        if i == n:
            if all(l <= c <= h for l, c, h in zip(lo, point, hi)):
                counts[point] = counts.get(point, 0) + 1
            return
        a, w = X[i], weights[i]
        for j in range((cap - used) // w + 1):
            walk(i + 1, tuple(p + j * c for p, c in zip(point, a)), used + j * w)

    if cap >= 0:
        walk(0, (0,) * len(lo), 0)
    return counts


def independent_count(A, alpha) -> int:
    """1 iff alpha is a nonnegative integer combination of the independent set A."""
    lam = solve_columns([tuple(a) for a in A], tuple(alpha))
    if lam is None:
        return 0
    return int(all(f.denominator == 1 and f >= 0 for f in lam))


class DMContext:
    """One evaluation context for the removal recursion, with memoization
    keyed on (prefix length, alpha)."""

    def __init__(self, X, certificate=None):
        self.X = [tuple(a) for a in X]
        self.cert = _require_certificate(self.X, certificate)
        self.xs, _ = self.cert.scaled()
        self.weights = [dot(self.xs, a) for a in self.X]
        # longest prefix that is still linearly independent: recursion base
        k = 0
        while k < len(self.X) and rank(self.X[:k + 1]) == k + 1:
            k += 1
        self.base_len = k
        self.memo: dict[tuple[int, Vec], int] = {}

    def count(self, alpha, k: int | None = None) -> int:
        if k is None:
            k = len(self.X)
        alpha = tuple(alpha)
        if dot(self.xs, alpha) < 0:
            return 0
        if k <= self.base_len:
            return independent_count(self.X[:k], alpha)
        key = (k, alpha)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        a, w = self.X[k - 1], self.weights[k - 1]
        bound = dot(self.xs, alpha) // w
        total = sum(self.count(vsub(alpha, scale(a, j)), k - 1)
                    for j in range(bound + 1))
        self.memo[key] = total
        return total


def dm_count(X, alpha, context: DMContext | None = None) -> int:
    """Removal recursion on the last vector, memoized within one context."""
    ctx = context if context is not None else DMContext(X)
    return ctx.count(alpha)


def box_points(lo: Vec, hi: Vec):
    return product(*[range(l, h + 1) for l, h in zip(lo, hi)])


def cross_check(X, lo: Vec, hi: Vec, seed: int = 0) -> CountReport:
    """Run all three engines on every lattice point of the box.

    Also spot-checks the reduced generating function against the original
    product at five seeded generic points before counting.
    """
    X = [tuple(a) for a in X]
    lo, hi = tuple(lo), tuple(hi)
    cert = _require_certificate(X)
    if rank(X) != len(X[0]):
        raise ValueError("system is rank-deficient")

    rf = toric_reduce(X)
    original = laplace_generating(X)
    for k in range(5):
        x = random_generic_point(X, seed + k)
        want = eval_numeric(original, x)
        got = eval_numeric(rf.sum, x)
        if abs(got - want) > IDENTITY_RTOL * (1 + abs(want)):
            raise AssertionError(f"generating-function identity fails at {x}")

    report = CountReport(box=(lo, hi))
    points = list(box_points(lo, hi))

    t0 = time.perf_counter()
    brute = brute_force_box(X, lo, hi, cert)
    report.timings["brute"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ctx = DMContext(X, cert)
    recursion = {p: ctx.count(p) for p in points}
    report.timings["recursion"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cf = closed_form(X)
    closed = eval_closed_box(cf, lo, hi)
    report.timings["closed"] = time.perf_counter() - t0

    for p in points:
        b = brute.get(p, 0)
        r = recursion[p]
        c = closed.get(p, 0)
        if not (b == r == c):
            report.mismatches.append((p, b, r, c))
    report.totals = {eng: len(points) for eng in ("brute", "recursion", "closed")}
    return report
