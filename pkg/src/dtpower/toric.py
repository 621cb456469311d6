"""Toric reduction of the counting generating function.

Rewrites prod_{a in X} (1 - e^{-<a,x>})^{-1} as a finite sum of terms whose
denominator vectors form a linearly independent s-subset of the positive
integer multiples of X.  The rewrite folds one vector at a time; a dependent
vector is absorbed through a telescoping split of 1 - e^{-<m*a,x>} into the
existing factors followed by a partial-fraction pass that eliminates one of
them.

The reduction is order-dependent and non-unique; correctness is semantic
(formal-identity preservation, spot-checked numerically in debug mode).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import expalg
from .expalg import (DenomFactor, ExpRatSum, ExpRatTerm, eval_numeric,
                     geometric_factor, laplace_generating, make_sum,
                     make_term, monomial)
from .linalg import (IntegerRelation, Vec, dot, integer_relation, is_zero,
                     pointedness_certificate, rank, scale, vadd, vneg)

CHECK_RTOL = 1e-9


@dataclass(frozen=True)
class ReducedForm:
    source: tuple[Vec, ...]
    sum: ExpRatSum


def expand_dependent(relation: IntegerRelation, basis) -> list[tuple[ExpRatSum, int]]:
    """Coefficients gamma_i with y0 = sum_i gamma_i * y_i as a formal identity.

    Here y0 = 1 - e^{-<m*t, x>} for the relation m*t = sum_i m_i * basis[i]
    (all m_i nonzero) and y_i = 1 - e^{-<basis[i], x>}.  Derived by telescoping
    1 - prod u_i = sum_j (prod_{i<j} u_i)(1 - u_j) with u_i = e^{-m_i<basis[i],x>},
    then splitting each 1 - u_j through a geometric factor:

        m_j > 0:  1 - e^{-m_j<b,x>} =  (sum_{l<m_j} e^{-l<b,x>}) * y_j
        m_j < 0:  1 - e^{|m_j|<b,x>} = -(sum_{0<l<=|m_j|} e^{l<b,x>}) * y_j
    """
    coeffs = relation.coefficients
    if len(coeffs) != len(basis):
        raise ValueError("relation does not match basis length")
    if any(m == 0 for m in coeffs):
        raise ValueError("zero relation coefficient; drop it before expanding")
    dim = len(basis[0])
    prefix: Vec = (0,) * dim
    out = []
    for j, (m, b) in enumerate(zip(coeffs, basis)):
        if m > 0:
            g = geometric_factor(b, m)
        else:
            p = -m
            g = make_sum([make_term(-1, scale(b, l)) for l in range(1, p + 1)])
        gamma = expalg.mul(monomial(1, prefix), g)
        out.append((gamma, j))
        prefix = vadd(prefix, scale(b, -m))
    return out


def partial_fraction(y0_factor: DenomFactor, gammas, term: ExpRatTerm) -> list[ExpRatTerm]:
    """Decompose term / y0^power so one gamma-indexed factor is eliminated.

    gammas is a list of (ExpRatSum, vector) pairs with y0 = sum gamma_v * y_v;
    each listed vector must appear in term's denominator.  Repeatedly applies
    1/(y0^t * prod y_v^{h_v}) = sum_v gamma_v/(y0^{t+1} * y_v^{h_v-1} * ...)
    until every branch has emptied one of the y_v, then reassembles terms.
    Total denominator power grows by exactly y0_factor.power per output term.
    """
    involved = {v: g for g, v in gammas}
    powers = {}
    passive = []
    for f in term.denom:
        if f.vector in involved:
            powers[f.vector] = f.power
        else:
            passive.append(f)
    if len(powers) != len(involved):
        raise ValueError("term denominator is missing a gamma factor")

    vecs = sorted(powers)
    start = tuple(powers[v] for v in vecs)
    total0 = y0_factor.power + sum(start)
    leaves = []
    # breadth-first over power states; expansion orders reaching the same
    # state share one numerator, which keeps the tree from re-walking paths
    active = {start: expalg.one(len(y0_factor.vector))}
    while active:
        nxt: dict[tuple, ExpRatSum] = {}
        for pw, num in active.items():
            t0 = total0 - sum(pw)
            if any(p == 0 for p in pw):
                leaves.append((num, t0, pw))
                continue
            for k, v in enumerate(vecs):
                child = pw[:k] + (pw[k] - 1,) + pw[k + 1:]
                grown = expalg.mul(num, involved[v])
                nxt[child] = expalg.add(nxt[child], grown) if child in nxt else grown
        active = nxt

    out = []
    for num, t0, pw in leaves:
        residue = [DenomFactor(y0_factor.vector, t0)]
        residue += [DenomFactor(v, p) for v, p in zip(vecs, pw) if p > 0]
        residue += passive
        for mono in num.terms:
            out.append(make_term(mono.num.coeff * term.num.coeff,
                                 vadd(mono.num.shift, term.num.shift),
                                 residue))
    return out


@lru_cache(maxsize=4096)
def _absorption_data(vecs: tuple[Vec, ...], a: Vec):
    """Shared rewrite data for absorbing a into any term with denominators vecs."""
    rel = integer_relation(list(vecs), a)
    assert rel is not None
    kept = [(m, v) for m, v in zip(rel.coefficients, vecs) if m != 0]
    sub_basis = [v for _, v in kept]
    sub_rel = IntegerRelation(rel.multiplier, tuple(m for m, _ in kept))
    beta = geometric_factor(a, rel.multiplier)
    y0 = DenomFactor(scale(a, rel.multiplier), 1)
    gammas = tuple((g, sub_basis[j]) for g, j in expand_dependent(sub_rel, sub_basis))
    return y0, gammas, beta


def absorb_vector(term: ExpRatTerm, a: Vec) -> list[ExpRatTerm]:
    """Terms summing to term / (1 - e^{-<a,x>}).

    Independent vectors are appended, exact repeats merge into the power, and
    a dependent vector goes through integer_relation + expand_dependent +
    partial_fraction, keeping every output denominator set independent.
    """
    a = tuple(a)
    if is_zero(a):
        raise ValueError("cannot absorb the zero vector")
    new_factor = DenomFactor(a, 1)
    vecs = [f.vector for f in term.denom]
    if a in vecs or rank(vecs + [a]) == len(vecs) + 1:
        return [make_term(term.num.coeff, term.num.shift, term.denom + (new_factor,))]

    y0, gammas, beta = _absorption_data(tuple(vecs), a)
    pieces = make_sum(partial_fraction(y0, list(gammas), term))
    return list(expalg.mul(pieces, beta).terms)


def toric_reduce(X, check: bool = False, seed: int = 0) -> ReducedForm:
    """Fold absorb_vector over X in input order, starting from the unit term.

    Requires X full-rank and pointed.  With check=True every absorption step
    is verified numerically against the partial product at seeded generic
    points.  The result always passes the structural invariant assertions.
    """
    X = [tuple(a) for a in X]
    if not X or any(is_zero(a) for a in X):
        raise ValueError("system must be nonempty with nonzero vectors")
    s = len(X[0])
    if rank(X) != s:
        raise ValueError(f"system is rank-deficient: rank {rank(X)} < dimension {s}")
    if pointedness_certificate(X) is None:
        raise ValueError("system is not pointed")

    points = [expalg.random_generic_point(X, seed + k) for k in range(5)] if check else []
    acc = make_sum([make_term(1, (0,) * s)])
    for step, a in enumerate(X):
        acc = make_sum([t for old in acc.terms for t in absorb_vector(old, a)])
        if check:
            target = laplace_generating(X[:step + 1])
            for x in points:
                want = eval_numeric(target, x)
                got = eval_numeric(acc, x)
                assert abs(got - want) <= CHECK_RTOL * (1 + abs(want)), \
                    f"identity drift at step {step}: {got} vs {want}"

    rf = ReducedForm(tuple(X), acc)
    assert_reduced_invariants(rf)
    return rf


def assert_reduced_invariants(rf: ReducedForm) -> None:
    """Structural guarantees of the reduction, checked term by term."""
    X = rf.source
    s = len(X[0])
    n = len(X)
    for t in rf.sum.terms:
        vecs = [f.vector for f in t.denom]
        assert len(vecs) == s, f"term has {len(vecs)} denominators, expected {s}"
        assert rank(vecs) == s, "dependent denominator vectors"
        assert t.total_power() == n, \
            f"power conservation broken: {t.total_power()} != {n}"
        for v in vecs:
            assert _positive_multiple_of_some(v, X), \
                f"{v} is not a positive multiple of a source vector"


def _positive_multiple_of_some(v: Vec, X) -> bool:
    for a in X:
        k = next((c for c in a if c != 0))
        i = a.index(k)
        if v[i] % k == 0:
            n = v[i] // k
            if n >= 1 and v == scale(a, n):
                return True
    return False
