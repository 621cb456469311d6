import math

import pytest

from dtpower.expalg import (DenomFactor, SingularPoint, add, eval_numeric,
                            geometric_factor, laplace_generating, make_sum,
                            make_term, monomial, mul, normalize,
                            random_generic_point)

RTOL = 1e-9


def close(a, b):
    return abs(a - b) <= RTOL * (1 + abs(b))


class TestLaplaceGenerating:
    def test_scalar_system_merges_repeats(self):
        t = laplace_generating([(1,), (1,), (2,)])
        assert t.num.coeff == 1 and t.num.shift == (0,)
        assert t.denom == (DenomFactor((1,), 2), DenomFactor((2,), 1))

    def test_single_vector(self):
        t = laplace_generating([(1, 0)])
        assert t.denom == (DenomFactor((1, 0), 1),)

    def test_planar_system(self):
        t = laplace_generating([(1, 0), (0, 1), (-1, 2)])
        assert {f.vector for f in t.denom} == {(1, 0), (0, 1), (-1, 2)}
        assert all(f.power == 1 for f in t.denom)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            laplace_generating([(1,), (0,)])


class TestAlgebra:
    def test_shift_addition(self):
        e = monomial(1, (-1,))
        assert mul(e, e) == monomial(1, (-2,))

    def test_power_merge(self):
        t = make_sum([make_term(1, (0,), [DenomFactor((1,), 1)])])
        sq = mul(t, t)
        (term,) = sq.terms
        assert term.denom == (DenomFactor((1,), 2),)

    def test_cancellation(self):
        s = add(monomial(2, (-1,)), monomial(-2, (-1,)))
        assert s.terms == ()

    def test_normalize_idempotent(self):
        s = add(monomial(1, (0, 0)), monomial(3, (1, -2)))
        assert normalize(s) == s
        assert normalize(normalize(s)) == normalize(s)

    def test_ring_distributivity_numeric(self):
        vs = [(1, 0), (0, 1), (-1, 2)]
        a = make_sum([make_term(2, (0, -1), [DenomFactor((1, 0), 1)])])
        b = make_sum([make_term(1, (1, 0), [DenomFactor((0, 1), 2)])])
        c = make_sum([make_term(-3, (0, 0), [DenomFactor((-1, 2), 1)])])
        lhs = mul(a, add(b, c))
        rhs = add(mul(a, b), mul(a, c))
        for k in range(5):
            x = random_generic_point(vs, seed=k)
            assert close(eval_numeric(lhs, x), eval_numeric(rhs, x))


class TestGeometricFactor:
    def test_m2(self):
        assert geometric_factor((1,), 2) == add(monomial(1, (0,)), monomial(1, (-1,)))

    def test_m1_is_one(self):
        assert geometric_factor((3, 1), 1) == monomial(1, (0, 0))

    def test_m3(self):
        g = geometric_factor((1,), 3)
        assert g == make_sum([make_term(1, (0,)), make_term(1, (-1,)), make_term(1, (-2,))])

    @pytest.mark.parametrize("m", range(1, 7))
    def test_splitting_identity_numeric(self, m):
        a = (1, 1)
        beta = geometric_factor(a, m)
        big = add(monomial(1, (0, 0)), monomial(-1, (-m, -m)))      # 1 - e^{-<ma,x>}
        small = add(monomial(1, (0, 0)), monomial(-1, (-1, -1)))    # 1 - e^{-<a,x>}
        for k in range(5):
            x = random_generic_point([a], seed=10 * m + k)
            assert abs(eval_numeric(big, x)
                       - eval_numeric(beta, x) * eval_numeric(small, x)) <= 1e-9


class TestEvalNumeric:
    def test_geometric_pole(self):
        t = make_term(1, (0,), [DenomFactor((1,), 1)])
        assert close(eval_numeric(t, (math.log(2),)), 2.0)

    def test_plain_exponential(self):
        assert close(eval_numeric(monomial(1, (-1,)), (0.0,)), 1.0)

    def test_scalar_generating_value(self):
        t = laplace_generating([(1,), (1,), (2,)])
        assert close(eval_numeric(t, (math.log(2),)), 16.0 / 3.0)

    def test_singular_point_refused(self):
        t = make_term(1, (0, 0), [DenomFactor((1, -1), 1)])
        with pytest.raises(SingularPoint):
            eval_numeric(t, (0.7, 0.7))


class TestGenericPoint:
    def test_scalar(self):
        x = random_generic_point([(1,)], seed=0)
        assert 0.1 <= x[0] <= 5

    def test_planar_constraints(self):
        vs = [(1, 0), (0, 1), (-1, 2)]
        for seed in range(5):
            x = random_generic_point(vs, seed=seed)
            assert x[0] >= 0.1 and x[1] >= 0.1
            assert -x[0] + 2 * x[1] >= 0.1 - 1e-12

    def test_deterministic(self):
        vs = [(2, 1), (1, 3)]
        assert random_generic_point(vs, seed=7) == random_generic_point(vs, seed=7)

    def test_unpointed_rejected(self):
        with pytest.raises(ValueError):
            random_generic_point([(1,), (-1,)], seed=0)
