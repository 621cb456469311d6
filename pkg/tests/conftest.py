"""Shared fixtures: the two worked systems and a seeded generator of random
pointed systems used by the property and acceptance tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from dtpower.linalg import pointedness_certificate, rank

EX1 = ((1,), (1,), (2,))
EX2 = ((1, 0), (0, 1), (-1, 2))

MASTER_SEED = 20260823
# Largest allowed |det| over independent s-subsets.  Relation multipliers in
# the toric reduction are bounded by determinants of encountered bases;
# uncapped random systems occasionally produce multipliers in the hundreds,
# which blows the reduction (and the closed form) past desk scale.
DET_CAP = 8

# One line per acceptance check, shown after the test run (filled in by
# tests/test_acceptance.py; printing here dodges pytest's output capture).
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance summary")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _abs_det(sub):
    s = len(sub[0])
    rows = [[Fraction(c) for c in v] for v in sub]
    d = Fraction(1)
    for col in range(s):
        piv = next((i for i in range(col, s) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
        d *= rows[col][col]
        for i in range(col + 1, s):
            if rows[i][col]:
                f = rows[i][col] / rows[col][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return abs(int(d))


def max_subset_det(X, s):
    return max((_abs_det(sub) for sub in itertools.combinations(X, s)), default=0)


def random_pointed_systems(count=50, seed=MASTER_SEED, det_cap=DET_CAP):
    """Seeded pointed full-rank systems: s in 1..3, #X <= 6, entries in [-3,3]."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = rng.randint(1, 3)
        n = rng.randint(s, 6)
        X = [tuple(rng.randint(-3, 3) for _ in range(s)) for _ in range(n)]
        if any(all(c == 0 for c in v) for v in X):
            continue
        if rank(X) != s:
            continue
        if pointedness_certificate(X) is None:
            continue
        if max_subset_det(X, s) > det_cap:
            continue
        out.append(tuple(X))
    return out


@pytest.fixture(scope="session")
def random_systems():
    return random_pointed_systems()
