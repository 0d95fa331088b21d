from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen_values import random_matrix
from mathrepro.kernel import ZZ, IntMatrix, UnivariatePolynomials, smith_form, snf_euclidean, snf_integer


def det(rows):
    """Cofactor expansion; fine for the small sizes used here."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n) if rows[0][j])


def invariant_factors(m: IntMatrix) -> list[int]:
    """Oracle: d_k = gcd of k x k minors, s_k = d_k / d_{k-1}."""
    rows = m.rows()
    out, prev = [], 1
    for k in range(1, min(m.shape) + 1):
        g = 0
        for ri in itertools.combinations(range(m.nrows), k):
            for ci in itertools.combinations(range(m.ncols), k):
                g = math.gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            out += [0] * (min(m.shape) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


def diag_of(d: IntMatrix) -> list[int]:
    return [d[i, i] for i in range(min(d.shape))]


def is_diagonal(d: IntMatrix) -> bool:
    return all(d[i, j] == 0 for i in range(d.nrows) for j in range(d.ncols) if i != j)


def test_small_example():
    m = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert diag_of(snf_integer(m)) == [2, 6, 12]
    assert repr(snf_integer(m)) == "[ 2  0  0]\n[ 0  6  0]\n[ 0  0 12]"


def test_matches_determinantal_divisors():
    rng = random.Random(5)
    for _ in range(150):
        m = random_matrix(rng, max_dim=4, bound=9)
        expected = invariant_factors(m)
        for algo in (snf_integer, snf_euclidean):
            d = algo(m)
            assert d.shape == m.shape
            assert is_diagonal(d)
            assert diag_of(d) == expected


def test_cross_certification_random():
    rng = random.Random(2024)
    for _ in range(1000):
        m = random_matrix(rng)
        a, b = snf_integer(m), snf_euclidean(m)
        assert a == b
        diag = diag_of(a)
        assert all(x >= 0 for x in diag)
        assert all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0 for i in range(len(diag) - 1))
        if m.nrows == m.ncols:
            assert abs(det(m.rows())) == math.prod(diag)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_algorithms_agree_property(rows):
    m = IntMatrix.from_rows(rows)
    assert snf_integer(m) == snf_euclidean(m)


def test_zero_and_identity():
    assert snf_integer(IntMatrix.from_rows([[0, 0], [0, 0]])) == IntMatrix.from_rows([[0, 0], [0, 0]])
    assert snf_integer(IntMatrix.identity(4)) == IntMatrix.identity(4)
    assert diag_of(snf_integer(IntMatrix.from_rows([[0, 0], [0, 5]]))) == [5, 0]


def test_big_entries_do_not_overflow():
    m = IntMatrix.from_rows([[10**30, 6], [4, 10**25]])
    assert snf_integer(m) == snf_euclidean(m)
    assert diag_of(snf_integer(m))[0] == 2


def test_non_square_shapes():
    m = IntMatrix.from_rows([[6, 10, 15]])
    assert snf_integer(m) == IntMatrix.from_rows([[1, 0, 0]])
    assert snf_integer(IntMatrix.from_rows([[4], [6]])) == IntMatrix.from_rows([[2], [0]])


def test_over_polynomials_mod_p():
    # diag(t, t^2) is already in Smith form; [[t, 0], [0, t + 1]] has factors 1 and t(t + 1)
    R = UnivariatePolynomials(5)
    t, t1 = R.element([0, 1]), R.element([1, 1])
    assert smith_form([[t, R.zero()], [R.zero(), t1]], R) == [R.one(), R.mul(t, t1)]
    sq = R.mul(t, t)
    assert smith_form([[sq, R.zero()], [R.zero(), t]], R) == [t, sq]


def test_integer_domain_interface():
    assert smith_form([[2, 4], [6, 8]], ZZ) == [2, 4]
    assert ZZ.xgcd(240, 46)[0] == 2
    g, s, u = ZZ.xgcd(240, 46)
    assert s * 240 + u * 46 == g


@pytest.mark.parametrize("p", [2, 3, 7])
def test_polynomial_domain_divisibility_chain(p):
    R = UnivariatePolynomials(p)
    rng = random.Random(p)
    for _ in range(30):
        rows = [[R.element([rng.randrange(p) for _ in range(rng.randint(0, 3))]) for _ in range(3)] for _ in range(3)]
        diag = smith_form(rows, R)
        for a, b in zip(diag, diag[1:]):
            assert R.divides(a, b)
        assert all(not d or d[-1] == 1 for d in diag)  # monic
