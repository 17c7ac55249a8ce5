import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_twist import exactlin as el


def leibniz_det(m):
    # oracle: permutation expansion
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += (-1) ** inv * prod
    return total


def fraction_inverse(m):
    # oracle: Gauss-Jordan over the rationals
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        p = next(r for r in range(k, n) if a[r][k] != 0)
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for r in range(n):
            if r != k and a[r][k] != 0:
                f = a[r][k]
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    return tuple(tuple(int(x) for x in row[n:]) for row in a)


def random_unimodular(n, rng, steps=12):
    m = [list(r) for r in el.identity(n)]
    if n == 1:
        return ((rng.choice((1, -1)),),)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-2, 2)
        for c in range(n):
            m[i][c] += k * m[j][c]
        if rng.random() < 0.3:
            m[i] = [-x for x in m[i]]
    return el.mat(m)


small_mats = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


def test_mat_mul_identity():
    m = ((1, 2, 3), (4, 5, 6), (7, 8, 10))
    assert el.mat_mul(el.identity(3), m) == m
    assert el.mat_mul(m, el.identity(3)) == m


def test_mat_mul_reflection_product():
    # r_{alpha_1*} r_{alpha_1} for A = (1,1,1)
    assert el.mat_mul(((-1, -2), (0, 1)), ((1, 0), (-2, -1))) == ((3, 2), (-2, -1))


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        el.mat_mul(((1, 2),), ((1, 2),))


def test_mat_mul_overflow_is_reported():
    big = 2**62
    with pytest.raises(OverflowError):
        el.mat_mul(((big, big), (0, 1)), ((2, 0), (0, 1)))
    with pytest.raises(OverflowError):
        el.vec_add((el.INT64_MAX,), (1,))


def test_mat_mul_large_but_representable():
    big = 2**40
    assert el.mat_mul(((big,),), ((2**20,),)) == ((2**60,),)


def test_inverse_examples():
    assert el.mat_inverse_unimodular(el.identity(4)) == el.identity(4)
    assert el.mat_inverse_unimodular(((-1, -2), (2, 3))) == ((3, 2), (-2, -1))
    r = ((-1, -2), (0, 1))
    assert el.mat_inverse_unimodular(r) == r


def test_inverse_rejects_non_unimodular():
    with pytest.raises(el.NotUnimodular):
        el.mat_inverse_unimodular(((2, 0), (0, 1)))
    with pytest.raises(el.NotUnimodular):
        el.mat_inverse_unimodular(((1, 2), (2, 4)))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_inverse_matches_rational_oracle(n):
    rng = random.Random(n)
    for _ in range(20):
        m = random_unimodular(n, rng)
        inv = el.mat_inverse_unimodular(m)
        assert inv == fraction_inverse(m)
        assert el.mat_mul(m, inv) == el.identity(n)


@given(small_mats)
def test_determinant_matches_leibniz(rows):
    m = el.mat(rows)
    assert el.determinant(m) == leibniz_det(m)


@given(st.lists(st.lists(st.lists(st.integers(-9, 9), min_size=8, max_size=8), min_size=8, max_size=8), min_size=3, max_size=3))
@settings(max_examples=50)
def test_mat_mul_associative(triple):
    a, b, c = (el.mat(x) for x in triple)
    assert el.mat_mul(el.mat_mul(a, b), c) == el.mat_mul(a, el.mat_mul(b, c))


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_unimodular_roundtrip(n, seed):
    m = random_unimodular(n, random.Random(seed))
    assert el.mat_mul(m, el.mat_inverse_unimodular(m)) == el.identity(n)
    assert el.mat_mul(el.mat_inverse_unimodular(m), m) == el.identity(n)


def test_mat_pow():
    m = ((1, 1), (0, 1))
    assert el.mat_pow(m, 5) == ((1, 5), (0, 1))
    assert el.mat_pow(m, -3) == ((1, -3), (0, 1))
    assert el.mat_pow(m, 0) == el.identity(2)


def test_solve_single_unknown():
    assert el.solve_linear_system([el.LinearConstraint({0: 1}, 1)], 1) == (1,)


def test_solve_reports_non_unique_dimension():
    cons = [el.LinearConstraint({0: 1, 1: 1}, 3)]
    with pytest.raises(el.NonUnique) as info:
        el.solve_linear_system(cons, 2)
    assert info.value.dimension == 1


def test_solve_reports_no_solution():
    cons = [el.LinearConstraint({0: 1}, 1), el.LinearConstraint({0: 1}, 2)]
    with pytest.raises(el.NoSolution):
        el.solve_linear_system(cons, 1)
    with pytest.raises(el.NoSolution):
        el.solve_linear_system([el.LinearConstraint({0: 2}, 1)], 1)


@given(st.integers(1, 7), st.integers(0, 10**6))
@settings(max_examples=60)
def test_solve_recovers_planted_solution(n, seed):
    rng = random.Random(seed)
    x = [rng.randint(-20, 20) for _ in range(n)]
    m = random_unimodular(n, rng)
    cons = []
    for row in m:
        cons.append(el.LinearConstraint({j: c for j, c in enumerate(row) if c}, sum(c * v for c, v in zip(row, x))))
    # redundant rows must not disturb the answer
    cons.append(el.LinearConstraint({j: 2 * c for j, c in enumerate(m[0]) if c}, 2 * cons[0].rhs))
    sol = el.solve_linear_system(cons, n)
    assert list(sol) == x
    for con in cons:
        assert sum(c * sol[u] for u, c in con.coeffs.items()) == con.rhs


def test_solve_bilinear_reshapes():
    n = 2
    cons = [el.LinearConstraint({el.entry(i, j, n): 1}, 10 * i + j) for i in range(n) for j in range(n)]
    assert el.solve_bilinear_system(cons, n) == ((0, 1), (10, 11))
