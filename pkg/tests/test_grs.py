import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affine_twist import exactlin as el
from affine_twist import grs
from affine_twist.grs import ONE, STAR

from conftest import ACCEPTANCE_TRIPLES


def brute_force_finite_roots(sys, bound):
    # oracle: integer vectors of Cartan norm 2 in a box, ignoring the 1* slot
    g = grs.cartan_form(sys)
    n = sys.mu
    out = set()
    for tail in itertools.product(range(-bound, bound + 1), repeat=n - 1):
        v = (0,) + tail
        if el.bilinear(v, g, v) == 2:
            out.add(v)
    return out


def test_build_system_examples():
    s = grs.build_system(1, 1, 1)
    assert (s.mu, s.chi, s.ell) == (2, Fraction(2), 1)
    s = grs.build_system(2, 3, 5)
    assert (s.mu, s.chi, s.ell) == (9, Fraction(1, 30), 30)
    assert s.vertex_order[:3] == (STAR, ONE, (1, 1))
    assert len(s.vertex_order) == 9


def test_build_system_rejects_non_affine():
    with pytest.raises(grs.NotAffineAde):
        grs.build_system(2, 3, 7)
    with pytest.raises(grs.NotAffineAde):
        grs.build_system(3, 3, 3)
    with pytest.raises(ValueError):
        grs.build_system(0, 1, 1)


def test_cartan_examples():
    assert grs.cartan_form(grs.build_system(1, 1, 1)) == ((2, 2), (2, 2))
    assert grs.cartan_form(grs.build_system(1, 1, 2)) == ((2, 2, -1), (2, 2, -1), (-1, -1, 2))


def test_delta_is_radical(system):
    g = grs.cartan_form(system)
    assert el.mat_vec(g, grs.delta(system)) == (0,) * system.mu


def test_euler_triangular_example():
    assert grs.euler_form_triangular(grs.build_system(1, 1, 1)) == ((1, 2), (0, 1))


def test_euler_symmetrizes_to_cartan(system):
    x = grs.euler_form_triangular(system)
    assert el.mat_add(x, el.transpose(x)) == grs.cartan_form(system)


def test_euler_from_axioms_unique(system):
    assert grs.euler_form_from_axioms(system) == grs.euler_form_triangular(system)


def test_euler_axioms_without_serre_are_not_unique():
    sys = grs.build_system(1, 1, 1)
    with pytest.raises(el.NonUnique):
        el.solve_bilinear_system(grs.euler_axiom_constraints(sys), sys.mu)


def test_chi_delta_is_first_two_coordinates(system):
    for k in range(system.mu):
        e = tuple(int(i == k) for i in range(system.mu))
        assert grs.chi_delta(system, e) == e[0] + e[1]


@pytest.mark.parametrize(
    "triple,size",
    [((1, 1, 1), 2), ((1, 2, 2), 12), ((2, 3, 5), 240)],
)
def test_finite_root_counts(triple, size):
    assert len(grs.finite_real_roots(grs.build_system(*triple))) == size


@pytest.mark.parametrize("triple", [(1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (2, 2, 2), (1, 2, 3)])
def test_finite_roots_match_brute_force(triple):
    sys = grs.build_system(*triple)
    # highest-root coefficients are at most 2 for these types
    assert grs.finite_real_roots(sys) == brute_force_finite_roots(sys, 2)


def test_real_root_examples():
    sys = grs.build_system(1, 1, 1)
    a1 = grs.basis_vector(sys, ONE)
    d = grs.delta(sys)
    assert grs.is_real_root(sys, grs.basis_vector(sys, STAR))
    assert not grs.is_real_root(sys, d)
    assert grs.is_real_root(sys, el.vec_add(a1, el.vec_scale(5, d)))


def test_positive_root_examples():
    sys = grs.build_system(1, 1, 1)
    a1 = grs.basis_vector(sys, ONE)
    assert grs.is_positive_root(sys, a1)
    assert grs.is_positive_root(sys, el.vec_sub(grs.delta(sys), a1))
    assert not grs.is_positive_root(sys, el.vec_neg(grs.basis_vector(sys, STAR)))
    with pytest.raises(grs.NotARoot):
        grs.is_positive_root(sys, grs.delta(sys))


@given(st.sampled_from(ACCEPTANCE_TRIPLES), st.integers(0, 10**6), st.integers(-50, 50))
def test_exactly_one_of_root_and_negative_is_positive(triple, pick, n):
    sys = grs.build_system(*triple)
    roots = sorted(grs.finite_real_roots(sys))
    v = el.vec_add(roots[pick % len(roots)], el.vec_scale(n, grs.delta(sys)))
    assert grs.is_real_root(sys, v)
    assert grs.is_positive_root(sys, v) != grs.is_positive_root(sys, el.vec_neg(v))
    g = grs.cartan_form(sys)
    assert el.bilinear(v, g, v) == 2
