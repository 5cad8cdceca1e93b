from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logconn.algebra import (
    BackendError,
    ConfigurationError,
    GaussQ,
    Matrix2,
    PoleConfig,
    Poly,
    commutator,
    eigenvector,
    partial_fractions,
    poly_eval,
    poly_roots,
    recombine,
    scalar,
)
from logconn.algebra.scalar import from_json, sort_key, to_json

from .strategies import gauss, matrices, polys, rationals


def test_mixed_backends_rejected():
    with pytest.raises(BackendError):
        GaussQ(1, 2) + 0.5j
    with pytest.raises(BackendError):
        scalar(0.5)


def test_exact_division_stays_exact():
    z = GaussQ(3, 4) / GaussQ(1, -2)
    assert isinstance(z, GaussQ)
    assert z * GaussQ(1, -2) == GaussQ(3, 4)


def test_zero_polynomial_degree_is_tagged():
    assert Poly().degree < -1
    assert Poly([0, 0]).is_zero()


def test_partial_fractions_of_one_gives_reciprocal_tau():
    poles = PoleConfig(tuple(GaussQ(t) for t in (0, 1, -1, 2)))
    residues, quotient = partial_fractions(Poly([1]), poles)
    assert residues == [1 / tau for tau in poles.tau]
    assert quotient.is_zero()


def test_partial_fractions_of_the_product_cancels():
    poles = PoleConfig(tuple(GaussQ(t) for t in (2, 5, -3, 7)))
    residues, quotient = partial_fractions(poles.product, poles)
    assert all(r == 0 for r in residues)
    assert quotient == Poly([1])


def test_partial_fractions_of_x5():
    poles = PoleConfig(tuple(GaussQ(t) for t in range(4)))
    x5 = Poly.monomial(GaussQ(1), 5)
    residues, quotient = partial_fractions(x5, poles)
    # x^5 = (x^4 - 6x^3 + 11x^2 - 6x)(x + 6) + remainder; residue r_i = t_i^5 / tau_i
    assert quotient == Poly([6, 1])
    assert residues == [GaussQ(0), GaussQ(Fraction(1, 2)), GaussQ(-16), GaussQ(Fraction(81, 2))]
    assert recombine(residues, quotient, poles) == x5


def test_duplicate_poles_rejected():
    with pytest.raises(ConfigurationError):
        PoleConfig((GaussQ(1), GaussQ(1), GaussQ(2)))


@given(st.lists(gauss, min_size=1, max_size=7), st.lists(rationals, min_size=4, max_size=4, unique=True))
def test_partial_fraction_recombination(coeffs, ts):
    poles = PoleConfig(tuple(GaussQ(t) for t in ts))
    num = Poly(coeffs)
    residues, quotient = partial_fractions(num, poles)
    assert recombine(residues, quotient, poles) == num


def test_poly_eval_examples():
    q = GaussQ(3, -1)
    assert poly_eval(Poly(), q) == 0
    assert poly_eval(Poly.linear(q, GaussQ(1)), q) == 0


@given(polys, gauss)
def test_horner_matches_monomial_sum(p, x0):
    expected = GaussQ(0)
    for k, c in enumerate(p.coeffs):
        expected = expected + c * x0 ** k
    assert poly_eval(p, x0) == expected


@given(matrices, matrices)
def test_det_multiplicative_and_trace_cyclic(a, b):
    assert (a * b).det() == a.det() * b.det()
    assert (a * b).trace() == (b * a).trace()
    assert commutator(a, b) == a * b - b * a


@given(matrices, gauss)
def test_eigenvector_is_in_kernel(m, shift):
    # conjugate of an upper triangular matrix with known eigenvalue
    lam = shift
    n = Matrix2(lam, m.b, GaussQ(0), m.d)
    g = Matrix2(GaussQ(1), GaussQ(0), m.c, GaussQ(1))
    n = g.inverse() * n * g
    v = eigenvector(n, lam)
    assert v is not None
    image = n.apply(v)
    assert image[0] == lam * v[0] and image[1] == lam * v[1]


@given(gauss)
def test_scalar_json_roundtrip(z):
    doc = to_json(z)
    assert isinstance(doc["re"], str)
    assert from_json(doc) == z


def test_float_json_roundtrip():
    z = complex(0.25, -1.5)
    assert from_json(to_json(z)) == z


@given(st.lists(rationals, min_size=1, max_size=4, unique=True))
def test_exact_roots_recovered(roots):
    p = Poly.from_roots([GaussQ(r) for r in roots], GaussQ(1))
    found = poly_roots(p)
    assert sorted(found, key=sort_key) == sorted((GaussQ(r) for r in roots), key=sort_key)
