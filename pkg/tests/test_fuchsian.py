from fractions import Fraction

import pytest
from hypothesis import given

from logconn.algebra import GaussQ, Matrix2, PoleConfig
from logconn.fuchsian import (
    SIGN,
    Y_SCALE,
    CubicPoint,
    FuchsianSystem,
    InconsistentPointError,
    InvalidSystemError,
    NormalizationError,
    TriangularLocusError,
    calibrate,
    conjugator,
    cubic_residuals,
    invariants,
    is_reducible,
    normalize,
    raw_invariants,
    reconstruct,
    singular_locus_flags,
)
from logconn.sampling import make_rng, random_fuchsian, random_sl2

from .strategies import seeds

ONE, ZERO = GaussQ(1), GaussQ(0)
POLES = PoleConfig(tuple(GaussQ(t) for t in (0, 1, -1, 2)))


def q(a, b=1):
    return GaussQ(Fraction(a, b))


def diagonal_system(thetas):
    thetas = [GaussQ(t) for t in thetas]
    return FuchsianSystem(POLES, tuple(Matrix2.diag(t, -t) for t in thetas), tuple(thetas))


def triangular_system(thetas, bs):
    thetas = [GaussQ(t) for t in thetas]
    res = tuple(Matrix2(t, GaussQ(b), ZERO, -t) for t, b in zip(thetas, bs))
    return FuchsianSystem(POLES, res, tuple(thetas))


def test_calibration_matches_frozen_constants():
    systems = [random_fuchsian(make_rng(s)) for s in range(40)]
    assert calibrate(systems) == [(SIGN, Y_SCALE)]


def test_zero_system():
    sys = diagonal_system([0, 0, 0, 0])
    pt = invariants(sys)
    assert pt.coords() == (0, 0, 0, 0)
    assert cubic_residuals(pt, sys.theta) == (0, 0)


def test_diagonal_family_pins_the_sign():
    sys = diagonal_system([1, -1, 0, 0])
    pt = invariants(sys)
    assert pt.coords() == (1, 1, 0, 0)
    assert cubic_residuals(pt, sys.theta) == (0, 0)
    # with the opposite sign the linear relation fails
    d1, d2, d3, _ = raw_invariants(sys.residues)
    assert d1 + d2 + d3 != 2


@given(seeds)
def test_random_systems_lie_on_the_cubic(seed):
    sys = random_fuchsian(make_rng(seed))
    assert cubic_residuals(invariants(sys), sys.theta) == (0, 0)


def test_perturbation_shows_in_the_linear_residual():
    sys = random_fuchsian(make_rng(7))
    pt = invariants(sys)
    moved = CubicPoint(pt.X1 + 1, pt.X2, pt.X3, pt.Y)
    assert cubic_residuals(moved, sys.theta)[0] == 1


@given(seeds)
def test_conjugation_invariance(seed):
    rng = make_rng(seed)
    sys = random_fuchsian(rng)
    g = random_sl2(rng)
    assert g.det() == 1
    assert invariants(sys.conjugate(g)) == invariants(sys)


def test_invalid_systems_rejected():
    sys = diagonal_system([1, 2, 3, -6])
    bad = FuchsianSystem(POLES, sys.residues[:3] + (Matrix2.diag(ONE, ONE),), sys.spectral)
    with pytest.raises(InvalidSystemError):
        invariants(bad)
    wrong_theta = FuchsianSystem(POLES, sys.residues, tuple(GaussQ(t) for t in (1, 2, 3, 5)))
    with pytest.raises(InvalidSystemError):
        wrong_theta.validate()


def test_normalize_diagonal_is_identity():
    sys = random_fuchsian(make_rng(3))
    normal, _ = normalize(sys)
    again, m = normalize(normal)
    assert m.b == 0 and m.c == 0
    assert again.residues == normal.residues


def test_normalize_off_diagonal_a4():
    th4 = q(2, 3)
    a4 = Matrix2(ZERO, ONE, th4 * th4, ZERO)
    a1 = Matrix2(q(1, 2), ONE, q(-3, 4), q(-1, 2))
    a2 = Matrix2(q(1), q(2), q(3), q(-1))
    a3 = -(a1 + a2 + a4)
    # normalize only reads theta_4; the other entries are placeholders
    sys = FuchsianSystem(POLES, (a1, a2, a3, a4), (ONE, ONE, ONE, th4))
    normal, m = normalize(sys)
    assert m.det() == 1
    assert (m.a * th4 == m.c) and (m.b * -th4 == m.d)
    assert normal.residues[3] == Matrix2.diag(th4, -th4)
    assert raw_invariants(normal.residues) == raw_invariants(sys.residues)


def test_normalize_refuses_theta4_zero():
    sys = diagonal_system([1, -1, 0, 0])
    with pytest.raises(NormalizationError):
        normalize(sys)


@given(seeds)
def test_reconstruction_is_conjugate(seed):
    sys = random_fuchsian(make_rng(seed))
    pt = invariants(sys)
    rec = reconstruct(pt, sys.spectral, sys.poles)
    assert invariants(rec) == pt
    m = conjugator(sys, rec)
    assert m is not None
    assert all(m.inverse() * a * m == b for a, b in zip(sys.residues, rec.residues))


def test_reconstruction_of_the_diagonal_example_is_degenerate():
    sys = diagonal_system([1, -1, 0, 0])
    with pytest.raises((TriangularLocusError, NormalizationError)):
        reconstruct(invariants(sys), sys.spectral)


def test_reconstruction_on_the_triangular_locus():
    sys = triangular_system([1, 2, q(1, 2), q(-7, 2)], [1, -3, 2, 0])
    with pytest.raises(TriangularLocusError):
        reconstruct(invariants(sys), sys.spectral)


def test_reconstruction_rejects_points_off_the_cubic():
    sys = random_fuchsian(make_rng(11))
    pt = invariants(sys)
    with pytest.raises(InconsistentPointError):
        reconstruct(CubicPoint(pt.X1 + 1, pt.X2, pt.X3, pt.Y), sys.spectral)


def test_triangular_orbit_is_not_separated():
    tri = triangular_system([1, 2, q(1, 2), q(-7, 2)], [1, -3, 2, 0])
    diag = diagonal_system([1, 2, q(1, 2), q(-7, 2)])
    assert invariants(tri) == invariants(diag)
    assert cubic_residuals(invariants(tri), tri.theta) == (0, 0)


def test_reducibility():
    tri = triangular_system([1, 2, q(1, 2), q(-7, 2)], [1, -3, 2, 0])
    assert is_reducible(tri).direction == (ONE, ZERO)
    zero = diagonal_system([0, 0, 0, 0])
    red = is_reducible(zero)
    assert red.reducible and red.totally_degenerate
    assert not is_reducible(random_fuchsian(make_rng(5))).reducible


def test_singular_locus_flags():
    flags = singular_locus_flags([GaussQ(t) for t in (1, -1, 0, 0)])
    assert flags.vanishing == (2, 3)
    assert flags.sign_patterns
    assert not singular_locus_flags([q(1, 2), q(1, 3), q(1, 5), q(1, 7)])
    ones = singular_locus_flags([ONE] * 4)
    assert (1, -1, 1, -1) in ones.sign_patterns
