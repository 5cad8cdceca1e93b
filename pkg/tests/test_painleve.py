from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from logconn.algebra import GaussQ, Matrix2, PoleConfig
from logconn.connection import BundleType
from logconn.fuchsian import CubicPoint, cubic_residuals
from logconn.gauge import apply_unipotent, is_equivalent, normal_form
from logconn.algebra import Poly
from logconn.painleve import (
    ChartError,
    F2Point,
    PQPoint,
    ResonanceError,
    apparent_c0,
    f2_coordinate,
    f2_line,
    formal_obstruction,
    from_pq,
    link_system,
    link_to_fuchsian,
    normal_form_02,
    point_to_connection,
    resonance_obstruction,
    shifted_spectral,
    to_pq,
)
from logconn.sampling import make_rng, random_connection, random_pqpoint
from logconn.spectral import SpectralData

from .strategies import seeds

ONE, ZERO = GaussQ(1), GaussQ(0)
T = PoleConfig(tuple(GaussQ(t) for t in (0, 1, -1, 2)))


def q(a, b=1):
    return GaussQ(Fraction(a, b))


def degree_one(plus, minus3):
    minus = list(minus3)
    minus.append(-ONE - sum(plus, ZERO) - sum(minus, ZERO))
    return SpectralData(tuple(plus), tuple(minus))


SPECTRAL = degree_one((q(1, 3), q(1, 5), q(2, 7), q(1, 9)), (q(-1, 3), q(-1, 5), q(-2, 7)))


def _sym(z):
    return sp.Rational(int(z.re.numerator), int(z.re.denominator)) + sp.I * sp.Rational(
        int(z.im.numerator), int(z.im.denominator))


def _gq(z):
    re, im = sp.Rational(sp.re(z)), sp.Rational(sp.im(z))
    return GaussQ(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def symbolic_c0(qv, pv, spectral, t):
    """Solve for c0 by expanding the connection matrix at q with sympy."""
    x, c0 = sp.symbols("x c0")
    ts = [_sym(v) for v in t]
    omega = sp.Matrix([[0, 0], [c0, 0]])
    for i, ti in enumerate(ts):
        tau = sp.prod([ti - s for s in ts if s != ti])
        plus, minus = _sym(spectral.plus[i]), _sym(spectral.minus[i])
        res = sp.Matrix([[0, 1 / tau], [-tau * plus * minus, plus + minus]])
        omega += res / (x - ti)
    qs, ps = _sym(qv), _sym(pv)
    omega += sp.Matrix([[0, 0], [ps, -1]]) / (x - qs)
    # constant term of the expansion at q
    h0 = ((omega - sp.Matrix([[0, 0], [ps, -1]]) / (x - qs))).subs(x, qs)
    v = h0 * sp.Matrix([1, ps])
    (sol,) = sp.solve(sp.expand(v[1] - ps * v[0]), c0)
    return _gq(sp.expand(sol))


def monodromy(conn, center, radius, steps=1600):
    """Numerical monodromy of dY/dx = -Omega Y around a circle."""
    poles = [complex(r) for r in conn.all_poles]
    num = [[np.poly1d([complex(c) for c in reversed(e.coeffs)] or [0]) for e in row]
           for row in ((conn.numerator.a, conn.numerator.b), (conn.numerator.c, conn.numerator.d))]

    def omega(x):
        den = np.prod([x - r for r in poles])
        return np.array([[num[i][j](x) for j in range(2)] for i in range(2)]) / den

    c = complex(center)

    def rhs(s, Y):
        x = c + radius * np.exp(1j * s)
        return -omega(x) @ Y * (1j * radius * np.exp(1j * s))

    Y = np.eye(2, dtype=complex)
    h = 2 * np.pi / steps
    for k in range(steps):
        s = k * h
        k1 = rhs(s, Y)
        k2 = rhs(s + h / 2, Y + h / 2 * k1)
        k3 = rhs(s + h / 2, Y + h / 2 * k2)
        k4 = rhs(s + h, Y + h * k3)
        Y = Y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return Y


@given(seeds)
def test_c0_matches_symbolic_expansion(seed):
    pt = random_pqpoint(make_rng(seed))
    assert apparent_c0(pt.q, pt.p, pt.spectral, pt.t) == symbolic_c0(pt.q, pt.p, pt.spectral, pt.t)


def test_apparent_point_has_trivial_monodromy():
    pt = PQPoint.interior(q(1, 2), q(3, 4), SPECTRAL, T)
    radius = 0.2
    conn = normal_form_02(pt.q, pt.p, SPECTRAL, T)
    assert np.allclose(monodromy(conn, pt.q, radius), np.eye(2), atol=1e-8)
    bumped = normal_form_02(pt.q, pt.p, SPECTRAL, T, c0=apparent_c0(pt.q, pt.p, SPECTRAL, T) + 1)
    assert not np.allclose(monodromy(bumped, pt.q, radius), np.eye(2), atol=1e-3)
    # a circle around a true pole picks up eigenvalues exp(-2 pi i theta)
    eig = np.linalg.eigvals(monodromy(conn, T[0], radius))
    expected = np.exp(-2j * np.pi * np.array([1 / 3, -1 / 3]))
    assert np.allclose(sorted(eig, key=np.angle), sorted(expected, key=np.angle), atol=1e-8)


def test_normal_form_residues():
    pt = PQPoint.interior(q(1, 2), q(3, 4), SPECTRAL, T)
    conn = normal_form_02(pt.q, pt.p, SPECTRAL, T)
    assert conn.residue_at(pt.q) == Matrix2(ZERO, ZERO, pt.p, -ONE)
    for i, tau in enumerate(T.tau):
        plus, minus = SPECTRAL.pair(i)
        res = conn.residue(i)
        assert (res.a, res.c, res.d) == (ZERO, -tau * plus * minus, plus + minus)
        assert res.b * tau == ONE
    assert resonance_obstruction(conn, pt.q, 1) == 0


@given(seeds)
def test_interior_roundtrip(seed):
    pt = random_pqpoint(make_rng(seed))
    conn = from_pq(pt)
    assert conn.bundle == BundleType(0, 1)
    assert to_pq(conn).same_as(pt)


@given(seeds)
def test_connection_roundtrip(seed):
    conn = random_connection(make_rng(seed), (0, 1))
    assert is_equivalent(from_pq(to_pq(conn)), conn)


def test_boundary_roundtrips():
    inf = PQPoint.at_infinity(q(-3, 7), SPECTRAL, T)
    assert to_pq(point_to_connection(inf)).same_as(inf)
    for i in range(4):
        for sign in "+-":
            pt = PQPoint.exceptional(i, sign, q(2, 5), SPECTRAL, T)
            back = to_pq(point_to_connection(pt))
            assert back.same_as(pt) and back.divisor() == f"E{i}{sign}"


def test_equal_exponents_use_primed_tags():
    spec = degree_one((q(1, 4), q(1, 5), q(2, 7), q(1, 9)), (q(1, 4), q(-1, 5), q(-2, 7)))
    assert PQPoint.exceptional(0, "+", ONE, spec, T).divisor() == "E0"
    assert PQPoint.exceptional(0, "-", ONE, spec, T).divisor() == "E0'"


@pytest.mark.parametrize("i", range(4))
@pytest.mark.parametrize("sign", "+-")
def test_interior_points_converge_to_the_exceptional_curves(i, sign):
    plus, minus = SPECTRAL.pair(i)
    theta, other = (plus, minus) if sign == "+" else (minus, plus)
    w = q(5)
    ex = point_to_connection(PQPoint.exceptional(i, sign, w * (theta - other), SPECTRAL, T))
    for eps in (q(1, 10**6), q(1, 10**8)):
        near = from_pq(PQPoint.interior(T[i] + eps, T.tau[i] * theta + eps * w, SPECTRAL, T))
        gap = max(abs(complex(x - y))
                  for p1, p2 in zip(near.numerator.entries(), ex.numerator.entries())
                  for x, y in zip(list(p1.coeffs) + [ZERO] * 5, list(p2.coeffs) + [ZERO] * 5))
        assert gap < 1e4 * abs(complex(eps))


def test_generic_fiber_points_diverge():
    far = [from_pq(PQPoint.interior(eps, q(3), SPECTRAL, T)) for eps in (q(1, 100), q(1, 10000))]
    sizes = [max(abs(complex(c)) for c in conn.numerator.c.coeffs) for conn in far]
    assert sizes[1] > 50 * sizes[0]


def test_darboux_coordinate():
    pt = PQPoint.interior(q(1, 2), q(3, 4), SPECTRAL, T)
    assert pt.fiber_coordinate == q(3, 4)
    assert pt.darboux_p * T.product(q(1, 2)) == q(3, 4)
    with pytest.raises(ChartError):
        PQPoint.at_infinity(ONE, SPECTRAL, T).darboux_p


def test_resonance_examples():
    h = Matrix2(q(2), q(3), q(5), q(7))
    assert formal_obstruction(Matrix2.diag(ZERO, -ONE), [h], 1) == -h.c
    assert formal_obstruction(Matrix2.diag(ONE, ZERO), [], 1) == 0
    res = Matrix2(ZERO, ZERO, ONE, -ONE)
    assert formal_obstruction(res, [], 1) == 0
    frame = Matrix2(ONE, ZERO, ONE, ONE)
    assert formal_obstruction(res, [h], 1) == -(frame.inverse() * h * frame).c
    with pytest.raises(ResonanceError):
        formal_obstruction(Matrix2.diag(ONE, ZERO), [h], 2)


@given(st.integers(1, 3), seeds)
def test_resonance_vanishing_is_frame_independent(k, seed):
    rng = make_rng(seed)
    from logconn.sampling import random_matrix

    g = random_matrix(rng)
    lam = q(rng.randint(-5, 5), rng.randint(1, 5))
    diag = Matrix2.diag(lam, lam - k)
    res = g * diag * g.inverse()
    tail = [random_matrix(rng, invertible=False) for _ in range(k)]
    value = formal_obstruction(diag, tail, k)
    assert (formal_obstruction(res, [g * m * g.inverse() for m in tail], k) == 0) == (value == 0)
    if k == 1:
        # the lone tail term only enters through its lower-left entry
        flat = [Matrix2(tail[0].a, tail[0].b, ZERO, tail[0].d)]
        assert formal_obstruction(res, [g * m * g.inverse() for m in flat], k) == 0


def _shifted_point(rng):
    spec = shifted_spectral([q(3, 10), q(9, 20), q(7, 10), q(1, 5)])
    return random_pqpoint(rng, spec, T)


def test_link_to_fuchsian_lands_on_the_cubic():
    rng = make_rng(14)
    seen = {}
    for _ in range(20):
        pt = _shifted_point(rng)
        image = link_to_fuchsian(pt)
        assert isinstance(image, CubicPoint)
        lin, cub = cubic_residuals(image, (q(3, 10), q(9, 20), q(7, 10), q(1, 5)))
        assert lin == 0 and cub == 0
        key = (image.X1, image.X2, image.X3, image.Y)
        assert key not in seen
        seen[key] = pt
        assert link_system(pt).poles == T


def test_link_requires_shifted_data():
    with pytest.raises(ChartError):
        spec = degree_one((q(1, 3), q(1, 5), q(2, 7), q(1, 9)), (q(-1, 4), q(-1, 5), q(-2, 7)))
        link_to_fuchsian(PQPoint.interior(q(1, 2), q(3, 4), spec, T))


def test_exceptional_line_goes_to_the_f2_line():
    spec = shifted_spectral([q(3, 10), q(9, 20), q(7, 10), q(1, 5)])
    images = [link_to_fuchsian(PQPoint.exceptional(3, "-", c, spec, T)) for c in (q(1), q(2))]
    assert all(isinstance(im, F2Point) for im in images)
    assert images[0].c0 != images[1].c0
    for im in images:
        assert im.connection.bundle == BundleType(-1, 1)
        assert f2_coordinate(im.connection) == im.c0


def test_f2_coordinate_is_gauge_invariant():
    conn = f2_line(q(7, 3), SpectralData.sl2([q(1, 3), q(1, 5), q(2, 7), q(1, 9)]), T)
    moved = apply_unipotent(conn, q(2), q(3), Poly([ONE, q(-1), q(4)]))
    assert f2_coordinate(moved) == q(7, 3)
    assert normal_form(moved, log=False).same_as(normal_form(conn, log=False))
