"""Seeded random sampling of scalars, systems and chart points."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import EXACT, GaussQ, Matrix2, scalar

MAX_RETRIES = 200


class SamplingError(RuntimeError):
    """Constraints could not be met after bounded retries."""


def make_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _nonzero(rng, bound=20):
    while True:
        k = rng.randint(-bound, bound)
        if k:
            return k


def random_rational(rng):
    """Numerator and denominator uniform in [-20, 20] minus zero."""
    return Fraction(_nonzero(rng), _nonzero(rng))


def random_scalar(rng, backend=EXACT, complex_part=0.5):
    re = random_rational(rng)
    im = random_rational(rng) if rng.random() < complex_part else 0
    return scalar(GaussQ(re, im), backend)


def random_real(rng, backend=EXACT):
    return scalar(GaussQ(random_rational(rng)), backend)


def random_matrix(rng, backend=EXACT, invertible=True):
    for _ in range(MAX_RETRIES):
        m = Matrix2(*(random_scalar(rng, backend) for _ in range(4)))
        if not invertible or m.det() != 0:
            return m
    raise SamplingError("could not sample an invertible matrix")


def random_sl2(rng, backend=EXACT):
    """Random matrix with determinant one (lower-upper product)."""
    x, y, z = (random_scalar(rng, backend) for _ in range(3))
    one = scalar(1, backend)
    upper = Matrix2(one, x, 0 * one, one)
    lower = Matrix2(one, 0 * one, y, one)
    return upper * lower * Matrix2(one, z, 0 * one, one)


def random_distinct(rng, count, backend=EXACT, avoid=(), real=True):
    out = []
    for _ in range(MAX_RETRIES * count):
        v = random_real(rng, backend) if real else random_scalar(rng, backend)
        if v not in out and v not in avoid:
            out.append(v)
            if len(out) == count:
                return out
    raise SamplingError("could not sample distinct values")


def _with_eigenvalues(theta, p):
    """``p diag(theta, -theta) p^-1``."""
    return p * Matrix2.diag(theta, -theta) * p.inverse()


def _fourth_residue(s, th3, th4, m, one):
    """``A4`` with spectrum +-th4, + eigenline (1; m), and det(s - A4) = -th3^2.

    The - eigenline (1; n) enters linearly once the common factor (n - m) is
    cleared, so n solves a single linear equation.
    """
    adj = s.adjugate()
    r = s.det() - th4 * th4 + th3 * th3
    n0 = Matrix2(m, -2 * one, 0 * one, -m)
    n1 = Matrix2(one, 0 * one, 2 * m, -one)
    coeff = (adj * n1).trace() * th4 - r
    rhs = -r * m - (adj * n0).trace() * th4
    if coeff == 0:
        return None
    n = rhs * coeff.inverse()
    if n == m:
        return None
    scale = th4 * (n - m).inverse()
    return Matrix2(n + m, -2 * one, 2 * m * n, -(m + n)) * scale


def random_fuchsian(rng, thetas=None, poles=None, backend=EXACT):
    """A random valid system; spectra hold by construction.

    ``A1, A2`` are random conjugates of ``diag(theta_i, -theta_i)``; ``A4`` is
    chosen so that ``A3 = -(A1 + A2 + A4)`` has the right determinant.  Always
    exact: use :func:`to_backend` for floats.
    """
    from .algebra import PoleConfig
    from .fuchsian import FuchsianSystem

    rng = make_rng(rng)
    one = GaussQ(1)
    for _ in range(MAX_RETRIES):
        ths = list(thetas) if thetas is not None else [random_real(rng) for _ in range(4)]
        ths = [scalar(t, EXACT) for t in ths]
        if ths[3] == 0:
            raise SamplingError("theta4 must be nonzero for this construction")
        a1 = _with_eigenvalues(ths[0], random_matrix(rng))
        a2 = _with_eigenvalues(ths[1], random_matrix(rng))
        s = -(a1 + a2)
        a4 = _fourth_residue(s, ths[2], ths[3], random_scalar(rng), one)
        if a4 is None:
            continue
        a3 = s - a4
        pts = poles if poles is not None else random_distinct(rng, 4)
        sys = FuchsianSystem(PoleConfig(tuple(pts)), (a1, a2, a3, a4), tuple(ths))
        sys.validate()
        if backend != EXACT:
            sys = to_backend(sys, backend)
        return sys
    raise SamplingError("could not sample a Fuchsian system")


def to_backend(sys, backend):
    from .algebra import PoleConfig
    from .fuchsian import FuchsianSystem
    from .spectral import SpectralData

    conv = lambda z: scalar(z, backend)  # noqa: E731
    return FuchsianSystem(
        PoleConfig(tuple(conv(t) for t in sys.poles)),
        tuple(a.map(conv) for a in sys.residues),
        SpectralData(tuple(map(conv, sys.spectral.plus)), tuple(map(conv, sys.spectral.minus))),
    )


# --------------------------------------------------------------------------
# spectral data, chart points and connections


def random_spectral(rng, n, degree=0, backend=EXACT):
    """Random pairs ``(theta+, theta-)`` obeying the Fuchs relation for ``degree``."""
    from .spectral import SpectralData

    rng = make_rng(rng)
    plus = [random_real(rng, backend) for _ in range(n)]
    minus = [random_real(rng, backend) for _ in range(n - 1)]
    minus.append(-degree - sum(plus[1:], plus[0]) - sum(minus[1:], minus[0]))
    return SpectralData(tuple(plus), tuple(minus))


def random_poles(rng, n, backend=EXACT):
    from .algebra import PoleConfig

    return PoleConfig(tuple(random_distinct(make_rng(rng), n, backend)))


def random_pqpoint(rng, spectral=None, t=None, backend=EXACT):
    """Random interior chart point (degree-one spectral data unless given)."""
    from .painleve import PQPoint

    rng = make_rng(rng)
    spectral = spectral if spectral is not None else random_spectral(rng, 4, 1, backend)
    t = t if t is not None else random_poles(rng, 4, backend)
    q = random_distinct(rng, 1, backend, avoid=t.t if hasattr(t, "t") else t)[0]
    return PQPoint.interior(q, random_scalar(rng, backend), spectral, t)


def random_garnier(rng, n, spectral=None, t=None, backend=EXACT):
    from .garnier import GarnierPoint

    rng = make_rng(rng)
    spectral = spectral if spectral is not None else random_spectral(rng, n, 1, backend)
    t = t if t is not None else random_poles(rng, n, backend)
    qs = random_distinct(rng, n - 3, backend, avoid=t.t)
    return GarnierPoint(tuple((q, random_scalar(rng, backend)) for q in qs), spectral, t)


SHAPES = ((0, 0), (0, 1), (-1, 1), (0, 2))


def random_connection(rng, shape=(0, 1), backend=EXACT):
    """A random irreducible connection on ``O(d1) + O(d2)`` with four true poles.

    Built from a canonical construction for the shape and then moved by a
    random bundle automorphism, so it is not in normal form.
    """
    from .connection import from_fuchsian
    from .painleve import f2_line, from_pq, normal_form_02

    rng = make_rng(rng)
    shape = tuple(shape)
    if shape == (0, 0):
        conn = from_fuchsian(random_fuchsian(rng))
    elif shape == (0, 1):
        conn = from_pq(random_pqpoint(rng))
    elif shape == (-1, 1):
        thetas = [random_real(rng) for _ in range(4)]
        from .spectral import SpectralData

        conn = f2_line(random_scalar(rng), SpectralData.sl2(thetas), random_poles(rng, 4))
    elif shape == (0, 2):
        pt = random_pqpoint(rng)
        conn = normal_form_02(pt.q, pt.p, pt.spectral, pt.t)
    else:
        raise ValueError(f"no sampler for bundle shape {shape}")
    conn = random_automorphism(rng, conn)
    if backend != EXACT:
        conn = connection_to_backend(conn, backend)
    return conn


def random_automorphism(rng, conn):
    """Gauge ``conn`` by a random automorphism of its bundle."""
    from .algebra import Poly
    from .gauge import apply_constant, apply_unipotent

    rng = make_rng(rng)
    gap = conn.bundle.gap
    if gap == 0:
        return apply_constant(conn, random_matrix(rng), log=False)
    f = Poly([random_scalar(rng) for _ in range(gap + 1)])
    return apply_unipotent(conn, random_scalar(rng), random_scalar(rng), f, log=False)


def connection_to_backend(conn, backend):
    from dataclasses import replace

    from .algebra import PoleConfig
    from .spectral import SpectralData

    conv = lambda z: scalar(z, backend)  # noqa: E731
    pars = tuple(None if l is None else (conv(l[0]), conv(l[1])) for l in conn.parabolics)
    return replace(
        conn,
        t=PoleConfig(tuple(map(conv, conn.t))),
        q=tuple(map(conv, conn.q)),
        numerator=conn.numerator.map(lambda p: p.map(conv)),
        spectral=SpectralData(tuple(map(conv, conn.spectral.plus)), tuple(map(conv, conn.spectral.minus))),
        parabolics=pars,
    )
