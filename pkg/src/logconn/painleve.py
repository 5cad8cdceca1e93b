"""The four-pole chart: (p, q) coordinates, boundary points, and the bridge to cubic surfaces.

Conventions for the degree-one moduli space on ``O + O(1)``:

* an interior point ``(q, p)`` is the apparent pole ``q`` and the kernel
  parameter ``p`` of the residue ``(0 0; p -1)`` after the positive
  elementary transformation at ``q`` directed by ``O(1)``; ``p`` is also
  the fiber coordinate of the point ``p dx / prod(x - t_i)`` of ``Omega^1(D)``;
* ``b(x)`` constant gives a point on the fiber over ``q = infinity``, with
  coordinate the ``x^2`` coefficient of ``a(x)`` in the canonical frame;
* ``q = t_i`` gives a point on an exceptional divisor ``E_i^-`` (parabolic in
  ``O(1)``) or ``E_i^+``, with coordinate the lower-left residue entry at
  ``t_i`` in the canonical frame.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    DEFAULT_TOL,
    Matrix2,
    PoleConfig,
    Poly,
    eigenvector,
    is_close,
    is_zero,
    normalize_direction,
    recip,
)
from .connection import (
    BundleType,
    LogConnection,
    ReducibleConnectionError,
    to_fuchsian,
)
from .fuchsian import invariants
from .gauge import (
    elm_minus,
    elm_minus_at_apparent,
    elm_plus_at_apparent,
    normal_form,
)
from .spectral import SpectralData, SpectralError

INTERIOR = "interior"
INFINITY = "infinity"
EXCEPTIONAL = "exceptional"


class ChartError(ValueError):
    """The point or connection is outside the domain of a chart operation."""


@dataclass(frozen=True)
class PQPoint:
    """A point of the four-pole moduli space in chart coordinates."""

    kind: str
    spectral: SpectralData
    t: PoleConfig
    q: object = None
    p: object = None
    y: object = None
    i: int | None = None
    sign: str | None = None
    coord: object = None

    def __post_init__(self):
        if not isinstance(self.t, PoleConfig):
            object.__setattr__(self, "t", PoleConfig(tuple(self.t)))
        if self.kind not in (INTERIOR, INFINITY, EXCEPTIONAL):
            raise ValueError(f"unknown point kind {self.kind!r}")
        if self.kind == INTERIOR and self.q in self.t.t:
            raise ChartError("q coincides with a pole: use an exceptional point")
        if self.kind == EXCEPTIONAL and self.sign not in ("+", "-"):
            raise ValueError("exceptional points carry a sign '+' or '-'")

    @classmethod
    def interior(cls, q, p, spectral, t):
        return cls(INTERIOR, spectral, t, q=q, p=p)

    @classmethod
    def at_infinity(cls, y, spectral, t):
        return cls(INFINITY, spectral, t, y=y)

    @classmethod
    def exceptional(cls, i, sign, coord, spectral, t):
        return cls(EXCEPTIONAL, spectral, t, i=i, sign=sign, coord=coord)

    @property
    def fiber_coordinate(self):
        """Coordinate ``z`` of the point ``z dx / prod(x - t_i)`` over ``q``.

        The residue kernel ``(1; p)`` is this point, so ``z = p``; the centers
        ``s_i^+-`` of the blow-ups sit at ``z = tau_i theta_i^+-`` over ``t_i``.
        """
        if self.kind != INTERIOR:
            raise ChartError("fiber coordinate is defined for interior points")
        return self.p

    @property
    def darboux_p(self):
        """``p / prod(q - t_i)``: with ``q`` it gives Darboux coordinates.

        The invariant 2-form is ``dp ^ dq / prod(q - t_i)``, the log-symplectic
        form of the total space of ``Omega^1(D)``.
        """
        if self.kind != INTERIOR:
            raise ChartError("Darboux coordinate is defined for interior points")
        return self.p * recip(self.t.product(self.q))

    def divisor(self):
        """Boundary tag: ``None`` for interior points, ``"inf"``, or ``"E{i}{sign}"``.

        When ``theta_i^+ = theta_i^-`` the two exceptional curves over ``t_i``
        come from an iterated blow-up and are tagged ``E{i}`` and ``E{i}'``.
        """
        if self.kind == INTERIOR:
            return None
        if self.kind == INFINITY:
            return "inf"
        plus, minus = self.spectral.pair(self.i)
        if plus == minus:
            return f"E{self.i}'" if self.sign == "-" else f"E{self.i}"
        return f"E{self.i}{self.sign}"

    def same_as(self, other, tol=DEFAULT_TOL):
        if self.kind != other.kind:
            return False
        if self.kind == INTERIOR:
            return is_close(self.q, other.q, tol) and is_close(self.p, other.p, tol)
        if self.kind == INFINITY:
            return is_close(self.y, other.y, tol)
        return self.i == other.i and self.sign == other.sign and is_close(self.coord, other.coord, tol)


@dataclass(frozen=True)
class FiberPoint:
    """The eigendirection ``s_i^+-`` over ``t_i``, by its residue coordinate."""

    i: int
    residue: object


def fiber_points(spectral, t):
    """``s_i^+`` and ``s_i^-`` for every pole; their residue coordinates are ``theta_i^+-``."""
    return [(FiberPoint(i, p), FiberPoint(i, m)) for i, (p, m) in enumerate(spectral.pairs())]


def fiber_direction(point, t):
    """The direction ``(1; tau_i * residue)`` of a fiber point."""
    tau = t.tau[point.i]
    return (tau - tau + 1, tau * point.residue)


def _check_degree_one(spectral, tol):
    if spectral.n != 4:
        raise ChartError("the (p, q) chart needs four poles")
    spectral.check_fuchs(1, tol)


# --------------------------------------------------------------------------
# interior points


def apparent_c0(q, p, spectral, t):
    """The constant ``c0`` making ``q`` an apparent singular point.

    Near ``q`` the constant part ``H`` of the connection matrix must map the
    kernel ``(1; p)`` of the residue into itself; the lower-left entry of
    ``H(q)`` is the only one containing ``c0`` and does so with coefficient 1.
    """
    P = t.product
    total = p * p * recip(P(q))
    for ti, tau, (plus, minus) in zip(t, t.tau, spectral.pairs()):
        total = total + (tau * plus * minus - p * (plus + minus)) * recip(q - ti)
    return total


def normal_form_02(q, p, spectral, t, c0=None):
    """The connection on ``O + O(2)`` with true poles ``t`` and apparent pole ``q``."""
    t = t if isinstance(t, PoleConfig) else PoleConfig(tuple(t))
    if c0 is None:
        c0 = apparent_c0(q, p, spectral, t)
    one = t[0] - t[0] + 1
    zero = 0 * one
    residues = [Matrix2(zero, recip(tau), -tau * plus * minus, plus + minus)
                for tau, (plus, minus) in zip(t.tau, spectral.pairs())]
    residues.append(Matrix2(zero, zero, p, -one))
    poly_part = Matrix2(Poly(), Poly(), Poly.const(c0), Poly())
    parabolics = [(one, tau * plus) for tau, plus in zip(t.tau, spectral.plus)]
    from .connection import from_parts

    return from_parts(BundleType(0, 2), t, residues, poly_part, spectral, parabolics, q=(q,))


def from_pq(pt, tol=DEFAULT_TOL):
    """The canonical connection on ``O + O(1)`` of an interior chart point."""
    if pt.kind != INTERIOR:
        raise ChartError("from_pq needs an interior point; use point_to_connection")
    _check_degree_one(pt.spectral, tol)
    one = pt.t[0] - pt.t[0] + 1
    conn = normal_form_02(pt.q, pt.p, pt.spectral, pt.t)
    conn = elm_minus_at_apparent(conn, pt.q, (one, pt.p), tol, log=False)
    if conn.q:
        raise ChartError("apparent pole survived the elementary transformation")
    if conn.bundle != BundleType(0, 1):
        raise ChartError(f"expected bundle (0, 1), got {conn.bundle.as_list()}")
    return normal_form(conn, tol, log=False)


# --------------------------------------------------------------------------
# general (0, 1) builder and boundary points


def _interpolate(values, t):
    """The polynomial of degree < n taking ``values`` at ``t``."""
    P = t.product
    out = Poly()
    for v, ti, tau in zip(values, t, t.tau):
        out = out + (P // Poly.linear(ti, tau - tau + 1)) * (v * recip(tau))
    return out


def connection_01(a, b, spectral, t, free_c=None, parabolics=None, tol=DEFAULT_TOL):
    """The connection on ``O + O(1)`` with prescribed ``a(x)``, ``b(x)``.

    ``d`` follows from the residue traces and ``c`` from the determinants; at
    a pole where ``b`` vanishes, ``c(t_i)`` is free and read from ``free_c[i]``.
    """
    t = t if isinstance(t, PoleConfig) else PoleConfig(tuple(t))
    d_vals = [tau * (plus + minus) - a(ti) for ti, tau, (plus, minus)
              in zip(t, t.tau, spectral.pairs())]
    d = _interpolate(d_vals, t)
    c_vals = []
    for k, (ti, tau, (plus, minus)) in enumerate(zip(t, t.tau, spectral.pairs())):
        bi = b(ti)
        target = tau * tau * plus * minus
        if is_zero(bi, tol):
            if not is_close(a(ti) * d(ti), target, tol):
                raise SpectralError(f"b vanishes at pole {k} but a(t_{k})/tau_{k} is not an eigenvalue")
            if free_c is None or free_c.get(k) is None:
                raise ChartError(f"c(t_{k}) is free: supply it")
            c_vals.append(free_c[k])
        else:
            c_vals.append((a(ti) * d(ti) - target) * recip(bi))
    c = _interpolate(c_vals, t)
    conn = LogConnection(BundleType(0, 1), t, Matrix2(a, b, c, d), spectral,
                         [None] * len(t))
    pars = list(parabolics) if parabolics is not None else [None] * len(t)
    for i in range(len(t)):
        if pars[i] is None:
            res = conn.residue(i)
            v = eigenvector(res, spectral.plus[i], tol)
            pars[i] = v if v is not None else (conn.one, 0 * conn.one)
        pars[i] = normalize_direction(pars[i], tol)
    from dataclasses import replace

    return replace(conn, parabolics=tuple(pars)).validate(tol)


def point_to_connection(pt, tol=DEFAULT_TOL):
    """Connection of any chart point, boundary points included."""
    if pt.kind == INTERIOR:
        return from_pq(pt, tol)
    _check_degree_one(pt.spectral, tol)
    one = pt.t[0] - pt.t[0] + 1
    zero = 0 * one
    if pt.kind == INFINITY:
        a = Poly([zero, zero, pt.y])
        return normal_form(connection_01(a, Poly.const(one), pt.spectral, pt.t, tol=tol),
                           tol, log=False)
    i = pt.i
    ti, tau = pt.t[i], pt.t.tau[i]
    plus, minus = pt.spectral.pair(i)
    # the residue at t_i is lower triangular; O(1) carries the e2-eigenvalue
    e1_value = minus if pt.sign == "-" else plus
    a = Poly.const(tau * e1_value)
    b = Poly.linear(ti, one)
    pars = [None] * pt.spectral.n
    if pt.sign == "-":
        pars[i] = (zero, one)
    conn = connection_01(a, b, pt.spectral, pt.t, free_c={i: pt.coord * tau},
                         parabolics=pars, tol=tol)
    return normal_form(conn, tol, log=False)


def to_pq(conn, tol=DEFAULT_TOL):
    """Chart point of a connection on ``O + O(1)`` with four poles."""
    if conn.bundle != BundleType(0, 1) or conn.n != 4 or conn.q:
        raise ChartError("to_pq needs a four-pole connection on O + O(1) without apparent poles")
    nf = normal_form(conn, tol, log=False)
    b = nf.b.trim(tol)
    if b.is_zero():
        raise ReducibleConnectionError("b(x) vanishes: connection is reducible")
    if b.degree == 0:
        return PQPoint.at_infinity(nf.numerator.a.coeff(2), nf.spectral, nf.t)
    q = -b.coeff(0) * recip(b.coeff(1))
    for i, ti in enumerate(nf.t):
        if is_close(q, ti, tol):
            l = nf.parabolics[i]
            sign = "-" if l is not None and is_zero(l[0], tol) else "+"
            return PQPoint.exceptional(i, sign, nf.residue(i).c, nf.spectral, nf.t)
    one = nf.one
    up = elm_plus_at_apparent(nf, q, (0 * one, one), tol, log=False)
    up = normal_form(up, tol, log=False)
    res = up.residue_at(q)
    if not (is_zero(res.a, tol) and is_zero(res.b, tol) and is_close(res.d, -one, tol)):
        raise ChartError(f"unexpected residue at the apparent pole: {res}")
    return PQPoint.interior(q, res.c, nf.spectral, nf.t)


# --------------------------------------------------------------------------
# resonance


class ResonanceError(ValueError):
    """The residue eigenvalues do not differ by the requested integer."""


def formal_obstruction(residue, taylor, k, tol=DEFAULT_TOL):
    """Obstruction to removing the logarithmic term at a resonant pole.

    ``residue`` is the residue ``R`` and ``taylor[j]`` the coefficient of
    ``z^j`` in the holomorphic part of ``Omega`` (``z`` the local coordinate).
    Flat sections solve ``z Y' = -(R + sum_j taylor[j] z^(j+1)) Y``.  The
    formal gauge ``I + sum T_m z^m`` is solved order by order in the
    eigenbasis of ``R``; the equation at order ``k`` for the entry pairing
    the larger with the smaller eigenvalue has zero coefficient, and its
    right-hand side is returned.
    """
    if k < 1:
        raise ResonanceError("k must be a positive integer")
    tr, det = residue.trace(), residue.det()
    lam1 = (tr + k) * recip(2)
    lam2 = (tr - k) * recip(2)
    if not is_close(lam1 * lam2, det, tol):
        raise ResonanceError(f"eigenvalues of the residue do not differ by {k}")
    v1 = eigenvector(residue, lam1, tol)
    v2 = eigenvector(residue, lam2, tol)
    T0 = Matrix2.from_columns(v1, v2)
    T0inv = T0.inverse()
    one = tr - tr + 1
    zero = 0 * one
    mu = (-lam1, -lam2)
    N = [None] + [-(T0inv * taylor[j] * T0) if j < len(taylor) else Matrix2.zero(zero)
                  for j in range(k)]
    T = [Matrix2.identity(one)]
    for m in range(1, k + 1):
        rhs = N[m]
        for j in range(1, m):
            rhs = rhs + N[j] * T[m - j]
        if m == k:
            return rhs.c
        entries = []
        for a in range(2):
            for b in range(2):
                coef = m + mu[b] - mu[a]
                entries.append(rhs.rows()[a][b] * recip(coef))
        T.append(Matrix2(*entries))
    raise AssertionError("unreachable")


def local_expansion(conn, pole, order):
    """Residue and the first ``order`` Taylor coefficients of the holomorphic part at ``pole``."""
    lin = Poly.linear(pole, conn.one)
    Q = conn.denominator // lin
    # (x - pole) Omega = A / Q; its Taylor series starts with the residue
    series = [None] * 4
    Qt = Q.taylor(pole, order + 1)
    Qt += [0 * conn.one] * (order + 1 - len(Qt))
    inv0 = recip(Qt[0])
    for idx, entry in enumerate(conn.numerator.entries()):
        At = entry.taylor(pole, order + 1)
        At += [0 * conn.one] * (order + 1 - len(At))
        s = []
        for m in range(order + 1):
            acc = At[m]
            for j in range(1, m + 1):
                acc = acc - Qt[j] * s[m - j]
            s.append(acc * inv0)
        series[idx] = s
    mats = [Matrix2(series[0][m], series[1][m], series[2][m], series[3][m])
            for m in range(order + 1)]
    return mats[0], mats[1:]


def resonance_obstruction(conn, pole, k, tol=DEFAULT_TOL):
    residue, taylor = local_expansion(conn, pole, k)
    return formal_obstruction(residue, taylor, k, tol)


# --------------------------------------------------------------------------
# the line of connections on O(-1) + O(1)


def f2_line(c0, spectral, t, tol=DEFAULT_TOL):
    """The normal form ``(x^3 1; c(x) d(x)) dx / prod(x - t_i)`` on ``O(-1) + O(1)``."""
    t = t if isinstance(t, PoleConfig) else PoleConfig(tuple(t))
    one = t[0] - t[0] + 1
    zero = 0 * one
    x3 = Poly([zero, zero, zero, one])
    d_vals = [tau * (plus + minus) - ti ** 3 for ti, tau, (plus, minus)
              in zip(t, t.tau, spectral.pairs())]
    d = _interpolate(d_vals, t)
    c_vals = [ti ** 3 * dv - tau * tau * plus * minus
              for ti, tau, dv, (plus, minus) in zip(t, t.tau, d_vals, spectral.pairs())]
    c = _interpolate(c_vals, t) + t.product * c0
    conn = LogConnection(BundleType(-1, 1), t, Matrix2(x3, Poly.const(one), c, d), spectral,
                         [None] * len(t))
    pars = []
    for i in range(len(t)):
        v = eigenvector(conn.residue(i), spectral.plus[i], tol)
        pars.append(v if v is not None else (one, zero))
    from dataclasses import replace

    return replace(conn, parabolics=tuple(pars)).validate(tol)


def f2_coordinate(conn, tol=DEFAULT_TOL):
    """Recover ``c0`` from any representative on ``O(-1) + O(1)``."""
    if conn.bundle != BundleType(-1, 1) or conn.q:
        raise ChartError("f2_coordinate needs a connection on O(-1) + O(1)")
    nf = normal_form(conn, tol, log=False)
    return nf.poly_part().c.coeff(0)


# --------------------------------------------------------------------------
# bridge to Fuchsian systems


def shifted_spectral(thetas):
    """``theta_i^+- = +-theta_i`` for i < 4 and ``(-theta_4, theta_4 - 1)`` at the last pole."""
    th = tuple(thetas)
    plus = th[:3] + (-th[3],)
    minus = tuple(-x for x in th[:3]) + (th[3] - 1,)
    return SpectralData(plus, minus)


def check_shifted(spectral, tol=DEFAULT_TOL):
    """Raise unless ``spectral`` has the form produced by :func:`shifted_spectral`."""
    plus, minus = spectral.plus, spectral.minus
    ok = spectral.n == 4 and all(is_zero(plus[i] + minus[i], tol) for i in range(3))
    if not ok or not is_zero(plus[3] + minus[3] + 1, tol):
        raise ChartError("link_to_fuchsian needs theta_i^+- = +-theta_i (i < 4) and "
                         "(theta_4^+, theta_4^-) = (-theta_4, theta_4 - 1)")


@dataclass(frozen=True)
class F2Point:
    """Image of a point of ``E_4^-``: the coordinate on the line of ``O(-1) + O(1)`` connections."""

    c0: object
    connection: LogConnection


def link_to_fuchsian(pt, tol=DEFAULT_TOL):
    """Elementary transformation at ``t_4`` followed by the cubic invariants.

    Returns a :class:`~logconn.fuchsian.CubicPoint`, or an :class:`F2Point`
    when the result lives on ``O(-1) + O(1)`` (the divisor ``E_4^-``).
    """
    check_shifted(pt.spectral, tol)
    conn = point_to_connection(pt, tol)
    down = elm_minus(conn, 3, tol, log=False)
    if down.bundle == BundleType(-1, 1):
        return F2Point(f2_coordinate(down, tol), down)
    if down.bundle != BundleType(0, 0):
        raise ChartError(f"unexpected bundle {down.bundle.as_list()} after the transformation")
    return invariants(to_fuchsian(down, tol), tol)


def link_system(pt, tol=DEFAULT_TOL):
    """The Fuchsian system reached from ``pt``; fails on ``E_4^-``."""
    check_shifted(pt.spectral, tol)
    conn = point_to_connection(pt, tol)
    down = elm_minus(conn, 3, tol, log=False)
    return to_fuchsian(down, tol)
