"""Connections with ``n > 4`` poles through their ``n - 3`` apparent singular points.

A Garnier point is an unordered set of pairs ``(q_j, p_j)``.  Its normal form
lives on ``O + O(n - 2)``::

    Omega = sum_i (0 1/tau_i; -tau_i th_i^+ th_i^-  th_i^+ + th_i^-) dx / (x - t_i)
          + sum_j (0 0; p_j -1) dx / (x - q_j) + (0 0; c(x) 0) dx

with ``deg c = n - 4`` fixed by asking every ``q_j`` to be non-logarithmic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    DEFAULT_TOL,
    Matrix2,
    PoleConfig,
    Poly,
    RootError,
    SingularSystemError,
    eigenvector,
    is_close,
    is_zero,
    poly_roots,
    recip,
    solve,
)
from .algebra.linalg import vandermonde_rows
from .algebra.poly import is_squarefree
from .algebra.scalar import sort_key
from .connection import BundleType, ReducibleConnectionError, from_parts
from .gauge import elm_minus_at_apparent, elm_plus_at_apparent, normal_form
from .spectral import SpectralData


class DiagonalError(ValueError):
    """Two apparent points coincide, or one of them sits on a pole."""


class DegenerateConfigurationError(ValueError):
    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = rank


class BoundarySignal(ValueError):
    """An apparent point went to infinity: ``b`` lost degree."""


@dataclass(frozen=True)
class GarnierPoint:
    pairs: tuple
    spectral: SpectralData
    t: PoleConfig

    def __post_init__(self):
        if not isinstance(self.t, PoleConfig):
            object.__setattr__(self, "t", PoleConfig(tuple(self.t)))
        pairs = tuple(sorted(((q, p) for q, p in self.pairs),
                             key=lambda qp: (sort_key(qp[0]), sort_key(qp[1]))))
        object.__setattr__(self, "pairs", pairs)
        n = len(self.t)
        if n < 4:
            raise ValueError("at least four poles are needed")
        if len(pairs) != n - 3:
            raise ValueError(f"{n} poles need {n - 3} apparent points, got {len(pairs)}")
        if self.spectral.n != n:
            raise ValueError("spectral data length differs from the number of poles")
        qs = self.q
        if len(set(qs)) != len(qs):
            raise DiagonalError("apparent points collide")
        if set(qs) & set(self.t.t):
            raise DiagonalError("an apparent point coincides with a pole")

    @property
    def n(self):
        return len(self.t)

    @property
    def q(self):
        return tuple(q for q, _ in self.pairs)

    @property
    def p(self):
        return tuple(p for _, p in self.pairs)

    def is_generic(self, tol=DEFAULT_TOL):
        """Genericity of the eigenvalues; informational only."""
        return self.spectral.is_generic(tol)

    def same_as(self, other, tol=DEFAULT_TOL):
        if len(self.pairs) != len(other.pairs):
            return False
        return all(is_close(a, c, tol) and is_close(b, d, tol)
                   for (a, b), (c, d) in zip(self.pairs, other.pairs))


def _pole_residues(spectral, t):
    zero = t[0] - t[0]
    return [Matrix2(zero, recip(tau), -tau * plus * minus, plus + minus)
            for tau, (plus, minus) in zip(t.tau, spectral.pairs())]


def _apparent_residue(p):
    one = p - p + 1
    return Matrix2(0 * one, 0 * one, p, -one)


def apparent_conditions(pt):
    """Right-hand sides ``c(q_j) = rhs_j`` of the non-logarithmic conditions.

    With ``H`` the rest of ``Omega`` near ``q_j``, the kernel ``(1; p_j)`` of
    the residue must be mapped to itself by ``H(q_j)``; ``c`` enters that
    condition only through ``c(q_j)`` with coefficient one.
    """
    t = pt.t
    poles = list(zip(t.t, _pole_residues(pt.spectral, t)))
    poles += [(q, _apparent_residue(p)) for q, p in pt.pairs]
    rhs = []
    for q, p in pt.pairs:
        h = None
        for r, res in poles:
            if r == q:
                continue
            term = res * recip(q - r)
            h = term if h is None else h + term
        v1 = h.a + h.b * p
        v2 = h.c + h.d * p
        rhs.append(p * v1 - v2)
    return rhs


def solve_c(pt, tol=DEFAULT_TOL):
    """Coefficients of ``c(x)`` (degree ``n - 4``) by an exact Vandermonde solve."""
    m = pt.n - 3
    rows = vandermonde_rows(pt.q, m)
    try:
        coeffs = solve(rows, apparent_conditions(pt), tol)
    except SingularSystemError as err:
        raise DegenerateConfigurationError(f"apparent-point system is singular (rank {err.rank})",
                                           err.rank) from err
    return Poly(coeffs)


def garnier_normal_form(pt, tol=DEFAULT_TOL, c=None):
    """The connection on ``O + O(n - 2)`` with apparent points ``pt.pairs``.

    ``c`` overrides the solved polynomial, which is only useful for checking
    that other choices leave a logarithmic point behind.
    """
    pt.spectral.check_fuchs(1, tol)
    if c is None:
        c = solve_c(pt, tol)
    residues = _pole_residues(pt.spectral, pt.t) + [_apparent_residue(p) for p in pt.p]
    poly_part = Matrix2(Poly(), Poly(), c, Poly())
    parabolics = [(tau - tau + 1, tau * plus) for tau, plus in zip(pt.t.tau, pt.spectral.plus)]
    conn = from_parts(BundleType(0, pt.n - 2), pt.t, residues, poly_part, pt.spectral,
                      parabolics, q=pt.q, tol=tol)
    return conn.validate(tol)


def garnier_to_connection(pt, tol=DEFAULT_TOL):
    """The parabolic connection on ``O + O(1)``: undo every apparent point."""
    conn = garnier_normal_form(pt, tol)
    for q in pt.q:
        # the kernel starts as (1; p_j) but moves with the frame of earlier steps
        kernel = eigenvector(conn.residue_at(q), 0 * q, tol)
        conn = elm_minus_at_apparent(conn, q, kernel, tol, log=False)
    if conn.q or conn.bundle != BundleType(0, 1):
        raise DegenerateConfigurationError(
            f"expected O + O(1) without apparent poles, got {conn.bundle.as_list()}", None)
    return normal_form(conn, tol, log=False)


def garnier_coordinates(conn, tol=DEFAULT_TOL, return_connection=False):
    """The Garnier point of a connection on ``O + O(1)`` with ``n`` poles.

    The zeros of ``b`` are the ``q_j``; a positive elementary transformation
    at each of them directed by ``O(1)`` gives the normal form, whose residue
    at ``q_j`` is ``(0 0; p_j -1)``.
    """
    if conn.bundle != BundleType(0, 1) or conn.q:
        raise ValueError("garnier_coordinates needs a connection on O + O(1) without apparent poles")
    n = conn.n
    nf = normal_form(conn, tol, log=False)
    b = nf.b.trim(tol)
    if b.is_zero():
        raise ReducibleConnectionError("b(x) vanishes: connection is reducible")
    if b.degree < n - 3:
        raise BoundarySignal(f"{n - 3 - b.degree} apparent point(s) at infinity")
    if not is_squarefree(b, tol):
        raise DiagonalError("b(x) has a multiple zero")
    try:
        qs = poly_roots(b, tol)
    except RootError as err:
        raise ValueError(f"zeros of b(x) are not in the scalar field: {err}") from err
    for q in qs:
        if any(is_close(q, ti, tol) for ti in nf.t):
            raise DiagonalError(f"zero {q} of b(x) sits on a pole")
    up = nf
    one = nf.one
    for q in qs:
        up = elm_plus_at_apparent(up, q, (0 * one, one), tol, log=False)
        up = normal_form(up, tol, log=False)
    pairs = []
    for q in up.q:
        res = up.residue_at(q)
        if not (is_zero(res.a, tol) and is_zero(res.b, tol) and is_close(res.d, -one, tol)):
            raise ValueError(f"unexpected residue at the apparent point {q}: {res}")
        pairs.append((q, res.c))
    pt = GarnierPoint(tuple(pairs), nf.spectral, nf.t)
    return (pt, up) if return_connection else pt
