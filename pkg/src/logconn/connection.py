"""Logarithmic connections on split rank-2 bundles over the projective line.

A connection is stored as ``Omega = A(x) dx / P(x)`` where ``P`` is the
product of ``(x - r)`` over every pole ``r``: the true poles ``t_i`` first,
then the apparent poles ``q_j``.  ``A`` is a 2x2 matrix of polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .algebra import (
    DEFAULT_TOL,
    ConfigurationError,
    Matrix2,
    PoleConfig,
    Poly,
    eigenvector,
    is_close,
    is_zero,
    normalize_direction,
    poly_roots,
    recip,
    same_direction,
)
from .spectral import SpectralData, SpectralError


class ReducibleConnectionError(ValueError):
    """The off-diagonal entry ``b(x)`` vanishes identically."""


class FreeParabolicError(ValueError):
    """The residue is scalar, so the parabolic direction is extra data."""


@dataclass(frozen=True, order=True)
class BundleType:
    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 > self.d2:
            raise ValueError(f"bundle type must have d1 <= d2, got ({self.d1}, {self.d2})")

    @property
    def degree(self):
        return self.d1 + self.d2

    @property
    def gap(self):
        return self.d2 - self.d1

    def as_list(self):
        return [self.d1, self.d2]


def _zero_like(x):
    return x - x


@dataclass(frozen=True)
class LogConnection:
    bundle: BundleType
    t: PoleConfig
    numerator: Matrix2
    spectral: SpectralData
    parabolics: tuple
    q: tuple = ()
    history: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not isinstance(self.t, PoleConfig):
            object.__setattr__(self, "t", PoleConfig(tuple(self.t)))
        object.__setattr__(self, "q", tuple(self.q))
        object.__setattr__(self, "parabolics", tuple(self.parabolics))
        if set(self.q) & set(self.t.t):
            raise ConfigurationError("apparent poles collide with true poles")
        PoleConfig(self.t.t + self.q)
        if self.spectral.n != len(self.t):
            raise SpectralError("spectral data length differs from the number of poles")
        if len(self.parabolics) != len(self.t):
            raise ValueError("one parabolic direction per true pole is required")

    # structure ---------------------------------------------------------

    @property
    def n(self):
        return len(self.t)

    @property
    def all_poles(self):
        return self.t.t + self.q

    @property
    def pole_count(self):
        return len(self.t) + len(self.q)

    @property
    def one(self):
        return self.t[0] - self.t[0] + 1

    @property
    def denominator(self):
        return Poly.from_roots(self.all_poles, self.one)

    def _tau(self, r):
        prod = self.one
        for s in self.all_poles:
            if s != r:
                prod = prod * (r - s)
        return prod

    def residue_at(self, r):
        if r not in self.all_poles:
            raise KeyError(f"{r} is not a pole")
        inv = recip(self._tau(r))
        return self.numerator.map(lambda p: p(r) * inv)

    def residue(self, i):
        return self.residue_at(self.t[i])

    def residues(self):
        return [self.residue_at(r) for r in self.all_poles]

    def poly_part(self):
        den = self.denominator
        return self.numerator.map(lambda p: p // den)

    @property
    def b(self):
        """The upper-right numerator entry, whose zeros are where ``O(d2)`` is invariant."""
        return self.numerator.b

    def with_history(self, move):
        return replace(self, history=self.history + (move,))

    def same_as(self, other, tol=DEFAULT_TOL):
        """Equality of all data, entrywise up to ``tol`` in the floating backend."""
        if self.bundle != other.bundle or len(self.q) != len(other.q):
            return False
        if not all(is_close(a, b, tol) for a, b in zip(self.t, other.t)):
            return False
        if not all(is_close(a, b, tol) for a, b in zip(self.q, other.q)):
            return False
        for p1, p2 in zip(self.numerator.entries(), other.numerator.entries()):
            if not _poly_close(p1, p2, tol):
                return False
        sp, op = self.spectral, other.spectral
        if not all(is_close(a, b, tol) for a, b in zip(sp.plus + sp.minus, op.plus + op.minus)):
            return False
        return all(_same_parabolic(u, v, tol) for u, v in zip(self.parabolics, other.parabolics))

    # validation ----------------------------------------------------------

    def validate(self, tol=DEFAULT_TOL):
        report = check_infinity(self, tol)
        if not report.ok:
            raise ValueError("; ".join(report.violations))
        for i in range(self.n):
            residue_spectrum(self, i, tol)
            l = self.parabolics[i]
            if l is not None:
                res = self.residue(i)
                lam = self.spectral.plus[i]
                image = res.apply(l)
                if not (is_zero(image[0] - lam * l[0], tol) and is_zero(image[1] - lam * l[1], tol)):
                    raise SpectralError(f"parabolic at pole {i} is not a theta+ eigenvector")
        total = self.bundle.degree + _zero_like(self.one)
        for r in self.all_poles:
            total = total + self.residue_at(r).trace()
        if not is_zero(total, tol):
            raise SpectralError(f"Fuchs relation fails: residue traces plus degree = {total}")
        return self


def _poly_close(p1, p2, tol):
    if not (_is_float(p1) or _is_float(p2)):
        return p1 == p2
    scale = max(1.0, _poly_size(p1), _poly_size(p2))
    return all(abs(complex(c)) <= tol * scale for c in (p1 - p2).coeffs)


def _is_float(p):
    return any(isinstance(c, (float, complex)) for c in p.coeffs)


def _poly_size(p):
    return max((abs(complex(c)) for c in p.coeffs), default=0.0)


def _same_parabolic(u, v, tol):
    if u is None or v is None:
        return u is None and v is None
    return same_direction(u, v, tol)


# --------------------------------------------------------------------------
# construction


def from_parts(bundle, t, residues, poly_part, spectral, parabolics=None, q=(),
               default_parabolic="plus", tol=DEFAULT_TOL):
    """Build a connection from residues (``t`` then ``q``) and a polynomial part.

    Missing parabolics are filled with the eigendirection named by
    ``default_parabolic`` ("plus" or "minus") where the residue is non-scalar.
    """
    if not isinstance(bundle, BundleType):
        bundle = BundleType(*bundle)
    t = t if isinstance(t, PoleConfig) else PoleConfig(tuple(t))
    poles = t.t + tuple(q)
    den = Poly.from_roots(poles, t[0] - t[0] + 1)
    entries = []
    for k in range(4):
        num = poly_part.entries()[k] * den
        for r, res in zip(poles, residues):
            num = num + (den // Poly.linear(r, r - r + 1)) * res.entries()[k]
        entries.append(num)
    numerator = Matrix2(*entries)
    if parabolics is None:
        parabolics = [None] * len(t)
    parabolics = list(parabolics)
    conn = LogConnection(bundle, t, numerator, spectral, [None] * len(t), tuple(q))
    for i in range(len(t)):
        if parabolics[i] is None:
            sign = "+" if default_parabolic == "plus" else "-"
            try:
                parabolics[i] = eigendirection(conn, i, sign, tol)
            except FreeParabolicError:
                one = conn.one
                parabolics[i] = (one, 0 * one)
        else:
            parabolics[i] = normalize_direction(parabolics[i], tol)
    return replace(conn, parabolics=tuple(parabolics))


def from_fuchsian(sys, parabolics=None, tol=DEFAULT_TOL):
    """The trivial-bundle connection ``sum A_i dx / (x - t_i)``."""
    zero = Matrix2.zero(Poly())
    return from_parts(BundleType(0, 0), sys.poles, sys.residues, zero, sys.spectral,
                      parabolics, tol=tol)


def to_fuchsian(conn, tol=DEFAULT_TOL):
    """The Fuchsian system of a trivial-bundle connection without apparent poles."""
    from .fuchsian import FuchsianSystem

    if conn.bundle != BundleType(0, 0) or conn.q:
        raise ValueError(f"not a Fuchsian system: bundle {conn.bundle.as_list()}, apparent poles {conn.q}")
    if not all(_poly_close(e, Poly(), tol) for e in conn.poly_part().entries()):
        raise ValueError("polynomial part does not vanish")
    return FuchsianSystem(conn.t, tuple(conn.residue(i) for i in range(conn.n)), conn.spectral)


# --------------------------------------------------------------------------
# queries


class InfinityReport(NamedTuple):
    ok: bool
    violations: list


def _leading_ok(p, N, d, tol):
    """``p + d x^(N-1)`` has degree at most ``N - 2``."""
    q = p + Poly.monomial(d, N - 1)
    return _deg(q, tol) <= N - 2


def _deg(p, tol):
    return p.trim(tol).degree


def check_infinity(conn, tol=DEFAULT_TOL):
    """Holomorphy at infinity of the connection in the Birkhoff frame of its bundle type."""
    N = conn.pole_count
    d1, d2 = conn.bundle.d1, conn.bundle.d2
    gap = d2 - d1
    A = conn.numerator
    violations = []
    if not _leading_ok(A.a, N, d1, tol):
        violations.append(f"A11 + {d1} x^{N - 1} exceeds degree {N - 2}")
    if not _leading_ok(A.d, N, d2, tol):
        violations.append(f"A22 + {d2} x^{N - 1} exceeds degree {N - 2}")
    if _deg(A.b, tol) > N - 2 - gap:
        violations.append(f"deg A12 = {_deg(A.b, tol)} exceeds {N - 2 - gap}")
    if _deg(A.c, tol) > N - 2 + gap:
        violations.append(f"deg A21 = {_deg(A.c, tol)} exceeds {N - 2 + gap}")
    return InfinityReport(not violations, violations)


def residue_spectrum(conn, i, tol=DEFAULT_TOL):
    """``(theta+, theta-)`` of the residue at ``t_i``, checked against the spectral data."""
    res = conn.residue(i)
    plus, minus = conn.spectral.pair(i)
    if not (is_close(res.trace(), plus + minus, tol) and is_close(res.det(), plus * minus, tol)):
        raise SpectralError(
            f"residue at pole {i} has trace {res.trace()} and det {res.det()}, "
            f"expected eigenvalues {plus}, {minus}")
    return plus, minus


def eigendirection(conn, i, sign="+", tol=DEFAULT_TOL):
    res = conn.residue(i)
    if res.is_scalar(tol):
        raise FreeParabolicError(f"residue at pole {i} is scalar")
    plus, minus = conn.spectral.pair(i)
    lam = plus if sign in ("+", "plus", 1) else minus
    v = eigenvector(res, lam, tol)
    if v is None:
        raise SpectralError(f"{lam} is not an eigenvalue of the residue at pole {i}")
    return v


class ApparentZeros(NamedTuple):
    zeros: list
    at_infinity: int


def apparent_zeros(conn, tol=DEFAULT_TOL):
    """Zeros of ``b(x)``; ``at_infinity`` counts the ones lost to a degree drop."""
    if conn.bundle.d1 >= conn.bundle.d2:
        raise ValueError("apparent zeros need d1 < d2")
    b = conn.b.trim(tol)
    if b.is_zero():
        raise ReducibleConnectionError("b(x) vanishes: O(d2) is invariant")
    expected = conn.pole_count - 2 - conn.bundle.gap
    zeros = poly_roots(b, tol)
    return ApparentZeros(zeros, expected - b.degree)
