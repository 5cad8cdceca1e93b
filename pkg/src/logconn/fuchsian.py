"""Four-pole sl2 Fuchsian systems and their invariants on the cubic surface."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import (
    DEFAULT_TOL,
    Matrix2,
    PoleConfig,
    commutator,
    eigenvector,
    is_close,
    is_zero,
    nullspace,
    recip,
    same_direction,
)
from .spectral import SpectralData

# Calibrated conventions: X_i = SIGN * det(pair sum), Y = Y_SCALE * tr(A1 [A2, A4]).
# ``calibrate`` recomputes them from samples; tests check these constants agree.
SIGN = -1
Y_SCALE = 1


class InvalidSystemError(ValueError):
    """Residues are not traceless, do not sum to zero, or miss the spectrum."""


class NormalizationError(ValueError):
    """The fourth residue cannot be diagonalized to ``diag(theta4, -theta4)``."""


class InconsistentPointError(ValueError):
    """The point does not lie on the cubic surface."""


class TriangularLocusError(ValueError):
    """The point is the image of several triangular systems."""


@dataclass(frozen=True)
class FuchsianSystem:
    poles: PoleConfig
    residues: tuple
    spectral: SpectralData

    def __post_init__(self):
        if not isinstance(self.poles, PoleConfig):
            object.__setattr__(self, "poles", PoleConfig(tuple(self.poles)))
        if not isinstance(self.spectral, SpectralData):
            object.__setattr__(self, "spectral", SpectralData.sl2(self.spectral))
        object.__setattr__(self, "residues", tuple(self.residues))
        if len(self.residues) != 4 or len(self.poles) != 4 or self.spectral.n != 4:
            raise InvalidSystemError("a Fuchsian system here has exactly four poles")

    @property
    def theta(self):
        return self.spectral.theta

    def conjugate(self, m):
        """The system ``m^-1 A_i m``."""
        inv = m.inverse()
        return FuchsianSystem(self.poles, tuple(inv * a * m for a in self.residues), self.spectral)

    def validate(self, tol=DEFAULT_TOL):
        # floating entries are checked relative to their size: det(A) cancels
        size = _entry_size(self.residues)
        total = self.residues[0]
        for a in self.residues[1:]:
            total = total + a
        if not total.is_zero(tol * size):
            raise InvalidSystemError("residues do not sum to zero")
        for i, (a, th) in enumerate(zip(self.residues, self.theta)):
            if not is_zero(a.trace(), tol * size):
                raise InvalidSystemError(f"residue {i} is not traceless")
            if not is_close(a.det(), -th * th, tol * size * size):
                raise InvalidSystemError(f"residue {i} has determinant {a.det()}, expected {-th * th}")
        return self


def _entry_size(mats):
    entries = [e for m in mats for e in m.entries()]
    if not any(isinstance(e, (float, complex)) for e in entries):
        return 1
    return max(1.0, max(abs(complex(e)) for e in entries))


@dataclass(frozen=True)
class CubicPoint:
    X1: object
    X2: object
    X3: object
    Y: object

    def coords(self):
        return (self.X1, self.X2, self.X3, self.Y)

    def close_to(self, other, tol=DEFAULT_TOL):
        return all(is_close(a, b, tol) for a, b in zip(self.coords(), other.coords()))


def _thetas(theta):
    if isinstance(theta, SpectralData):
        return theta.theta
    if isinstance(theta, FuchsianSystem):
        return theta.theta
    return tuple(theta)


def raw_invariants(residues):
    """``(det(A2+A3), det(A1+A3), det(A1+A2), tr(A1 [A2, A4]))`` without calibration."""
    a1, a2, a3, a4 = residues
    return ((a2 + a3).det(), (a1 + a3).det(), (a1 + a2).det(),
            (a1 * commutator(a2, a4)).trace())


def invariants(sys, tol=DEFAULT_TOL, sign=None, y_scale=None):
    sys.validate(tol)
    sign = SIGN if sign is None else sign
    y_scale = Y_SCALE if y_scale is None else y_scale
    d1, d2, d3, tr = raw_invariants(sys.residues)
    return CubicPoint(sign * d1, sign * d2, sign * d3, y_scale * tr)


def cubic_residuals(point, theta):
    """Residuals of the linear and cubic equations defining the surface."""
    s1, s2, s3, s4 = (t * t for t in _thetas(theta))
    X1, X2, X3, Y = point.coords()
    linear = X1 + X2 + X3 - (s1 + s2 + s3 + s4)
    cubic = (Y * Y * recip(4 * (Y - Y + 1)) + X1 * X2 * X3
             + (s1 - s3) * (s2 - s4) * X1 + (s2 - s3) * (s1 - s4) * X2
             - (s1 + s2 - s3 - s4) * (s1 * s2 - s3 * s4))
    return linear, cubic


def calibrate(systems, signs=(1, -1), scales=(1, 2, 4)):
    """Return every ``(sign, y_scale)`` for which all samples land on the surface.

    Exact systems are expected; the caller picks the unique survivor.
    """
    raw = [(raw_invariants(s.residues), s.theta) for s in systems]
    survivors = []
    for sign, scale in product(signs, scales):
        ok = True
        for (d1, d2, d3, tr), theta in raw:
            pt = CubicPoint(sign * d1, sign * d2, sign * d3, scale * tr)
            lin, cub = cubic_residuals(pt, theta)
            if lin != 0 or cub != 0:
                ok = False
                break
        if ok:
            survivors.append((sign, scale))
    return survivors


# --------------------------------------------------------------------------
# normalization and reconstruction


def normalize(sys, tol=DEFAULT_TOL):
    """Conjugate so that ``A4 = diag(theta4, -theta4)``; returns ``(sys', M)`` with det M = 1."""
    th4 = sys.theta[3]
    a4 = sys.residues[3]
    if is_zero(th4, tol):
        raise NormalizationError("theta4 = 0: normalization unavailable")
    if a4.is_scalar(tol):
        raise NormalizationError("A4 is scalar")
    vp = eigenvector(a4, th4, tol)
    vm = eigenvector(a4, -th4, tol)
    if vp is None or vm is None:
        raise NormalizationError("A4 does not have eigenvalues +-theta4")
    det = vp[0] * vm[1] - vp[1] * vm[0]
    inv = recip(det)
    m = Matrix2.from_columns(vp, (vm[0] * inv, vm[1] * inv))
    return sys.conjugate(m), m


def reconstruct(point, theta, poles=None, tol=DEFAULT_TOL):
    """A normalized system (``A4`` diagonal) whose invariants are ``point``."""
    if not isinstance(theta, SpectralData):
        theta = SpectralData.sl2(theta)
    th1, th2, th3, th4 = theta.theta
    if is_zero(th4, tol):
        raise NormalizationError("theta4 = 0: reconstruction unavailable")
    lin, cub = cubic_residuals(point, theta)
    if not is_zero(lin, tol) or not is_zero(cub, tol * _scale(point)):
        raise InconsistentPointError(f"point is off the cubic surface (residuals {lin}, {cub})")
    if poles is None:
        poles = PoleConfig(tuple(th4 * 0 + k for k in range(4)))
    X1, X2, _, Y = point.coords()
    inv2 = recip(2 * th4)
    a1 = (X1 - th4 * th4 - th1 * th1) * inv2
    a2 = (X2 - th4 * th4 - th2 * th2) * inv2
    b1c1 = th1 * th1 - a1 * a1
    b2c2 = th2 * th2 - a2 * a2
    # u = b1 c2, v = b2 c1
    s = -(2 * a1 * a2 + 2 * th4 * (a1 + a2) + th1 * th1 + th2 * th2 - th3 * th3 + th4 * th4)
    w = Y * recip(2 * Y_SCALE * th4)
    u = (s + w) * recip(2)
    v = (s - w) * recip(2)
    if not is_close(u * v, b1c1 * b2c2, tol):
        raise InconsistentPointError("invariants violate (b1c1)(b2c2) = (b1c2)(b2c1)")
    # K = [[b1c1, b1c2], [b2c1, b2c2]] = b c^T has rank one
    one = th4 * 0 + 1
    if not (is_zero(b1c1, tol) and is_zero(u, tol)):
        c = (b1c1, u)
        b = (one, v * recip(c[0]) if not is_zero(c[0], tol) else b2c2 * recip(c[1]))
    elif not (is_zero(v, tol) and is_zero(b2c2, tol)):
        b = (0 * one, one)
        c = (v, b2c2)
    else:
        raise TriangularLocusError("b1 = b2 = 0 or c1 = c2 = 0: all such systems are triangular")
    A1 = Matrix2(a1, b[0], c[0], -a1)
    A2 = Matrix2(a2, b[1], c[1], -a2)
    A4 = Matrix2.diag(th4, -th4)
    A3 = -(A1 + A2 + A4)
    return FuchsianSystem(poles, (A1, A2, A3, A4), theta).validate(tol)


def _scale(point):
    if all(not isinstance(x, (float, complex)) for x in point.coords()):
        return 1.0
    m = max(abs(complex(x)) for x in point.coords())
    return max(1.0, m ** 3)


def conjugator(src, dst, tol=DEFAULT_TOL):
    """An invertible ``M`` with ``dst.A_i = M^-1 src.A_i M`` for all i, or None.

    Solves the linear system ``src.A_i M = M dst.A_i`` in the four entries of M.
    """
    rows = []
    for a, b in zip(src.residues, dst.residues):
        # (a M - M b) entries, M = (m0 m1; m2 m3)
        rows.append([a.a - b.a, -b.c, a.b, 0 * a.a])
        rows.append([-b.b, a.a - b.d, 0 * a.a, a.b])
        rows.append([a.c, 0 * a.a, a.d - b.a, -b.c])
        rows.append([0 * a.a, a.c, -b.b, a.d - b.d])
    basis = nullspace(rows, tol)
    for vec in basis:
        m = Matrix2(*vec)
        if not is_zero(m.det(), tol):
            return m
    if len(basis) > 1:
        # a generic combination of the kernel is invertible when any element is
        for k in range(1, 4):
            vec = [sum(x * (k ** j) for j, x in enumerate(col)) for col in zip(*basis)]
            m = Matrix2(*vec)
            if not is_zero(m.det(), tol):
                return m
    return None


# --------------------------------------------------------------------------
# degenerate loci


@dataclass(frozen=True)
class Reducibility:
    direction: tuple | None
    totally_degenerate: bool = False

    @property
    def reducible(self):
        return self.direction is not None


def is_reducible(sys, tol=DEFAULT_TOL):
    """Common invariant line of all residues, if any."""
    nonscalar = [(a, th) for a, th in zip(sys.residues, sys.theta) if not a.is_scalar(tol)]
    if not nonscalar:
        one = sys.theta[0] * 0 + 1
        return Reducibility((one, 0 * one), True)
    a, th = nonscalar[0]
    candidates = []
    for lam in (th, -th):
        v = eigenvector(a, lam, tol)
        if v is not None and not any(same_direction(v, c, tol) for c in candidates):
            candidates.append(v)
    for v in candidates:
        if all(same_direction(v, m.apply(v), tol) for m in sys.residues):
            return Reducibility(v)
    return Reducibility(None)


@dataclass(frozen=True)
class SingularFlags:
    sign_patterns: tuple
    vanishing: tuple

    def __bool__(self):
        return bool(self.sign_patterns or self.vanishing)


def singular_locus_flags(theta, tol=DEFAULT_TOL):
    """Sign patterns with ``sum(+-theta_i) = 0`` (first sign fixed to +) and vanishing thetas."""
    ths = _thetas(theta)
    patterns = []
    for rest in product((1, -1), repeat=len(ths) - 1):
        signs = (1,) + rest
        total = sum((s * t for s, t in zip(signs, ths)), 0 * ths[0])
        if is_zero(total, tol):
            patterns.append(signs)
    vanishing = tuple(i for i, t in enumerate(ths) if is_zero(t, tol))
    return SingularFlags(tuple(patterns), vanishing)
