"""2x2 matrices with entries in any commutative ring of scalars.

Entries are usually backend scalars, but the same class carries polynomial
and rational-function entries for gauge computations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .scalar import DEFAULT_TOL, is_close, is_zero, recip


@dataclass(frozen=True)
class Matrix2:
    a: object
    b: object
    c: object
    d: object

    @classmethod
    def identity(cls, one=1):
        return cls(one, 0 * one, 0 * one, one)

    @classmethod
    def zero(cls, zero=0):
        return cls(zero, zero, zero, zero)

    @classmethod
    def diag(cls, x, y):
        return cls(x, 0 * x, 0 * y, y)

    @classmethod
    def from_columns(cls, u, v):
        return cls(u[0], v[0], u[1], v[1])

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def column(self, j):
        return (self.a, self.c) if j == 0 else (self.b, self.d)

    def map(self, fn):
        return Matrix2(fn(self.a), fn(self.b), fn(self.c), fn(self.d))

    # ring operations --------------------------------------------------

    def __add__(self, o):
        return Matrix2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return Matrix2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self):
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o):
        if isinstance(o, Matrix2):
            return Matrix2(
                self.a * o.a + self.b * o.c,
                self.a * o.b + self.b * o.d,
                self.c * o.a + self.d * o.c,
                self.c * o.b + self.d * o.d,
            )
        return Matrix2(self.a * o, self.b * o, self.c * o, self.d * o)

    def __rmul__(self, s):
        return Matrix2(s * self.a, s * self.b, s * self.c, s * self.d)

    def apply(self, v):
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def adjugate(self):
        return Matrix2(self.d, -self.b, -self.c, self.a)

    def inverse(self):
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return self.adjugate() * recip(det)

    def transpose(self):
        return Matrix2(self.a, self.c, self.b, self.d)

    def conjugate_by(self, m):
        """Return ``m^-1 * self * m``."""
        return m.inverse() * self * m

    def is_scalar(self, tol=DEFAULT_TOL):
        return is_zero(self.b, tol) and is_zero(self.c, tol) and is_close(self.a, self.d, tol)

    def is_zero(self, tol=DEFAULT_TOL):
        return all(is_zero(e, tol) for e in self.entries())

    def close_to(self, other, tol=DEFAULT_TOL):
        return all(is_close(x, y, tol) for x, y in zip(self.entries(), other.entries()))


def commutator(x, y):
    return x * y - y * x


def char_poly_coeffs(m):
    """``(trace, det)`` so that the characteristic polynomial is l^2 - tr*l + det."""
    return m.trace(), m.det()


def normalize_direction(v, tol=DEFAULT_TOL):
    """Projective representative with first nonzero coordinate equal to 1."""
    x, y = v
    if not is_zero(x, tol):
        inv = recip(x)
        return (x * inv, y * inv)
    if not is_zero(y, tol):
        return (0 * y, y * recip(y))
    raise ValueError("zero vector has no direction")


def same_direction(u, v, tol=DEFAULT_TOL):
    return is_zero(u[0] * v[1] - u[1] * v[0], tol)


def eigenvector(m, lam, tol=DEFAULT_TOL):
    """A nonzero vector in ker(m - lam), or None when ``m - lam`` is invertible.

    Uses the rows of ``m - lam`` in turn; for a scalar ``m`` with eigenvalue
    ``lam`` every direction qualifies and ``(1, 0)`` is returned.
    """
    a, b, c, d = m.a - lam, m.b, m.c, m.d - lam
    if not is_zero(a * d - b * c, tol):
        return None
    if not (is_zero(a, tol) and is_zero(b, tol)):
        return normalize_direction((b, -a), tol)
    if not (is_zero(c, tol) and is_zero(d, tol)):
        return normalize_direction((d, -c), tol)
    return normalize_direction((1 + 0 * a, 0 * a), tol)
