"""Complex scalars in two backends.

The exact backend is :class:`GaussQ`, a Gaussian rational ``re + i*im`` with
``gmpy2.mpq`` components.  The floating backend is the builtin ``complex``.
Mixing the two raises :class:`BackendError`; plain integers and rationals
promote into either backend.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

DEFAULT_TOL = 1e-9

EXACT = "exact"
FLOAT = "float"


class BackendError(TypeError):
    """Raised when exact and floating scalars meet in one operation."""


_RATIONAL_TYPES = (int, type(mpq(0)), Fraction)


def _to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class GaussQ:
    """Exact Gaussian rational number."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussQ):
            re, im = re.re, re.im
        if isinstance(re, str):
            re = _parse_rational(re)
        if isinstance(im, str):
            im = _parse_rational(im)
        if not isinstance(re, _RATIONAL_TYPES) or not isinstance(im, _RATIONAL_TYPES):
            if isinstance(re, (float, complex)) or isinstance(im, (float, complex)):
                raise BackendError("cannot build an exact scalar from a float")
            if not (isinstance(re, Rational) and isinstance(im, Rational)):
                raise TypeError(f"not a rational: {re!r}, {im!r}")
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @classmethod
    def _raw(cls, re, im):
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    # coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, _RATIONAL_TYPES):
            return GaussQ._raw(_to_mpq(other), mpq(0))
        if isinstance(other, (float, complex)):
            raise BackendError("mixed exact/float arithmetic")
        return None

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussQ._raw(self.re * o.re, mpq(0))
        return GaussQ._raw(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussQ._raw(mpq(1), mpq(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussQ._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self):
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("division by exact zero")
            return GaussQ._raw(1 / self.re, mpq(0))
        n = self.re * self.re + self.im * self.im
        return GaussQ._raw(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussQ._raw(self.re, -self.im)

    def __abs__(self):
        return abs(complex(self))

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def sort_key(self):
        return (self.re, self.im)

    # conversion -------------------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussQ({_fmt(self.re)})"
        return f"GaussQ({_fmt(self.re)}, {_fmt(self.im)})"

    def __str__(self):
        if not self.im:
            return _fmt(self.re)
        return f"{_fmt(self.re)}{'+' if self.im >= 0 else '-'}{_fmt(abs(self.im))}i"


def _fmt(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _parse_rational(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return mpq(int(num), int(den))
    return mpq(Fraction(s))


# --------------------------------------------------------------------------
# backend-generic helpers


def backend_of(x):
    if isinstance(x, GaussQ):
        return EXACT
    if isinstance(x, (float, complex)):
        return FLOAT
    if isinstance(x, _RATIONAL_TYPES):
        return None
    raise TypeError(f"not a scalar: {x!r}")


def scalar(value, backend=EXACT):
    """Coerce ``value`` into the requested backend."""
    if backend == EXACT:
        if isinstance(value, GaussQ):
            return value
        if isinstance(value, (float, complex)):
            raise BackendError("refusing to convert a float into the exact backend")
        return GaussQ(value)
    if backend == FLOAT:
        if isinstance(value, GaussQ):
            return complex(value)
        if isinstance(value, _RATIONAL_TYPES):
            return complex(float(value))
        return complex(value)
    raise ValueError(f"unknown backend {backend!r}")


def recip(x):
    """``1/x`` that never turns an integer into a float."""
    if isinstance(x, _RATIONAL_TYPES):
        return GaussQ(x).inverse()
    return 1 / x


def is_zero(x, tol=DEFAULT_TOL):
    if isinstance(x, (float, complex)):
        return abs(x) <= tol
    return x == 0


def is_close(x, y, tol=DEFAULT_TOL):
    """Equality in the exact backend; relative closeness for floats."""
    if isinstance(x, (float, complex)) or isinstance(y, (float, complex)):
        x, y = complex(x), complex(y)
        return abs(x - y) <= tol * max(1.0, abs(x), abs(y))
    return x == y


def sort_key(x):
    if isinstance(x, GaussQ):
        return (x.re, x.im)
    z = complex(x)
    return (z.real, z.imag)


def _rational_sqrt(q):
    """Exact square root of a nonnegative mpq, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


def sqrt(x):
    """Square root; exact inputs must be perfect squares in Q(i)."""
    if isinstance(x, (float, complex)):
        return cmath.sqrt(x)
    z = GaussQ(x) if not isinstance(x, GaussQ) else x
    if not z.im:
        r = _rational_sqrt(abs(z.re))
        if r is None:
            raise ValueError(f"{z} is not a square in Q(i)")
        return GaussQ._raw(r, mpq(0)) if z.re >= 0 else GaussQ._raw(mpq(0), r)
    modulus = _rational_sqrt(z.re * z.re + z.im * z.im)
    if modulus is None:
        raise ValueError(f"{z} is not a square in Q(i)")
    u = _rational_sqrt((modulus + z.re) / 2)
    if u is None or not u:
        raise ValueError(f"{z} is not a square in Q(i)")
    v = z.im / (2 * u)
    return GaussQ._raw(u, v)


def to_json(x):
    if isinstance(x, GaussQ):
        return {"re": _fmt(x.re), "im": _fmt(x.im)}
    if isinstance(x, _RATIONAL_TYPES):
        return to_json(GaussQ(x))
    z = complex(x)
    return {"re": z.real, "im": z.imag}


def from_json(obj, backend=None):
    """Parse a scalar; strings mean exact, numbers mean float."""
    if isinstance(obj, dict):
        re, im = obj.get("re", 0), obj.get("im", 0)
        if isinstance(re, str) or isinstance(im, str):
            z = GaussQ(str(re), str(im))
        elif isinstance(re, float) or isinstance(im, float):
            z = complex(re, im)
        else:
            z = GaussQ(int(re), int(im))
    elif isinstance(obj, str):
        z = GaussQ(obj)
    elif isinstance(obj, bool):
        raise TypeError("boolean is not a scalar")
    elif isinstance(obj, int):
        z = GaussQ(obj)
    elif isinstance(obj, float):
        z = complex(obj)
    else:
        raise TypeError(f"cannot parse scalar from {obj!r}")
    return scalar(z, backend) if backend is not None else z
