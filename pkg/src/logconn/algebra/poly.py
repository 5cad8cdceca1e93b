"""Dense univariate polynomials over either scalar backend."""

from __future__ import annotations

import math

from .scalar import DEFAULT_TOL, is_zero, recip

NEG_INF = -math.inf  # degree of the zero polynomial


class Poly:
    """Polynomial with coefficients stored lowest degree first.

    Trailing exact zeros are stripped on construction, so the leading
    coefficient is nonzero.  Floating noise is removed explicitly with
    :meth:`trim`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls, one=1):
        return cls((0 * one, one))

    @classmethod
    def monomial(cls, c, k):
        return cls([0 * c] * k + [c])

    @classmethod
    def linear(cls, root, one=1):
        """The polynomial ``x - root``."""
        return cls((-root, one + 0 * root))

    @classmethod
    def from_roots(cls, roots, one=1):
        p = cls.const(one)
        for r in roots:
            p = p * cls.linear(r, one)
        return p

    # structure --------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self):
        return not self.coeffs

    def trim(self, tol=DEFAULT_TOL):
        """Drop leading coefficients that are zero up to ``tol`` (relative)."""
        if not self.coeffs or not isinstance(self.coeffs[-1], (float, complex)):
            return self
        scale = max(1.0, max(abs(c) for c in self.coeffs))
        cs = list(self.coeffs)
        while cs and abs(cs[-1]) <= tol * scale:
            cs.pop()
        return Poly(cs)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly()
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [0] * (dq + 1)
        lead_inv = _exact_div(1, other.lead)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * lead_inv
            quo[k] = c
            if c == 0:
                continue
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        rem = rem[: len(other.coeffs) - 1]
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, c):
        return Poly([c * a for a in self.coeffs])

    def monic(self):
        return self.scale(_exact_div(1, self.lead))

    # calculus and evaluation -----------------------------------------

    def __call__(self, x0):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def derivative(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def taylor(self, x0, order=None):
        """Coefficients of the expansion in powers of ``(x - x0)``."""
        cs = list(self.coeffs)
        n = len(cs)
        out = []
        for k in range(n if order is None else min(order, n)):
            # synthetic division by (x - x0), remainder is the next coefficient
            acc = 0
            quo = [0] * (len(cs) - 1)
            for j in range(len(cs) - 1, -1, -1):
                acc = acc * x0 + cs[j]
                if j > 0:
                    quo[j - 1] = acc
            out.append(acc)
            cs = quo
        return out

    def deflate(self, root):
        """Return ``(q, r)`` with ``self = q*(x - root) + r``."""
        cs = self.coeffs
        if not cs:
            return Poly(), 0
        quo = [0] * (len(cs) - 1)
        acc = 0
        for j in range(len(cs) - 1, -1, -1):
            acc = acc * root + cs[j]
            if j > 0:
                quo[j - 1] = acc
        return Poly(quo), acc

    def map(self, fn):
        return Poly([fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"({c})" + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
        return " + ".join(terms)


def _exact_div(a, b):
    return a * recip(b)


def poly_eval(p, x0):
    """Horner evaluation, exact in the exact backend."""
    return p(x0)


def poly_gcd(a, b, tol=DEFAULT_TOL):
    """Monic gcd (exact backend; float inputs use ``tol`` trimming)."""
    a, b = a.trim(tol), b.trim(tol)
    while not b.is_zero():
        a, b = b, (a % b).trim(tol)
    if a.is_zero():
        return a
    return a.monic()


def is_squarefree(p, tol=DEFAULT_TOL):
    if p.degree <= 1:
        return True
    return poly_gcd(p, p.derivative(), tol).degree == 0


def zero_tol_degree(p, tol=DEFAULT_TOL):
    return p.trim(tol).degree


__all__ = ["NEG_INF", "Poly", "poly_eval", "poly_gcd", "is_squarefree", "zero_tol_degree", "is_zero"]
