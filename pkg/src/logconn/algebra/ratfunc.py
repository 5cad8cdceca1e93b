"""Rational functions whose denominators are products of known linear factors.

Every denominator that shows up in gauge computations is a product of
``(x - t_i)`` and ``(x - q_j)`` factors, so keeping it factored avoids
polynomial gcds and makes partial fractions a matter of Taylor expansion.
"""

from __future__ import annotations

from .poly import NEG_INF, Poly
from .scalar import DEFAULT_TOL, is_zero, recip

_CANCEL_TOL = 1e-13


class NonLogarithmicError(ValueError):
    """A rational function has a pole of order greater than one."""


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        self.num = num
        self.den = dict(den) if den else {}
        self._reduce()

    @classmethod
    def inv_linear(cls, root, one=1):
        """``1/(x - root)``."""
        return cls(Poly.const(one + 0 * root), {root: 1})

    def _reduce(self):
        if self.num.is_zero():
            self.den = {}
            return
        for r in list(self.den):
            m = self.den[r]
            while m > 0:
                q, rem = self.num.deflate(r)
                if not _cancels(rem, self.num):
                    break
                self.num = q
                m -= 1
            if m:
                self.den[r] = m
            else:
                del self.den[r]

    # structure --------------------------------------------------------

    def den_poly(self):
        p = Poly.const(1)
        for r, m in self.den.items():
            for _ in range(m):
                p = p * Poly.linear(r, r - r + 1)
        return p

    def is_polynomial(self):
        return not self.den

    def to_poly(self):
        if self.den:
            raise ValueError("rational function has poles")
        return self.num

    @property
    def degree(self):
        """Order of growth at infinity (numerator degree minus denominator degree)."""
        if self.num.is_zero():
            return NEG_INF
        return self.num.degree - sum(self.den.values())

    def leading(self):
        """Leading Laurent coefficient at infinity."""
        return self.num.lead

    def is_zero(self):
        return self.num.is_zero()

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        if not other.den:
            if not self.den:
                return RatFunc(self.num + other.num)
            return RatFunc(self.num + other.num * self.den_poly(), self.den)
        if not self.den:
            return RatFunc(self.num * other.den_poly() + other.num, other.den)
        den = dict(self.den)
        for r, m in other.den.items():
            den[r] = max(den.get(r, 0), m)
        n1 = self.num * _factor_poly(den, self.den)
        n2 = other.num * _factor_poly(den, other.den)
        return RatFunc(n1 + n2, den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = dict(self.den)
        return out

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, Poly):
                return RatFunc(self.num * other, self.den)
            if other == 0:
                return RatFunc(Poly())
            out = RatFunc.__new__(RatFunc)
            out.num = self.num * other
            out.den = dict(self.den)
            return out
        den = dict(self.den)
        for r, m in other.den.items():
            den[r] = den.get(r, 0) + m
        return RatFunc(self.num * other.num, den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        d = self - other
        return d.num.is_zero()

    def __hash__(self):
        return hash(self.num)

    def derivative(self):
        out = RatFunc(self.num.derivative(), self.den)
        for r, m in self.den.items():
            den = dict(self.den)
            den[r] = m + 1
            out = out - RatFunc(self.num * m, den)
        return out

    def __call__(self, x0):
        value = self.num(x0)
        for r, m in self.den.items():
            value = value * recip((x0 - r) ** m)
        return value

    # partial fractions ------------------------------------------------

    def laurent_at(self, root, order):
        """First ``order`` Laurent coefficients at a pole ``root``.

        Returns ``[c_m, c_{m-1}, ..., c_{m-order+1}]`` where the expansion is
        ``sum_k c_k (x - root)^(-k)`` and ``m`` is the pole multiplicity.
        """
        m = self.den.get(root, 0)
        rest = Poly.const(1)
        for r, k in self.den.items():
            if r != root:
                for _ in range(k):
                    rest = rest * Poly.linear(r, r - r + 1)
        num_t = self.num.taylor(root, order)
        num_t += [0] * (order - len(num_t))
        rest_t = rest.taylor(root, order)
        rest_t += [0] * (order - len(rest_t))
        inv0 = recip(rest_t[0])
        series = []
        for k in range(order):
            acc = num_t[k]
            for j in range(1, k + 1):
                acc = acc - rest_t[j] * series[k - j]
            series.append(acc * inv0)
        return m, series

    def partial_fractions(self, tol=DEFAULT_TOL):
        """Return ``(polynomial_part, {root: residue})`` for simple poles.

        Higher-order Laurent coefficients must vanish (up to ``tol`` in the
        floating backend), otherwise :class:`NonLogarithmicError` is raised.
        """
        poly_part = self.num // self.den_poly() if self.den else self.num
        residues = {}
        for r, m in self.den.items():
            _, series = self.laurent_at(r, m)
            for k in range(m - 1):
                if not is_zero(series[k], tol):
                    raise NonLogarithmicError(f"pole of order {m - k} at {r}")
            residues[r] = series[m - 1]
        return poly_part, residues

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


def _cancels(rem, num):
    if isinstance(rem, (float, complex)):
        scale = max(1.0, max(abs(c) for c in num.coeffs))
        return abs(rem) <= _CANCEL_TOL * scale
    return rem == 0


def _factor_poly(target, have):
    p = Poly.const(1)
    for r, m in target.items():
        for _ in range(m - have.get(r, 0)):
            p = p * Poly.linear(r, r - r + 1)
    return p


def as_ratfunc(x):
    return x if isinstance(x, RatFunc) else RatFunc(x)
