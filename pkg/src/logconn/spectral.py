"""Prescribed residue eigenvalues at the poles."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import DEFAULT_TOL, is_zero


class SpectralError(ValueError):
    """Residue eigenvalues disagree with the declared spectral data."""


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalue pairs ``(theta_i^+, theta_i^-)`` per pole."""

    plus: tuple
    minus: tuple

    def __post_init__(self):
        object.__setattr__(self, "plus", tuple(self.plus))
        object.__setattr__(self, "minus", tuple(self.minus))
        if len(self.plus) != len(self.minus):
            raise ValueError("theta_plus and theta_minus differ in length")

    @classmethod
    def sl2(cls, thetas):
        """Trace-free data ``theta_i^+ = theta_i = -theta_i^-``."""
        thetas = tuple(thetas)
        return cls(thetas, tuple(-t for t in thetas))

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        return cls(tuple(p for p, _ in pairs), tuple(m for _, m in pairs))

    @property
    def n(self):
        return len(self.plus)

    @property
    def theta(self):
        return self.plus

    def pairs(self):
        return list(zip(self.plus, self.minus))

    def pair(self, i):
        return self.plus[i], self.minus[i]

    def trace_sum(self):
        total = 0 * self.plus[0]
        for p, m in zip(self.plus, self.minus):
            total = total + p + m
        return total

    def fuchs_defect(self, degree):
        """``sum(theta^+ + theta^-) + degree``; zero when the Fuchs relation holds."""
        return self.trace_sum() + degree

    def check_fuchs(self, degree, tol=DEFAULT_TOL):
        defect = self.fuchs_defect(degree)
        if not is_zero(defect, tol):
            raise SpectralError(f"Fuchs relation fails for degree {degree}: defect {defect}")

    def replace(self, i, plus, minus):
        ps, ms = list(self.plus), list(self.minus)
        ps[i], ms[i] = plus, minus
        return SpectralData(tuple(ps), tuple(ms))

    def append(self, plus, minus):
        return SpectralData(self.plus + (plus,), self.minus + (minus,))

    def shifted(self, lambdas):
        return SpectralData(tuple(p + lam for p, lam in zip(self.plus, lambdas)),
                            tuple(m + lam for m, lam in zip(self.minus, lambdas)))

    def is_generic(self, tol=DEFAULT_TOL):
        """No integer eigenvalue differences and no integer signed sums."""
        from itertools import product

        def integral(z):
            z = complex(z)
            return abs(z.imag) <= tol and abs(z.real - round(z.real)) <= tol

        if any(integral(p - m) for p, m in zip(self.plus, self.minus)):
            return False
        for choice in product((0, 1), repeat=self.n):
            total = sum((self.plus[i] if c else self.minus[i]) for i, c in enumerate(choice))
            if integral(total):
                return False
        return True
