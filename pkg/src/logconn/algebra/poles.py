"""Pole configurations and simple-pole partial fractions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .poly import Poly
from .scalar import recip


class ConfigurationError(ValueError):
    """Pole positions are not pairwise distinct."""


@dataclass(frozen=True)
class PoleConfig:
    """Affine pole positions ``t_1..t_n`` with the derived ``tau_i``."""

    t: tuple

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        for i, ti in enumerate(self.t):
            for tj in self.t[i + 1:]:
                if ti == tj:
                    raise ConfigurationError(f"duplicate pole {ti}")
        if any(x is None for x in self.t):
            raise ConfigurationError("poles at infinity are not supported")

    def __len__(self):
        return len(self.t)

    def __iter__(self):
        return iter(self.t)

    def __getitem__(self, i):
        return self.t[i]

    @cached_property
    def tau(self):
        # tau_i = prod_{j != i} (t_i - t_j)
        out = []
        for i, ti in enumerate(self.t):
            prod = ti - ti + 1
            for j, tj in enumerate(self.t):
                if j != i:
                    prod = prod * (ti - tj)
            if prod == 0:
                raise ConfigurationError("vanishing tau")
            out.append(prod)
        return tuple(out)

    @cached_property
    def product(self):
        """The polynomial ``prod_i (x - t_i)``."""
        one = self.t[0] - self.t[0] + 1 if self.t else 1
        return Poly.from_roots(self.t, one)


def partial_fractions(numerator, poles):
    """Split ``numerator / prod(x - t_i)`` into residues and a polynomial part.

    Returns ``(residues, polynomial_part)`` with
    ``numerator/P = sum r_i/(x - t_i) + polynomial_part``.
    """
    if not isinstance(poles, PoleConfig):
        poles = PoleConfig(tuple(poles))
    quotient, _ = divmod(numerator, poles.product)
    residues = [numerator(ti) * recip(tau) for ti, tau in zip(poles.t, poles.tau)]
    return residues, quotient


def recombine(residues, polynomial_part, poles):
    """Numerator over the common denominator ``prod(x - t_i)``."""
    if not isinstance(poles, PoleConfig):
        poles = PoleConfig(tuple(poles))
    P = poles.product
    total = polynomial_part * P
    for r, ti in zip(residues, poles.t):
        total = total + (P // Poly.linear(ti, ti - ti + 1)) * r
    return total
