"""Small dense linear algebra and root finding over the scalar backends."""

from __future__ import annotations

from fractions import Fraction

import mpmath
import numpy as np

from .poly import Poly, is_squarefree
from .scalar import DEFAULT_TOL, GaussQ, is_zero, recip


class SingularSystemError(ArithmeticError):
    def __init__(self, message, rank):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


class RootError(ArithmeticError):
    """Roots could not be found in the requested backend."""


def row_reduce(rows, tol=DEFAULT_TOL):
    """Reduced row echelon form; returns ``(rref_rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        best = 0.0
        for i in range(r, len(m)):
            v = m[i][col]
            if is_zero(v, tol):
                continue
            if isinstance(v, (float, complex)):
                if abs(v) > best:
                    pivot, best = i, abs(v)
            else:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = recip(m[r][col])
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][col], 0.0):
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(matrix, rhs, tol=DEFAULT_TOL):
    """Solve a square system, raising :class:`SingularSystemError` with the rank."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = row_reduce(aug, tol)
    coef_pivots = [p for p in pivots if p < n]
    if len(coef_pivots) < n:
        raise SingularSystemError("singular linear system", len(coef_pivots))
    return [red[i][n] for i in range(n)]


def nullspace(matrix, tol=DEFAULT_TOL):
    """Basis of the right kernel."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    red, pivots = row_reduce(matrix, tol)
    one = _one_like(matrix)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0 * one] * ncols
        v[free] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][free]
        basis.append(v)
    return basis


def rank(matrix, tol=DEFAULT_TOL):
    return len(row_reduce(matrix, tol)[1])


def _one_like(matrix):
    for row in matrix:
        for v in row:
            if isinstance(v, (float, complex)):
                return 1.0 + 0j
            if isinstance(v, GaussQ):
                return GaussQ(1)
    return GaussQ(1)


# --------------------------------------------------------------------------
# roots


def poly_roots(p, tol=DEFAULT_TOL, require_squarefree=False):
    """All roots of ``p`` with multiplicity.

    Floating inputs go through the companion-matrix eigenvalues.  Exact
    inputs are located numerically, rationalized, and accepted only after an
    exact check; a root outside Q(i) raises :class:`RootError`.
    """
    p = p.trim(tol)
    if p.degree <= 0:
        return []
    if require_squarefree and not is_squarefree(p, tol):
        raise RootError("polynomial has a repeated root")
    if isinstance(p.lead, (float, complex)):
        if p.degree == 1:
            return [-p.coeff(0) / p.coeff(1)]
        return [complex(z) for z in np.roots([complex(c) for c in reversed(p.coeffs)])]
    roots = []
    while p.degree >= 1:
        if p.degree == 1:
            roots.append(-p.coeff(0) * recip(p.coeff(1)))
            break
        root = _exact_root(p)
        roots.append(root)
        p, _ = p.deflate(root)
    return roots


def _exact_root(p):
    with mpmath.workdps(60):
        coeffs = [_mp(c) for c in reversed(p.coeffs)]
        approx = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
    for z in approx:
        for max_den in (10**3, 10**6, 10**12, 10**18):
            cand = GaussQ(Fraction(str(mpmath.nstr(z.real, 50))).limit_denominator(max_den),
                          Fraction(str(mpmath.nstr(z.imag, 50))).limit_denominator(max_den))
            if p(cand) == 0:
                return cand
    raise RootError("root is not a Gaussian rational")


def _mp(c):
    if isinstance(c, GaussQ):
        return mpmath.mpc(mpmath.mpf(int(c.re.numerator)) / int(c.re.denominator),
                          mpmath.mpf(int(c.im.numerator)) / int(c.im.denominator))
    return mpmath.mpc(c)


def vandermonde_rows(points, ncols):
    rows = []
    for q in points:
        row, acc = [], q - q + 1
        for _ in range(ncols):
            row.append(acc)
            acc = acc * q
        rows.append(row)
    return rows


__all__ = ["SingularSystemError", "RootError", "row_reduce", "solve", "nullspace", "rank",
           "poly_roots", "vandermonde_rows", "Poly"]
