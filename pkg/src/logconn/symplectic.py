"""Finite-difference check that the chart-to-cubic map preserves the 2-form.

The cubic carries the residue form ``dX1 ^ dX2 / (dF/dY) = dX1 ^ dX2 / (Y/2)``.
Its pullback to the chart equals ``-2 dp ^ dq / prod(q - t_i)``, so in the
Darboux coordinates ``(p / prod(q - t_i), q)`` the Jacobian ratio is constant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FLOAT, PoleConfig, scalar
from .fuchsian import CubicPoint
from .painleve import ChartError, PQPoint, link_to_fuchsian
from .spectral import SpectralData

DARBOUX = "darboux"
KERNEL = "kernel"


def _as_float(spectral, t):
    conv = lambda z: scalar(z, FLOAT)  # noqa: E731
    spectral = SpectralData(tuple(map(conv, spectral.plus)), tuple(map(conv, spectral.minus)))
    t = PoleConfig(tuple(map(conv, t)))
    return spectral, t


def cubic_image(q, p, spectral, t):
    """``(X1, X2, Y)`` of the interior chart point ``(q, p)``."""
    image = link_to_fuchsian(PQPoint.interior(q, p, spectral, t))
    if not isinstance(image, CubicPoint):
        raise ChartError("the point lies on the exceptional line, not on the cubic")
    return image.X1, image.X2, image.Y


def _jacobian(fn, u, v, hu, hv):
    """Central-difference Jacobian determinant of ``fn: (u, v) -> (f, g)``."""
    fu1, gu1 = fn(u + hu, v)
    fu0, gu0 = fn(u - hu, v)
    fv1, gv1 = fn(u, v + hv)
    fv0, gv0 = fn(u, v - hv)
    fu, gu = (fu1 - fu0) / (2 * hu), (gu1 - gu0) / (2 * hu)
    fv, gv = (fv1 - fv0) / (2 * hv), (gv1 - gv0) / (2 * hv)
    return fu * gv - fv * gu


def jacobian(q, p, spectral, t, step=1e-3, coordinates=DARBOUX, richardson=True):
    """``det d(X1, X2) / d(u, q)`` at ``(q, p)``, with ``u`` the chosen fiber coordinate.

    ``coordinates`` is ``"darboux"`` for ``u = p / prod(q - t_i)`` or
    ``"kernel"`` for ``u = p``.  Richardson extrapolation combines steps
    ``h`` and ``h / 2`` to cancel the ``h^2`` error term.  Steps shrink
    with the distance from ``q`` to the nearest pole and grow with ``|u|``.
    """
    spectral, t = _as_float(spectral, t)
    q, p = complex(q), complex(p)
    if coordinates == DARBOUX:
        def fn(u, x):
            X1, X2, _ = cubic_image(x, u * t.product(x), spectral, t)
            return X1, X2
        u0 = p / t.product(q)
    elif coordinates == KERNEL:
        def fn(u, x):
            X1, X2, _ = cubic_image(x, u, spectral, t)
            return X1, X2
        u0 = p
    else:
        raise ValueError(f"unknown coordinates {coordinates!r}")
    near = min(1.0, min(abs(q - ti) for ti in t))
    hv = step * near
    hu = step * near * max(1.0, abs(u0))
    coarse = _jacobian(fn, u0, q, hu, hv)
    if not richardson:
        return coarse
    fine = _jacobian(fn, u0, q, hu / 2, hv / 2)
    return (4 * fine - coarse) / 3


@dataclass(frozen=True)
class ProbeSample:
    q: complex
    p: complex
    jacobian: complex
    Y: complex

    @property
    def ratio(self):
        """Pullback of the cubic's residue form over ``du ^ dq``."""
        return self.jacobian / (self.Y / 2)


def probe(qs, ps, spectral, t, step=1e-3, coordinates=DARBOUX):
    """Samples over the grid ``qs x ps``."""
    fspec, ft = _as_float(spectral, t)
    out = []
    for q in qs:
        for p in ps:
            J = jacobian(q, p, fspec, ft, step, coordinates)
            _, _, Y = cubic_image(complex(q), complex(p), fspec, ft)
            out.append(ProbeSample(complex(q), complex(p), J, Y))
    return out


def relative_spread(samples):
    """``max |r - mean| / |mean|`` over the sample ratios."""
    ratios = [s.ratio for s in samples]
    mean = sum(ratios) / len(ratios)
    return max(abs(r - mean) for r in ratios) / abs(mean), mean
