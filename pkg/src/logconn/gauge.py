"""Gauge actions on connection matrices.

A gauge ``Y = M Y'`` sends ``Omega`` to ``M^-1 Omega M + M^-1 dM``.  Moves
are applied to the numerator ``A`` of ``Omega = A dx / P`` directly: constant
and polynomial-unimodular gauges keep ``A`` polynomial, and the diagonal
factor of an elementary transformation is handled by exact division.

After a move that changes the lattice, the new frame is column-reduced
against the old bundle type to recover a Birkhoff frame
``O(d1) + O(d2)`` with ``d1 <= d2``.
"""

from __future__ import annotations

from dataclasses import replace

from .algebra import (
    DEFAULT_TOL,
    Matrix2,
    Poly,
    RatFunc,
    is_zero,
    normalize_direction,
    recip,
    same_direction,
    solve,
)
from .connection import BundleType, LogConnection, check_infinity
from .spectral import SpectralError


class GaugeError(ValueError):
    """A move violates its preconditions."""


class SplittingError(ValueError):
    """The renormalized frame has a different splitting type than claimed."""

    def __init__(self, message, found):
        super().__init__(f"{message}; found splitting {found.as_list()}")
        self.found = found


class NormalFormError(ValueError):
    """Not enough data to fix a canonical frame."""


# --------------------------------------------------------------------------
# numerator-level helpers


def _exact_quotient(p, root, tol):
    q, rem = p.deflate(root)
    if not is_zero(rem, tol * max(1.0, _size(p)) if isinstance(rem, (float, complex)) else tol):
        raise GaugeError(f"expected a zero at {root}, remainder {rem}")
    return q


def _size(p):
    return max((abs(complex(c)) for c in p.coeffs), default=0.0)


def _polynomial_gauge(A, U, P):
    """Numerator after the gauge by a polynomial matrix ``U`` with constant determinant."""
    det = U.det()
    det = det.trim() if isinstance(det, Poly) else Poly.const(det)
    if det.degree != 0:
        raise GaugeError("gauge matrix is not unimodular")
    inv_det = recip(det.coeff(0))
    adj = U.adjugate()
    dU = U.map(lambda e: e.derivative())
    return (adj * A * U + (adj * dU).map(lambda e: e * P)).map(lambda e: e * inv_det)


def _transport(l, m, tol):
    """Direction ``m^-1 l`` for a constant invertible ``m``."""
    if l is None:
        return None
    return normalize_direction(m.inverse().apply(l), tol)


def _eval_matrix(m, x0):
    return m.map(lambda e: e(x0) if isinstance(e, (Poly, RatFunc)) else e)


def _complement(l, one):
    """A vector completing ``l`` to a basis: ``(0, 1)`` unless ``l`` is vertical."""
    if is_zero(l[0], 0.0):
        return (one, 0 * one)
    return (0 * one, one)


def _with_pole(conn, r):
    """Add ``r`` as an apparent pole with zero residue."""
    lin = Poly.linear(r, conn.one)
    return replace(conn, numerator=conn.numerator.map(lambda e: e * lin), q=conn.q + (r,))


def _drop_zero_pole(conn, r, tol):
    """Remove an apparent pole whose residue vanishes."""
    if r not in conn.q or not conn.residue_at(r).is_zero(tol):
        return conn
    A = conn.numerator.map(lambda e: _exact_quotient(e, r, tol))
    return replace(conn, numerator=A, q=tuple(s for s in conn.q if s != r))


# --------------------------------------------------------------------------
# Birkhoff renormalization


def _order(f, d):
    """Order of growth at infinity of the column ``f`` against types ``d``."""
    best = None
    for fi, di in zip(f, d):
        if not fi.is_zero():
            o = fi.degree - di
            best = o if best is None or o > best else best
    return best


def _lead_at(fi, target):
    if fi.is_zero() or fi.degree != target:
        return 0 * fi.leading() if not fi.is_zero() else 0
    return fi.leading()


def column_reduce(frame, types, tol=DEFAULT_TOL, max_steps=64):
    """Column-reduce ``frame`` (rational entries, old-frame coordinates).

    Returns ``(U, new_types)`` with ``U`` polynomial unimodular such that
    ``frame * U`` is a Birkhoff frame of splitting ``new_types`` (sorted).
    """
    cols = [list(frame.column(0)), list(frame.column(1))]
    cols = [[c if isinstance(c, RatFunc) else RatFunc(c) for c in col] for col in cols]
    one = _one_of(cols)
    zero = 0 * one
    U = [[Poly.const(one), Poly.const(zero)], [Poly.const(zero), Poly.const(one)]]  # columns
    for _ in range(max_steps):
        delta = [_order(c, types) for c in cols]
        if None in delta:
            raise GaugeError("frame is degenerate")
        L = [[_lead_at(cols[j][i], delta[j] + types[i]) for j in range(2)] for i in range(2)]
        det = L[0][0] * L[1][1] - L[0][1] * L[1][0]
        if not is_zero(det, tol):
            break
        hi, lo = (0, 1) if delta[0] >= delta[1] else (1, 0)
        row = 0 if not is_zero(L[0][lo], tol) else 1
        c = L[row][hi] * recip(L[row][lo])
        shift = Poly.monomial(c, delta[hi] - delta[lo])
        cols[hi] = [a - b * shift for a, b in zip(cols[hi], cols[lo])]
        U[hi] = [a - b * shift for a, b in zip(U[hi], U[lo])]
    else:
        raise GaugeError("column reduction did not terminate")
    k = [-delta[0], -delta[1]]
    if k[0] > k[1]:
        U = [U[1], U[0]]
        k = [k[1], k[0]]
    Umat = Matrix2(U[0][0], U[1][0], U[0][1], U[1][1])
    return Umat, BundleType(*k)


def _one_of(cols):
    for col in cols:
        for c in col:
            for coef in c.num.coeffs:
                return coef - coef + 1
    return 1


def renormalize_to_birkhoff(conn, frame=None, base=None, claimed=None, tol=DEFAULT_TOL):
    """Bring ``conn`` into a Birkhoff frame.

    ``conn.numerator`` is expressed in the coordinates of ``frame``, which is
    itself written in a Birkhoff frame of type ``base``.  With no frame the
    connection is assumed to be in its own frame already.  Parabolics
    are transported by the correcting gauge.
    """
    return _renormalize(conn, frame, base, claimed, tol)[0]


def _renormalize(conn, frame, base, claimed, tol):
    if frame is None:
        frame = Matrix2.identity(conn.one)
        base = conn.bundle
    U, found = column_reduce(frame, (base.d1, base.d2), tol)
    if claimed is not None and found != claimed:
        raise SplittingError(f"claimed splitting {claimed.as_list()}", found)
    A = _polynomial_gauge(conn.numerator, U, conn.denominator)
    parabolics = tuple(
        _transport(l, _eval_matrix(U, ti), tol) for l, ti in zip(conn.parabolics, conn.t)
    )
    out = replace(conn, bundle=found, numerator=A, parabolics=parabolics)
    report = check_infinity(out, tol)
    if not report.ok:
        raise SplittingError("renormalized frame is not holomorphic at infinity: "
                             + "; ".join(report.violations), found)
    return out, U


# --------------------------------------------------------------------------
# moves


def apply_constant(conn, M, tol=DEFAULT_TOL, log=True):
    if is_zero(M.det(), tol):
        raise GaugeError("constant gauge must be invertible")
    if conn.bundle.d1 < conn.bundle.d2 and not is_zero(M.b, tol):
        raise GaugeError("for d1 < d2 only lower-triangular constant gauges are automorphisms")
    inv = M.inverse()
    A = (inv.map(Poly.const) * conn.numerator * M.map(Poly.const))
    out = replace(conn, numerator=A,
                  parabolics=tuple(_transport(l, M, tol) for l in conn.parabolics))
    return out.with_history({"move": "constant", "M": M}) if log else out


def apply_unipotent(conn, lam1, lam2, f, tol=DEFAULT_TOL, log=True):
    """Gauge by the bundle automorphism ``(lam1 0; f(x) lam2)``."""
    gap = conn.bundle.gap
    if gap <= 0:
        raise GaugeError("unipotent automorphisms need d1 < d2")
    if not isinstance(f, Poly):
        f = Poly.const(f)
    if f.trim(tol).degree > gap:
        raise GaugeError(f"deg f = {f.degree} exceeds d2 - d1 = {gap}")
    zero = Poly.const(0 * lam1)
    U = Matrix2(Poly.const(lam1), zero, f, Poly.const(lam2))
    out = _apply_polynomial(conn, U, tol)
    return out.with_history({"move": "lower_unipotent", "l1": lam1, "l2": lam2, "f": f}) if log else out


def _apply_polynomial(conn, U, tol):
    A = _polynomial_gauge(conn.numerator, U, conn.denominator)
    parabolics = tuple(
        _transport(l, _eval_matrix(U, ti), tol) for l, ti in zip(conn.parabolics, conn.t)
    )
    return replace(conn, numerator=A, parabolics=parabolics)


def twist(conn, k, lambdas, tol=DEFAULT_TOL, log=True):
    """Tensor with the rank-one connection ``d + sum lambda_i dx/(x - t_i)`` on ``O(k)``."""
    lambdas = list(lambdas)
    if len(lambdas) != conn.n:
        raise GaugeError("one twist parameter per true pole is required")
    total = k + sum(lambdas[1:], lambdas[0])
    if not is_zero(total, tol):
        raise GaugeError(f"twist is unbalanced: sum(lambda) + k = {total}")
    P = conn.denominator
    shift = Poly()
    for lam, ti in zip(lambdas, conn.t):
        shift = shift + (P // Poly.linear(ti, conn.one)) * lam
    A = conn.numerator
    A = Matrix2(A.a + shift, A.b, A.c, A.d + shift)
    out = replace(conn, numerator=A, bundle=BundleType(conn.bundle.d1 + k, conn.bundle.d2 + k),
                  spectral=conn.spectral.shifted(lambdas))
    return out.with_history({"move": "twist", "k": k, "lambda": lambdas}) if log else out


def _frame_transport(l, frame, ti, r, tol):
    if l is None or ti == r:
        return None
    return normalize_direction(_eval_matrix(frame, ti).inverse().apply(l), tol)


def elm_minus(conn, i, tol=DEFAULT_TOL, log=True):
    """Negative elementary transformation at ``t_i`` directed by the parabolic ``l_i``."""
    l = conn.parabolics[i]
    if l is None:
        raise GaugeError(f"parabolic at pole {i} is undefined")
    out = _elm_true(conn, i, l, -1, tol)
    return out.with_history({"move": "elm_minus", "i": i}) if log else out


def elm_plus(conn, i, tol=DEFAULT_TOL, log=True):
    """Positive elementary transformation at ``t_i`` directed by the parabolic ``l_i``."""
    l = conn.parabolics[i]
    if l is None:
        raise GaugeError(f"parabolic at pole {i} is undefined")
    out = _elm_true(conn, i, l, 1, tol)
    return out.with_history({"move": "elm_plus", "i": i}) if log else out


def _elm_true(conn, i, l, sign, tol):
    r = conn.t[i]
    out, U_r = _elementary_with_frame(conn, r, l, sign, tol)
    plus, minus = conn.spectral.pair(i)
    if sign < 0:
        pair = (minus + 1, plus)
    else:
        pair = (minus, plus - 1)
    one = conn.one
    new_l = normalize_direction(U_r.inverse().apply((0 * one, one)), tol)
    parabolics = list(out.parabolics)
    parabolics[i] = new_l
    return replace(out, spectral=out.spectral.replace(i, *pair), parabolics=tuple(parabolics))


def _elementary_with_frame(conn, r, l, sign, tol):
    """Run the elementary transformation and return the output with ``U(r)``.

    ``U`` is the unimodular correction applied after the local diagonal
    gauge, so ``U(r)^-1 (0; 1)`` is the new parabolic at ``r``.
    """
    one = conn.one
    l = normalize_direction(l, tol)
    P = Matrix2.from_columns(l, _complement(l, one))
    Pinv = P.inverse()
    A = Pinv.map(Poly.const) * conn.numerator * P.map(Poly.const)
    lin = Poly.linear(r, one)
    cofactor = conn.denominator // lin
    try:
        a21 = _exact_quotient(A.c, r, tol)
    except GaugeError:
        raise GaugeError(f"direction {l} is not invariant under the residue at {r}") from None
    if sign < 0:
        A = Matrix2(A.a, A.b * lin, a21, A.d + cofactor)
        frame = Matrix2(RatFunc(Poly.const(P.a)), RatFunc(Poly.const(P.b) * lin),
                        RatFunc(Poly.const(P.c)), RatFunc(Poly.const(P.d) * lin))
    else:
        A = Matrix2(A.a - cofactor, A.b * lin, a21, A.d)
        inv = RatFunc.inv_linear(r, one)
        frame = Matrix2(inv * P.a, RatFunc(Poly.const(P.b)),
                        inv * P.c, RatFunc(Poly.const(P.d)))
    parabolics = tuple(
        None if ti == r else _frame_transport(pl, frame, ti, r, tol)
        for pl, ti in zip(conn.parabolics, conn.t)
    )
    raw = replace(conn, numerator=A, parabolics=parabolics)
    out, U = _renormalize(raw, frame, conn.bundle, None, tol)
    expected = conn.bundle.degree + (-1 if sign < 0 else 1)
    if out.bundle.degree != expected:
        raise SplittingError("unexpected degree after elementary transformation", out.bundle)
    return out, _eval_matrix(U, r)


def elm_minus_at_apparent(conn, q, direction, tol=DEFAULT_TOL, log=True):
    """Negative elementary transformation at an apparent pole; drops it if the residue vanishes."""
    if q not in conn.q:
        raise GaugeError(f"{q} is not an apparent pole")
    out, _ = _elementary_with_frame(conn, q, direction, -1, tol)
    out = _drop_zero_pole(out, q, tol)
    move = {"move": "elm_minus_at_apparent", "q": q, "direction": tuple(direction)}
    return out.with_history(move) if log else out


def elm_plus_at_apparent(conn, q, direction, tol=DEFAULT_TOL, log=True):
    """Positive elementary transformation at ``q``, which becomes an apparent pole."""
    if q in conn.t.t:
        raise GaugeError(f"{q} is a true pole")
    base = conn if q in conn.q else _with_pole(conn, q)
    out, _ = _elementary_with_frame(base, q, direction, 1, tol)
    out = _drop_zero_pole(out, q, tol)
    move = {"move": "elm_plus_at_apparent", "q": q, "direction": tuple(direction)}
    return out.with_history(move) if log else out


# --------------------------------------------------------------------------
# normal forms


def normal_form(conn, tol=DEFAULT_TOL, log=True):
    """Canonical representative of the gauge class of ``conn``.

    For ``d1 < d2``: ``b`` monic and the coefficients of ``a + f b`` in
    degrees ``deg b .. deg b + (d2 - d1)`` cleared.  For ``d1 = d2``: the
    first three distinct directions among the parabolics (then the other
    eigendirections) are sent to ``(1;0), (0;1), (1;1)``.
    """
    if conn.bundle.d1 < conn.bundle.d2:
        out = _normal_form_split(conn, tol)
    else:
        out = _normal_form_balanced(conn, tol)
    out = replace(out, history=conn.history)
    return out.with_history({"move": "normal_form"}) if log else out


def _normal_form_split(conn, tol):
    from .connection import ReducibleConnectionError

    b = conn.b.trim(tol)
    if b.is_zero():
        raise ReducibleConnectionError("b(x) vanishes: connection is reducible")
    one = conn.one
    lead = b.lead
    out = apply_unipotent(conn, one, recip(lead), Poly(), tol, log=False)
    b = out.b.trim(tol)
    a = out.numerator.a
    m = conn.bundle.gap
    db = b.degree
    f = [0 * one] * (m + 1)
    for k in range(m, -1, -1):
        coef = a.coeff(db + k)
        for j in range(k + 1, m + 1):
            coef = coef + f[j] * b.coeff(db + k - j)
        f[k] = -coef
    return apply_unipotent(out, one, one, Poly(f), tol, log=False)


def _candidate_directions(conn, tol):
    from .connection import FreeParabolicError, eigendirection

    cands = [l for l in conn.parabolics if l is not None]
    for i in range(conn.n):
        try:
            cands.append(eigendirection(conn, i, "-", tol))
        except (FreeParabolicError, SpectralError):
            pass
    distinct = []
    for v in cands:
        if not any(same_direction(v, w, tol) for w in distinct):
            distinct.append(v)
    return distinct


def _normal_form_balanced(conn, tol):
    one = conn.one
    dirs = _candidate_directions(conn, tol)
    if len(dirs) >= 3:
        la, lb, lc = dirs[:3]
        alpha, beta = solve([[la[0], lb[0]], [la[1], lb[1]]], [lc[0], lc[1]], tol)
        M = Matrix2.from_columns((alpha * la[0], alpha * la[1]), (beta * lb[0], beta * lb[1]))
        return apply_constant(conn, M, tol, log=False)
    if len(dirs) == 2:
        out = apply_constant(conn, Matrix2.from_columns(dirs[0], dirs[1]), tol, log=False)
        for res in out.residues() + [_leading_matrix(out)]:
            if not is_zero(res.b, tol):
                return apply_constant(out, Matrix2.diag(one, recip(res.b)), tol, log=False)
            if not is_zero(res.c, tol):
                return apply_constant(out, Matrix2.diag(one, res.c), tol, log=False)
        return out
    raise NormalFormError("fewer than two distinct eigendirections: frame is not fixed")


def _leading_matrix(conn):
    return conn.numerator.map(lambda p: p.lead if not p.is_zero() else 0 * conn.one)


# --------------------------------------------------------------------------
# move logs


def apply_move(conn, move, tol=DEFAULT_TOL):
    kind = move["move"]
    if kind == "constant":
        return apply_constant(conn, move["M"], tol)
    if kind == "lower_unipotent":
        return apply_unipotent(conn, move["l1"], move["l2"], move["f"], tol)
    if kind == "twist":
        return twist(conn, move["k"], move["lambda"], tol)
    if kind == "elm_minus":
        return elm_minus(conn, move["i"], tol)
    if kind == "elm_plus":
        return elm_plus(conn, move["i"], tol)
    if kind == "elm_minus_at_apparent":
        return elm_minus_at_apparent(conn, move["q"], move["direction"], tol)
    if kind == "elm_plus_at_apparent":
        return elm_plus_at_apparent(conn, move["q"], move["direction"], tol)
    if kind == "normal_form":
        return normal_form(conn, tol)
    raise GaugeError(f"unknown move {kind!r}")


class MoveError(GaugeError):
    def __init__(self, index, cause):
        super().__init__(f"move {index} failed: {cause}")
        self.index = index
        self.cause = cause


def replay(conn, moves, tol=DEFAULT_TOL):
    for k, move in enumerate(moves):
        try:
            conn = apply_move(conn, move, tol)
        except (ValueError, ArithmeticError) as exc:
            raise MoveError(k, exc) from exc
    return conn


def is_equivalent(c1, c2, tol=DEFAULT_TOL):
    """Equal normal forms."""
    return normal_form(c1, tol, log=False).same_as(normal_form(c2, tol, log=False), tol)


__all__ = [
    "GaugeError", "MoveError", "NormalFormError", "SplittingError", "LogConnection",
    "apply_constant", "apply_move", "apply_unipotent", "column_reduce", "elm_minus",
    "elm_minus_at_apparent", "elm_plus", "elm_plus_at_apparent", "is_equivalent",
    "normal_form", "renormalize_to_birkhoff", "replay", "twist",
]
