"""Batch property checks behind ``logconn verify``.

Each suite samples from a seeded generator, checks identities, and returns
a :class:`Report`; reports merge associatively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DEFAULT_TOL, EXACT, FLOAT, is_zero
from .fuchsian import _entry_size, cubic_residuals, invariants
from .gauge import elm_minus, elm_plus, is_equivalent, normal_form, replay, twist
from .garnier import garnier_coordinates, garnier_normal_form, garnier_to_connection
from .painleve import from_pq, resonance_obstruction, shifted_spectral, to_pq
from .sampling import (
    SHAPES,
    connection_to_backend,
    make_rng,
    random_connection,
    random_fuchsian,
    random_garnier,
    random_pqpoint,
    random_sl2,
    to_backend,
)
from .symplectic import probe, relative_spread

SUITES = ("cubic", "gauge", "elm", "chart", "garnier")


@dataclass
class Report:
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def record(self, check, ok, detail=None):
        self.total += 1
        passed, total = self.checks.get(check, (0, 0))
        self.checks[check] = (passed + bool(ok), total + 1)
        if ok:
            self.passed += 1
        elif len(self.failures) < 20:
            self.failures.append(f"{check}: {detail}" if detail else check)

    def merge(self, other):
        self.passed += other.passed
        self.total += other.total
        self.failures.extend(other.failures)
        for k, (p, t) in other.checks.items():
            p0, t0 = self.checks.get(k, (0, 0))
            self.checks[k] = (p0 + p, t0 + t)
        self.extra.update(other.extra)
        return self

    @property
    def ok(self):
        return self.passed == self.total

    def as_dict(self):
        return {"passed": self.passed, "total": self.total, "ok": self.ok,
                "checks": {k: {"passed": p, "total": t} for k, (p, t) in self.checks.items()},
                "failures": self.failures}


def _guard(report, check, fn):
    try:
        ok, detail = fn()
    except (ValueError, ArithmeticError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    report.record(check, ok, detail)


def verify_cubic(count=100, seed=0, backend=EXACT, tol=DEFAULT_TOL):
    rng = make_rng(seed)
    report = Report()
    for _ in range(count):
        sys = random_fuchsian(rng)
        g = random_sl2(rng)
        moved = sys.conjugate(g)
        if backend != EXACT:
            sys, moved = to_backend(sys, backend), to_backend(moved, backend)

        def membership(sys=sys):
            pt = invariants(sys, tol)
            lin, cub = cubic_residuals(pt, sys.theta)
            size = max(1.0, max(abs(complex(x)) for x in pt.coords())) if backend != EXACT else 1
            return is_zero(lin, tol * size) and is_zero(cub, tol * size ** 3), (lin, cub)

        def conjugation(sys=sys, moved=moved):
            # Y is cubic in the entries, so float round-off grows with their size cubed
            slack = _entry_size(moved.residues) ** 3 if backend != EXACT else 1
            a, b = invariants(sys, tol), invariants(moved, tol)
            return a.close_to(b, tol * slack), (a, b)

        _guard(report, "cubic membership", membership)
        _guard(report, "conjugation invariance", conjugation)
    return report


def verify_gauge(count=25, seed=0, backend=EXACT, tol=DEFAULT_TOL):
    rng = make_rng(seed)
    report = Report()
    for shape in SHAPES:
        for _ in range(count):
            conn = random_connection(rng, shape)
            if backend != EXACT:
                conn = connection_to_backend(conn, backend)

            def idempotent(conn=conn):
                nf = normal_form(conn, tol, log=False)
                return normal_form(nf, tol, log=False).same_as(nf, tol), None

            def replayed(conn=conn):
                start = conn
                out = elm_minus(normal_form(start, tol), 0, tol)
                again = replay(start, out.history[len(start.history):], tol)
                return again.same_as(out, tol), None

            _guard(report, f"normal form idempotent {shape}", idempotent)
            _guard(report, f"move log replay {shape}", replayed)
    return report


def verify_elm(count=25, seed=0, backend=EXACT, tol=DEFAULT_TOL):
    rng = make_rng(seed)
    report = Report()
    for shape in SHAPES:
        for _ in range(count):
            conn = random_connection(rng, shape)
            if backend != EXACT:
                conn = connection_to_backend(conn, backend)
            i = rng.randrange(conn.n)

            def inverse(conn=conn, i=i):
                down = elm_minus(conn, i, tol, log=False)
                return is_equivalent(elm_plus(down, i, tol, log=False), conn, tol), None

            def square(conn=conn, i=i):
                twice = elm_minus(elm_minus(conn, i, tol, log=False), i, tol, log=False)
                lambdas = [0 * conn.one] * conn.n
                lambdas[i] = conn.one
                return is_equivalent(twice, twist(conn, -1, lambdas, tol, log=False), tol), None

            def spectra(conn=conn, i=i):
                plus, minus = conn.spectral.pair(i)
                down = elm_minus(conn, i, tol, log=False)
                up = elm_plus(conn, i, tol, log=False)
                ok = (_close_pair(down.spectral.pair(i), (minus + 1, plus), tol)
                      and _close_pair(up.spectral.pair(i), (minus, plus - 1), tol)
                      and down.bundle.degree == conn.bundle.degree - 1
                      and up.bundle.degree == conn.bundle.degree + 1)
                return ok, (down.spectral.pair(i), up.spectral.pair(i))

            _guard(report, f"elm+ after elm- {shape}", inverse)
            _guard(report, f"elm- twice is a twist {shape}", square)
            _guard(report, f"spectral update {shape}", spectra)
    return report


def _close_pair(a, b, tol):
    return all(is_zero(x - y, tol) for x, y in zip(a, b))


def probe_grid():
    """The 10 x 10 grid, spectral data and poles used by the Jacobian check."""
    thetas = [Fraction(3, 10), Fraction(9, 20), Fraction(7, 10), Fraction(1, 5)]
    t = (0, 1, -1, 2)
    qs = [0.3 + 0.17 * k for k in range(10)]
    qs = [q + 0.05 if abs(q - 1) < 0.05 else q for q in qs]
    ps = [-1.1 + 0.23 * k + 0.1j for k in range(10)]
    return qs, ps, shifted_spectral(thetas), t


def verify_chart(count=50, seed=0, backend=EXACT, tol=DEFAULT_TOL, jacobian=True):
    rng = make_rng(seed)
    report = Report()
    for _ in range(count):
        pt = random_pqpoint(rng)
        conn = random_connection(rng, (0, 1))

        def forward(pt=pt):
            back = to_pq(from_pq(pt, tol), tol)
            return back.same_as(pt, tol), (pt, back)

        def backward(conn=conn):
            return is_equivalent(from_pq(to_pq(conn, tol), tol), conn, tol), None

        def apparent(pt=pt):
            out = resonance_obstruction(_with_q(pt, tol), pt.q, 1, tol)
            return is_zero(out, tol), out

        _guard(report, "to_pq after from_pq", forward)
        _guard(report, "from_pq after to_pq", backward)
        _guard(report, "apparent point at q", apparent)
    if jacobian:
        qs, ps, spec, t = probe_grid()
        samples = probe(qs, ps, spec, t)
        spread, mean = relative_spread(samples)
        report.extra["jacobian_samples"] = samples
        report.record("symplectic constancy", spread <= 1e-6, f"relative spread {spread:.3e}")
        report.extra["jacobian_ratio"] = mean
    return report


def _with_q(pt, tol):
    from .painleve import normal_form_02

    return normal_form_02(pt.q, pt.p, pt.spectral, pt.t)


def verify_garnier(count=20, seed=0, backend=EXACT, tol=DEFAULT_TOL, sizes=(5, 6, 7)):
    rng = make_rng(seed)
    report = Report()
    for n in sizes:
        for _ in range(count):
            pt = random_garnier(rng, n)

            def roundtrip(pt=pt):
                back = garnier_coordinates(garnier_to_connection(pt, tol), tol)
                return back.same_as(pt, tol), (pt.pairs, back.pairs)

            def obstructions(pt=pt):
                nf = garnier_normal_form(pt, tol)
                values = [resonance_obstruction(nf, q, 1, tol) for q in pt.q]
                return all(is_zero(v, tol) for v in values), values

            _guard(report, f"roundtrip n={n}", roundtrip)
            _guard(report, f"apparent points n={n}", obstructions)
    return report


_RUNNERS = {"cubic": verify_cubic, "gauge": verify_gauge, "elm": verify_elm,
            "chart": verify_chart, "garnier": verify_garnier}


def run(suite, count=None, seed=0, backend=EXACT, tol=DEFAULT_TOL):
    names = SUITES if suite == "all" else (suite,)
    report = Report()
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        kwargs = {"seed": seed, "backend": backend, "tol": tol}
        if count is not None:
            kwargs["count"] = count
        if backend == FLOAT and name in ("chart", "garnier"):
            # roundtrips read exact zeros of b(x); these suites always run exact
            kwargs["backend"] = EXACT
        report.merge(_RUNNERS[name](**kwargs))
    return report
