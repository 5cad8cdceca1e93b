import pytest

from logconn.symplectic import DARBOUX, KERNEL, jacobian, probe, relative_spread
from logconn.verify import Report, probe_grid, run


def test_darboux_ratio_is_constant_on_a_small_grid():
    qs, ps, spec, t = probe_grid()
    samples = probe(qs[:3], ps[:3], spec, t, coordinates=DARBOUX)
    spread, mean = relative_spread(samples)
    assert spread < 1e-6
    assert abs(mean + 2) < 1e-6


def test_kernel_coordinates_carry_the_pole_product():
    qs, ps, spec, t = probe_grid()
    samples = probe(qs[:4], ps[:2], spec, t, coordinates=KERNEL)
    for s in samples:
        prod = 1
        for ti in t:
            prod *= s.q - ti
        assert abs(s.ratio * prod + 2) < 1e-6
    assert relative_spread(samples)[0] > 1e-2


def test_richardson_improves_the_estimate():
    qs, ps, spec, t = probe_grid()
    exact = None
    errs = []
    for richardson in (False, True):
        j = jacobian(qs[2], ps[5], spec, t, step=1e-2, richardson=richardson)
        exact = exact or jacobian(qs[2], ps[5], spec, t, step=1e-4)
        errs.append(abs(j - exact))
    assert errs[1] < errs[0]


def test_unknown_coordinates():
    qs, ps, spec, t = probe_grid()
    with pytest.raises(ValueError):
        jacobian(qs[0], ps[0], spec, t, coordinates="polar")


def test_reports_merge():
    a, b = Report(), Report()
    a.record("x", True)
    b.record("x", False, "boom")
    a.merge(b)
    assert (a.passed, a.total, a.ok) == (1, 2, False)
    assert a.as_dict()["checks"]["x"] == {"passed": 1, "total": 2}
    assert a.failures == ["x: boom"]


def test_all_suites_small():
    report = run("all", count=2, seed=3)
    assert report.ok, report.failures
