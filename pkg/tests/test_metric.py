import math

import numpy as np
import pytest

from ovlab.metric import (
    InadmissiblePoint, Jet2, UnknownChart, ZeroCharge, christoffel, curvature_at, get_chart,
    metric_jet, riemann_lowered, rn_roter_coefficients, roter_residual, verify_point,
    verify_ricci_flat,
)
from ovlab.metric import jet
from ovlab.ops import RoterCoefficients


def central_differences(chart, x, step=1e-5):
    """First and second derivatives of every metric component by central differences."""
    x = np.asarray(x, float)
    n = len(x)
    g = lambda y: np.array([[float(v) for v in row] for row in chart(list(y))])
    dg = np.zeros((n, n, n))
    ddg = np.zeros((n, n, n, n))
    for c in range(n):
        e = np.eye(n)[c] * step
        dg[:, :, c] = (g(x + e) - g(x - e)) / (2 * step)
        for d in range(n):
            f = np.eye(n)[d] * step
            ddg[:, :, c, d] = (g(x + e + f) - g(x + e - f) - g(x - e + f) + g(x - e - f)) / (
                4 * step * step)
    return dg, ddg


def test_jet_arithmetic_rules():
    x, y = jet.seed([0.7, 1.3])
    f = jet.sin(x * y) / (1 + y ** 2) + jet.sqrt(y) * jet.cos(x)
    fd = lambda a, b: math.sin(a * b) / (1 + b * b) + math.sqrt(b) * math.cos(a)
    h = 1e-5
    assert f.value == pytest.approx(fd(0.7, 1.3))
    assert f.grad[0] == pytest.approx((fd(0.7 + h, 1.3) - fd(0.7 - h, 1.3)) / (2 * h), rel=1e-8)
    assert f.hess[0, 1] == f.hess[1, 0]
    mixed = (fd(0.7 + h, 1.3 + h) - fd(0.7 + h, 1.3 - h) - fd(0.7 - h, 1.3 + h)
             + fd(0.7 - h, 1.3 - h)) / (4 * h * h)
    assert f.hess[0, 1] == pytest.approx(mixed, rel=1e-4)


@pytest.mark.parametrize("lam", [0.0, 0.1, -0.1])
def test_jet_matches_finite_differences(lam):
    chart = get_chart("reissner-nordstrom", M=1.0, Q=0.5, Lam=lam)
    x = [0.0, 3.0, math.pi / 3, 0.0]
    mj = metric_jet(chart, x)
    dg, ddg = central_differences(chart, x)
    scale = max(1.0, np.abs(mj.dg).max())
    assert np.abs(mj.dg - dg).max() / scale <= 1e-7
    # second differences lose about half the digits; compare loosely
    assert np.abs(mj.ddg - ddg).max() / max(1.0, np.abs(mj.ddg).max()) <= 1e-4


def test_flat_christoffel_and_curvature():
    chart = get_chart("flat")
    x = [0.3, 1.0, 2.0, -1.0]
    assert not christoffel(chart, x).any()
    assert riemann_lowered(chart, x).is_zero()
    assert roter_residual(chart, x, RoterCoefficients(0, 0, 0)) == 0


def test_sphere_christoffel_equator():
    gam = christoffel(get_chart("sphere"), [math.pi / 2, 0.0])
    assert abs(gam[0, 1, 1]) < 1e-15 and abs(gam[1, 0, 1]) < 1e-15
    gam = christoffel(get_chart("sphere"), [math.pi / 3, 0.0])
    assert gam[0, 1, 1] == pytest.approx(-math.sin(math.pi / 3) * math.cos(math.pi / 3))
    assert gam[1, 0, 1] == pytest.approx(1 / math.tan(math.pi / 3))


def test_schwarzschild_christoffel():
    gam = christoffel(get_chart("schwarzschild", M=1.0), [0.0, 3.0, 1.0, 0.0])
    assert gam[1, 0, 0] == pytest.approx(1 / 27, rel=1e-12)


def test_sphere_line_sectional_curvature():
    th = 1.1
    g, R, S, kappa = curvature_at(get_chart("sphere-line", radius=2.0), [th, 0.0, 0.0])
    gm = g.to_float()
    sec = R.to_float()[0, 1, 1, 0] / (gm[0, 0] * gm[1, 1] - gm[0, 1] ** 2)
    assert sec == pytest.approx(0.25, rel=1e-12)
    assert kappa == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize("r", [3.0, 4.0])
def test_schwarzschild_ricci_flat(r):
    rep = verify_ricci_flat(get_chart("schwarzschild", M=1.0), [0.0, r, math.pi / 3, 0.0])
    assert rep.ok


def test_curvature_symmetries():
    R = riemann_lowered(get_chart("rn", M=1.0, Q=0.5, Lam=0.1), [0.0, 2.5, math.pi / 6, 0.0])
    r = R.to_float()
    assert np.abs(r + r.transpose(1, 0, 2, 3)).max() < 1e-12
    assert np.abs(r - r.transpose(2, 3, 0, 1)).max() < 1e-12
    bianchi = r + r.transpose(1, 2, 0, 3) + r.transpose(2, 0, 1, 3)
    assert np.abs(bianchi).max() < 1e-12


def test_rn_coefficients_closed_values():
    c = rn_roter_coefficients(1.0, 0.5, 0.0, 3.0)
    assert c.phi == pytest.approx(-5346.0)
    assert c.mu == pytest.approx(0.5)
    assert rn_roter_coefficients(1.0, 0.5, 0.0, 0.25).phi == 0
    with pytest.raises(ZeroCharge):
        rn_roter_coefficients(1.0, 0.0, 0.0, 3.0)


def test_rn_solved_roter_form_and_pseudosymmetry():
    for lam in (0.0, 0.1, -0.1):
        chart = get_chart("rn", M=1.0, Q=0.5, Lam=lam)
        for r in (2.5, 3.0, 4.0):
            rep = verify_point(chart, [0.0, r, math.pi / 3, 0.0])
            assert rep.ok, [(c.check_id, c.reason) for c in rep.failures()]
            assert rep.status_of("metric.roter_solved") == "pass"


def test_residual_detects_perturbation():
    chart = get_chart("rn", M=1.0, Q=0.5, Lam=0.0)
    x = [0.0, 3.0, math.pi / 3, 0.0]
    rep = verify_point(chart, x)
    solved = rep.get("metric.roter_solved").params
    c = RoterCoefficients(solved["phi"], solved["mu"], solved["eta"])
    assert roter_residual(chart, x, c) <= 1e-8
    bumped = RoterCoefficients(c.phi * (1 + 1e-3), c.mu, c.eta)
    assert roter_residual(chart, x, bumped) > 1e-5


def test_inadmissible_points():
    chart = get_chart("rn", M=1.0, Q=0.5, Lam=0.0)
    with pytest.raises(InadmissiblePoint):
        metric_jet(chart, [0.0, -1.0, 1.0, 0.0])
    with pytest.raises(InadmissiblePoint):
        metric_jet(chart, [0.0, 3.0, 0.0, 0.0])
    with pytest.raises(InadmissiblePoint):
        metric_jet(get_chart("schwarzschild", M=1.0), [0.0, 2.0, 1.0, 0.0])
    with pytest.raises(UnknownChart):
        get_chart("kottler")


def test_jet_constant_and_variable():
    v = Jet2.variable(2.0, 1, 3)
    assert (v * v).grad.tolist() == [0.0, 4.0, 0.0]
    assert (v * v).hess[1, 1] == 2.0
    assert (1 / v).hess[1, 1] == pytest.approx(2 / 8)
