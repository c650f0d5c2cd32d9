"""Levi-Civita connection and curvature of a chart at a point.

Sign conventions::

    Gamma^a_bc = 1/2 g^ad (d_b g_dc + d_c g_db - d_d g_bc)
    Rc^a_jhi   = d_h Gamma^a_ij - d_i Gamma^a_hj + Gamma^a_he Gamma^e_ij - Gamma^a_ie Gamma^e_hj
    R_hijk     = g_ka Rc^a_jhi

so that ``Ric_ij = g^hk R_hijk`` is positive on round spheres.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ops import (
    DegenerateDecomposition, NoDecomposition, RoterCoefficients, curv_action, proportionality,
    ricci, roter_decompose, tachibana, weyl,
)
from ..report import Report
from ..tensors import Curv4, Sym2
from .charts import ChartMetric, ZeroCharge
from .jet import Jet2, seed


class DegenerateMetricAtPoint(ValueError):
    pass


@dataclass(frozen=True)
class MetricJet:
    """``g_ab``, ``d_c g_ab`` and ``d_c d_d g_ab`` at a point, as float arrays."""

    g: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray


def metric_jet(chart: ChartMetric, x) -> MetricJet:
    chart.check(x)
    n = chart.n
    grid = chart(seed([float(v) for v in x]))
    g = np.zeros((n, n))
    dg = np.zeros((n, n, n))
    ddg = np.zeros((n, n, n, n))
    for a in range(n):
        for b in range(n):
            c = grid[a][b]
            if not isinstance(c, Jet2):
                c = Jet2.constant(c, n)
            g[a, b] = c.value
            dg[a, b] = c.grad
            ddg[a, b] = c.hess
    return MetricJet(g, dg, ddg)


def _inverse(g: np.ndarray) -> np.ndarray:
    scale = max(1.0, float(np.abs(g).max()))
    if abs(np.linalg.det(g)) <= 1e-14 * scale ** len(g):
        raise DegenerateMetricAtPoint("metric is degenerate at this point")
    return np.linalg.inv(g)


def _christoffel_and_derivative(j: MetricJet):
    gi = _inverse(j.g)
    # dg[a, b, e] = d_e g_ab; first-kind symbols G1[d, b, c] and d_e of them
    G1 = 0.5 * (np.einsum("dcb->dbc", j.dg) + j.dg - np.einsum("bcd->dbc", j.dg))
    dG1 = 0.5 * (np.einsum("dcbe->dbce", j.ddg) + j.ddg - np.einsum("bcde->dbce", j.ddg))
    gamma = np.einsum("ad,dbc->abc", gi, G1)
    dgi = -np.einsum("ap,pqe,qd->ade", gi, j.dg, gi)
    dgamma = np.einsum("ade,dbc->abce", dgi, G1) + np.einsum("ad,dbce->abce", gi, dG1)
    return gamma, dgamma


def christoffel(chart: ChartMetric, x) -> np.ndarray:
    """``Gamma[a, b, c] = Gamma^a_bc``."""
    gamma, _ = _christoffel_and_derivative(metric_jet(chart, x))
    return gamma


def metric_at(chart: ChartMetric, x) -> Sym2:
    return Sym2.from_array(metric_jet(chart, x).g, exact=False)


def riemann_lowered(chart: ChartMetric, x) -> Curv4:
    j = metric_jet(chart, x)
    gamma, dgamma = _christoffel_and_derivative(j)
    # dgamma[a, b, c, e] = d_e Gamma^a_bc
    up = (np.einsum("aijh->ajhi", dgamma) - np.einsum("ahji->ajhi", dgamma)
          + np.einsum("ahe,eij->ajhi", gamma, gamma) - np.einsum("aie,ehj->ajhi", gamma, gamma))
    low = np.einsum("ka,ajhi->hijk", j.g, up)
    return Curv4(low)


def curvature_at(chart: ChartMetric, x):
    """``(g, R, Ric, kappa)`` at a point."""
    R = riemann_lowered(chart, x)
    g = metric_at(chart, x)
    S = ricci(R, g)
    return g, R, S, S.trace(g)


# ---------------------------------------------------------------------------
# Roter coefficients of the charged black-hole family


def rn_roter_coefficients(M: float, Q: float, Lam: float, r: float) -> RoterCoefficients:
    """Closed-form ``(phi, mu, eta)`` for the Reissner-Nordstrom-(anti-)de Sitter metric."""
    if Q == 0:
        raise ZeroCharge("the closed forms need a nonzero charge")
    Q2, Q4 = Q * Q, Q ** 4
    phi = 1.5 * (Q2 - M * r) * r ** 4 / Q4
    mu = 0.5 * (Q4 + 3 * Q2 * Lam * r ** 4 - 3 * Lam * M * r ** 5) / Q4
    eta = (3 * Q ** 6 + 4 * Q4 * Lam * r ** 4 - 3 * Q4 * M * r + 9 * Q2 * Lam ** 2 * r ** 8
           - 9 * Lam ** 2 * M * r ** 9) / (12 * r ** 4 * Q4)
    return RoterCoefficients(phi, mu, eta)


def roter_residual(chart: ChartMetric, x, coeffs: RoterCoefficients) -> float:
    """``|R - (phi/2 S^S + mu g^S + eta/2 g^g)|_inf / max(1, |R|_inf)``."""
    g, R, S, _ = curvature_at(chart, x)
    model = coeffs.tensor(S, g)
    r = R.to_float()
    return float(np.abs(r - model.to_float()).max() / max(1.0, np.abs(r).max()))


def verify_point(chart: ChartMetric, x, coeffs: RoterCoefficients | None = None,
                 tol: float = 1e-8) -> Report:
    """Roter residual and the pseudosymmetry-type verdicts at one point."""
    rep = Report(tol, {"chart": chart.name, "point": [float(v) for v in x], **chart.params})
    g, R, S, kappa = curvature_at(chart, x)
    if coeffs is not None:
        res = roter_residual(chart, x, coeffs)
        ok = res <= tol
        chk = rep.holds("metric.roter_residual",
                        "R = phi/2 S^S + mu g^S + eta/2 g^g", ok,
                        f"residual {res:.3e} > {tol:g}", phi=coeffs.phi, mu=coeffs.mu,
                        eta=coeffs.eta)
        chk.residual = res
    if chart.n >= 4:
        try:
            solved = roter_decompose(R, g, tol)
            model = solved.tensor(S, g).to_float()
            r = R.to_float()
            res = float(np.abs(r - model).max() / max(1.0, np.abs(r).max()))
            chk = rep.holds("metric.roter_solved", "R = phi/2 S^S + mu g^S + eta/2 g^g",
                            res <= tol, f"residual {res:.3e} > {tol:g}", phi=solved.phi,
                            mu=solved.mu, eta=solved.eta)
            chk.residual = res
        except DegenerateDecomposition as exc:
            rep.skip("metric.roter_solved", "R = phi/2 S^S + mu g^S + eta/2 g^g", str(exc))
        except NoDecomposition as exc:
            rep.holds("metric.roter_solved", "R = phi/2 S^S + mu g^S + eta/2 g^g", False,
                      str(exc))
    C = weyl(R, g) if chart.n >= 3 else None
    pairs = [
        ("metric.pseudosymmetry", "R.R = L_R Q(g,R)",
         curv_action(R, R, g), tachibana(g, R)),
        ("metric.ricci_pseudosymmetry", "R.S = L_S Q(g,S)",
         curv_action(R, S, g), tachibana(g, S)),
    ]
    if C is not None and chart.n >= 4:
        pairs += [
            ("metric.weyl_pseudosymmetry", "R.C = L_1 Q(g,C)",
             curv_action(R, C, g), tachibana(g, C)),
            ("metric.pseudosymmetric_weyl", "C.C = L_C Q(g,C)",
             curv_action(C, C, g), tachibana(g, C)),
            ("metric.generalized_pseudosymmetry", "R.R - Q(S,R) = L Q(g,C)",
             curv_action(R, R, g) - tachibana(S, R), tachibana(g, C)),
        ]
    for cid, anchor, lhs, rhs in pairs:
        p = proportionality(lhs, rhs, tol)
        chk = rep.holds(cid, anchor, p.dependent,
                        f"not proportional (relative residual {float(p.residual):.3e})",
                        kind=p.kind, coefficient=p.coefficient)
        chk.residual = p.residual
    return rep


def verify_ricci_flat(chart: ChartMetric, x, tol: float = 1e-9) -> Report:
    """Vacuum check ``|Ric|_inf <= tol``."""
    rep = Report(tol, {"chart": chart.name, "point": [float(v) for v in x], **chart.params})
    _, _, S, _ = curvature_at(chart, x)
    rep.zero("metric.ricci_flat", "Ric = 0", S)
    return rep


__all__ = [
    "DegenerateMetricAtPoint", "MetricJet", "christoffel", "curvature_at", "metric_at",
    "metric_jet", "riemann_lowered", "rn_roter_coefficients", "roter_residual",
    "verify_point", "verify_ricci_flat",
]
