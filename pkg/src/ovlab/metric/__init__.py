"""Curvature of coordinate metrics by forward-mode differentiation."""

from .charts import (
    CHARTS, ChartMetric, InadmissiblePoint, UnknownChart, ZeroCharge, flat, get_chart,
    reissner_nordstrom, schwarzschild, sphere, sphere_line,
)
from .curvature import (
    DegenerateMetricAtPoint, MetricJet, christoffel, curvature_at, metric_at, metric_jet,
    riemann_lowered, rn_roter_coefficients, roter_residual, verify_point, verify_ricci_flat,
)
from .jet import Jet2

__all__ = [
    "CHARTS", "ChartMetric", "DegenerateMetricAtPoint", "InadmissiblePoint", "Jet2",
    "MetricJet", "UnknownChart", "ZeroCharge", "christoffel", "curvature_at", "flat",
    "get_chart", "metric_at", "metric_jet", "reissner_nordstrom", "riemann_lowered",
    "rn_roter_coefficients", "roter_residual", "schwarzschild", "sphere", "sphere_line",
    "verify_point", "verify_ricci_flat",
]
