"""Coordinate charts with closed-form metric components.

A chart maps a coordinate point to its metric matrix. Components are written
once, with arithmetic that works on floats and on :class:`Jet2` alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .jet import sin


class InadmissiblePoint(ValueError):
    pass


class UnknownChart(KeyError):
    pass


class ZeroCharge(ValueError):
    pass


@dataclass(frozen=True)
class ChartMetric:
    """``components(x)`` returns the symmetric ``n x n`` grid of ``g_ab(x)``."""

    name: str
    n: int
    coords: tuple
    components: Callable
    domain: Callable = field(default=lambda x: None)
    params: dict = field(default_factory=dict)

    def check(self, x) -> None:
        if len(x) != self.n:
            raise InadmissiblePoint(f"{self.name} needs {self.n} coordinates")
        reason = self.domain(x)
        if reason:
            raise InadmissiblePoint(f"{self.name}: {reason} at {tuple(x)}")

    def __call__(self, x):
        return self.components(x)


def rn_h(M, Q, Lam):
    """The lapse function ``h(r) = 1 - 2M/r + Q^2/r^2 - Lam r^3/3``."""
    return lambda r: 1 - 2 * M / r + Q * Q / (r * r) - Lam * r ** 3 / 3


def reissner_nordstrom(M: float = 1.0, Q: float = 0.5, Lam: float = 0.0) -> ChartMetric:
    """``-h dt^2 + h^-1 dr^2 + r^2 (dtheta^2 + sin^2 theta dphi^2)`` in (t, r, theta, phi)."""
    h = rn_h(M, Q, Lam)

    def comps(x):
        _, r, th, _ = x
        hr = h(r)
        s = sin(th)
        zero = 0 * r
        return [[-hr, zero, zero, zero],
                [zero, 1 / hr, zero, zero],
                [zero, zero, r * r, zero],
                [zero, zero, zero, r * r * s * s]]

    def domain(x):
        _, r, th, _ = (float(v) for v in x)
        if r <= 0:
            return "r must be positive"
        if not 0 < th < math.pi:
            return "theta must lie in (0, pi)"
        if abs(h(r)) < 1e-12:
            return "h(r) vanishes (horizon)"
        return None

    return ChartMetric("reissner-nordstrom", 4, ("t", "r", "theta", "phi"), comps, domain,
                       {"M": M, "Q": Q, "Lambda": Lam})


def schwarzschild(M: float = 1.0) -> ChartMetric:
    chart = reissner_nordstrom(M, 0.0, 0.0)
    return ChartMetric("schwarzschild", 4, chart.coords, chart.components, chart.domain,
                       {"M": M})


def flat(n: int = 4, lorentzian: bool = True) -> ChartMetric:
    """Constant diagonal metric ``diag(-1, 1, ..., 1)`` (or all ``+1``)."""
    n = int(n)
    sig = [-1.0 if (i == 0 and lorentzian) else 1.0 for i in range(n)]

    def comps(x):
        zero = 0 * x[0]
        return [[zero + sig[a] if a == b else zero for b in range(n)] for a in range(n)]

    return ChartMetric("flat", n, tuple(f"x{i}" for i in range(n)), comps,
                       params={"n": n, "lorentzian": lorentzian})


def sphere(radius: float = 1.0) -> ChartMetric:
    """Round 2-sphere ``a^2 (dtheta^2 + sin^2 theta dphi^2)``."""
    a2 = radius * radius

    def comps(x):
        th, _ = x
        s = sin(th)
        zero = 0 * th
        return [[zero + a2, zero], [zero, a2 * s * s]]

    return ChartMetric("sphere", 2, ("theta", "phi"), comps, _polar_domain(0),
                       {"radius": radius})


def sphere_line(radius: float = 1.0) -> ChartMetric:
    """Product ``S^2(radius) x R`` in (theta, phi, z)."""
    a2 = radius * radius

    def comps(x):
        th, _, _ = x
        s = sin(th)
        zero = 0 * th
        return [[zero + a2, zero, zero], [zero, a2 * s * s, zero], [zero, zero, zero + 1]]

    return ChartMetric("sphere-line", 3, ("theta", "phi", "z"), comps, _polar_domain(0),
                       {"radius": radius})


def _polar_domain(pos: int):
    def domain(x):
        th = float(x[pos])
        return None if 0 < th < math.pi else "theta must lie in (0, pi)"
    return domain


CHARTS = {
    "reissner-nordstrom": reissner_nordstrom,
    "rn": reissner_nordstrom,
    "schwarzschild": schwarzschild,
    "flat": flat,
    "sphere": sphere,
    "sphere-line": sphere_line,
}


def get_chart(name: str, **params) -> ChartMetric:
    try:
        factory = CHARTS[name]
    except KeyError:
        raise UnknownChart(f"unknown chart {name!r}; known: {', '.join(CHARTS)}") from None
    return factory(**params)
