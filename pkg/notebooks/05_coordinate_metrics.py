# %% [markdown]
# # Curvature of coordinate metrics
#
# Metric components are evaluated on second-order jets, so Christoffel symbols
# and their derivatives come out without step sizes.

# %%
import math

from ovlab.metric import (
    christoffel, curvature_at, get_chart, rn_roter_coefficients, roter_residual, verify_point,
)

schw = get_chart("schwarzschild", M=1.0)
print("Gamma^r_tt at r = 3:", christoffel(schw, [0.0, 3.0, 1.0, 0.0])[1, 0, 0])
_, _, ric, _ = curvature_at(schw, [0.0, 3.0, 1.0, 0.0])
print("max |Ric| =", ric.max_abs())

# %% [markdown]
# The charged family is of Roter type at every sampled point. The coefficients
# below are solved from the curvature; the closed forms are compared after.

# %%
x = [0.0, 3.0, math.pi / 3, 0.0]
for lam in (0.0, 0.1, -0.1):
    chart = get_chart("reissner-nordstrom", M=1.0, Q=0.5, Lam=lam)
    rep = verify_point(chart, x)
    solved = rep.get("metric.roter_solved")
    closed = roter_residual(chart, x, rn_roter_coefficients(1.0, 0.5, lam, 3.0))
    print(f"Lambda={lam:+.1f} solved residual {solved.residual:.1e}, "
          f"phi={solved.params['phi']:.4f}; closed-form residual {closed:.3e}")
