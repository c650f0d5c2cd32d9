"""Hypersurfaces of Riemannian space forms of constant curvature ``c``."""

from __future__ import annotations

from fractions import Fraction

from .affine import (
    AffineInstance, NoFit, ShapeMismatch, Spectrum, _require_positive_definite,
    cubic_coefficients, fit_square, mu_from_multiplicities, recover_spectrum,
)
from .ops import G_tensor, kulkarni_nomizu, ricci, square, wedge_square
from .report import Report
from .tensors import (
    DEFAULT_TOL, Curv4, DimensionMismatch, Frame, Scalar, Sym2, combine, sym2_power,
)


class SpaceFormInstance:
    """Metric ``g``, second fundamental form ``H`` and ambient curvature ``c``."""

    def __init__(self, g: Sym2, H: Sym2, c, spectrum: Spectrum | None = None):
        if g.n != H.n:
            raise DimensionMismatch("g and H live in different dimensions")
        if g.exact != H.exact or isinstance(c, float):
            g, H, c = g.as_float(), H.as_float(), float(c)
        else:
            c = Fraction(c)
        _require_positive_definite(g)
        self.g, self.H, self.c = g, H, c
        self.spectrum = spectrum
        self.frame = Frame(g.n)

    @classmethod
    def from_spectrum(cls, spec: Spectrum, c=0, exact: bool | None = None):
        exact = spec.exact if exact is None else exact
        if not exact:
            spec = spec.as_float()
        return cls(Sym2.identity(spec.n, exact), Sym2.diag(spec.values, exact), c, spec)

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def exact(self) -> bool:
        return self.g.exact

    def __repr__(self):
        spec = f", spectrum={self.spectrum}" if self.spectrum else ""
        return f"SpaceFormInstance(n={self.n}, c={self.c}{spec})"

    def power(self, p: int) -> Sym2:
        return sym2_power(self.H, self.g, p)

    @property
    def trH(self) -> Scalar:
        return self.H.trace(self.g)


def gauss_curvature(inst: SpaceFormInstance) -> Curv4:
    """``R = 1/2 H^H + c G``."""
    return combine([(1, wedge_square(inst.H)), (inst.c, G_tensor(inst.g))], cls=Curv4)


def verify_gauss(inst: SpaceFormInstance, tol: float = DEFAULT_TOL) -> Report:
    g, H, c, n, tr = inst.g, inst.H, inst.c, inst.n, inst.trH
    rep = Report(tol, {"n": n, "c": c})
    R = gauss_curvature(inst)
    S = ricci(R, g)
    H2, H3, H4 = inst.power(2), inst.power(3), inst.power(4)
    rep.equal("sf.ricci", "S - (n-1) c g = tr(H) H - H^2",
              S - g * ((n - 1) * c), H * tr - H2)
    rep.equal("sf.ricci_square",
              "S^2 - 2(n-1) c S + (n-1)^2 c^2 g = H^4 - 2 tr(H) H^3 + tr(H)^2 H^2",
              combine([(1, square(S, g)), (-2 * (n - 1) * c, S), ((n - 1) ** 2 * c * c, g)],
                      cls=Sym2),
              combine([(1, H4), (-2 * tr, H3), (tr * tr, H2)], cls=Sym2))
    if c == 0:
        rep.equal("sf.flat_ambient", "c = 0: R coincides with 1/2 S^S of the same (h, S)",
                  R, AffineInstance(g, H).r_star)
    return rep


def _spectrum(inst: SpaceFormInstance, tol) -> Spectrum:
    if inst.spectrum is not None:
        return inst.spectrum
    return recover_spectrum(inst.g, inst.H, tol)


def verify_thm81(inst: SpaceFormInstance, tol: float = DEFAULT_TOL) -> Report:
    """Three distinct principal curvatures with multiplicities ``(1, n1, n2)``."""
    spec = _spectrum(inst, tol)
    alpha, beta, gamma = cubic_coefficients(spec)
    g, H, c, n, tr = inst.g, inst.H, inst.c, inst.n, inst.trH
    rep = Report(tol, {"n": n, "c": c, "spectrum": str(spec)})
    R = gauss_curvature(inst)
    S = ricci(R, g)
    H2, H3, H4 = inst.power(2), inst.power(3), inst.power(4)
    rep.equal("sf.cubic", "H^3 = alpha H^2 + beta H + gamma g",
              H3, combine([(alpha, H2), (beta, H), (gamma, g)], cls=Sym2))
    rep.equal("sf.quartic",
              "H^4 = (alpha^2 + beta) H^2 + (alpha beta + gamma) H + alpha gamma g",
              H4, combine([(alpha * alpha + beta, H2), (alpha * beta + gamma, H),
                           (alpha * gamma, g)], cls=Sym2))
    d = alpha - tr
    m = (n - 1) * c
    A = combine([(1, square(S, g)), (d * d + beta - 2 * m, S),
                 (m * m - (beta + d * d) * m - gamma * (alpha - 2 * tr), g)], cls=Sym2)
    mu = gamma + d * (beta + tr * d)
    rep.equal("sf.shape_proportional",
              "A = mu H, A = S^2 + ((alpha - tr H)^2 + beta - 2(n-1)c) S"
              " + ((n-1)^2 c^2 - (beta + (alpha - tr H)^2)(n-1)c - gamma(alpha - 2 tr H)) g",
              A, H * mu, mu=mu)
    rep.scalar("sf.mu_forms",
               "gamma + (alpha - tr H)(beta + tr H (alpha - tr H)) = (l0 + (n1-1) l1 + (n2-1) l2)"
               "(l1 l2 + (n1 l1 + n2 l2)((n1-1) l1 + (n2-1) l2))",
               mu, mu_from_multiplicities(spec), mu=mu)
    a_pe = "mu = 0 implies S^2 = lambda S + mu' g"
    a_form = "mu != 0 implies R = 1/(2 mu^2) A^A + c G"
    if mu == 0 or (isinstance(mu, float) and abs(mu) <= tol):
        try:
            lam, nu = fit_square(S, g, tol)
            rep.holds("sf.partially_einstein", a_pe, True, lam=lam, nu=nu)
        except NoFit as exc:
            rep.holds("sf.partially_einstein", a_pe, False, str(exc))
        rep.skip("sf.curvature_form", a_form, "mu = 0")
    else:
        rep.skip("sf.partially_einstein", a_pe, "mu != 0")
        rep.equal("sf.curvature_form", a_form, R,
                  combine([(1 / (2 * mu * mu), kulkarni_nomizu(A, A)), (c, G_tensor(g))],
                          cls=Curv4), mu=mu)
    return rep


def partially_einstein_expected(inst: SpaceFormInstance, tol: float = DEFAULT_TOL) -> bool:
    """Whether the Ricci operator has at most two distinct eigenvalues."""
    spec = _spectrum(inst, tol)
    tr = spec.trace
    ric = spec.map(lambda v: (inst.n - 1) * inst.c + v * (tr - v))
    return len(ric.distinct) <= 2


def partially_einstein_fit(inst: SpaceFormInstance, tol: float = DEFAULT_TOL):
    """``(lam, nu)`` with ``S^2 = lam S + nu g``, or None.

    An Einstein point ``S = s g`` reports ``(s, 0)``.
    """
    g = inst.g
    S = ricci(gauss_curvature(inst), g)
    s = S.trace(g) / inst.n
    if (S - g * s).is_zero(tol):
        return s, 0 * s
    try:
        return fit_square(S, g, tol)
    except NoFit:
        return None


__all__ = [
    "SpaceFormInstance", "ShapeMismatch", "gauss_curvature", "partially_einstein_expected",
    "partially_einstein_fit", "verify_gauss", "verify_thm81",
]
