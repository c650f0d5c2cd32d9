"""Identity batteries for generalized curvature tensors.

Operator-level identities of the Kulkarni-Nomizu / Tachibana calculus, and
the statements about tensors of the form ``phi/2 A^A + mu g^A + eta/2 g^g``
(Roter type), its extension by ``g^A^2``, and rank-two symmetric tensors.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .ops import (
    NoDecomposition, RoterCoefficients, curv_action, decompose,
    extended_basis, extended_expected, kulkarni_nomizu, ricci, roter_tensor, square,
    tachibana, wedge_square, weyl, weyl_extended_expected,
)
from .report import Report
from .tensors import DEFAULT_TOL, Curv4, Sym2, Tensor, combine, einsum, metric_of


class HypothesisViolated(ValueError):
    pass


class PhiZero(ValueError):
    pass


class RankNotTwo(ValueError):
    pass


def _is_zero_scalar(x, tol):
    return x == 0 if isinstance(x, Fraction) else abs(float(x)) <= tol


def _recip(k: int, like):
    return 1 / k if isinstance(like, float) else Fraction(1, k)


def _rank(a: Sym2, tol):
    if a.exact:
        return linalg.rank(a.matrix())
    return linalg.float_rank(a.to_float(), tol)


def bianchi_defect(b: Tensor) -> Tensor:
    """``B_hijk + B_ijhk + B_jhik`` as a plain tensor."""
    return combine([(1, b), (1, einsum("ijhk->hijk", b)), (1, einsum("jhik->hijk", b))],
                   cls=type(einsum("hijk->hijk", b)))


# ---------------------------------------------------------------------------
# operator calculus


def weyl_commutator_expansion(b: Curv4, g) -> tuple[Tensor, Tensor]:
    """Both sides of the component expansion of ``(n-2)(B.Weyl(B) - Weyl(B).B)``.

    The right side is written with ``V_mijk = g^{rs} Ric_mr B_sijk`` and the
    Ricci tensor acted on by ``B``.
    """
    g = metric_of(g)
    n = b.n
    w = weyl(b, g)
    ric = ricci(b, g)
    kappa = ric.trace(g)
    lhs = (curv_action(b, w, g) - curv_action(w, b, g)) * (n - 2)
    V = einsum("mr,rs,sijk->mijk", ric, g.inverse(), b)
    BR = curv_action(b, ric, g)
    out = "hijklm"
    terms = [
        (1, tachibana(ric, b)),
        (-kappa / (n - 1), tachibana(g, b)),
        (1, einsum(f"hl,mijk->{out}", g, V)), (-1, einsum(f"hm,lijk->{out}", g, V)),
        (-1, einsum(f"il,mhjk->{out}", g, V)), (1, einsum(f"im,lhjk->{out}", g, V)),
        (1, einsum(f"jl,mkhi->{out}", g, V)), (-1, einsum(f"jm,lkhi->{out}", g, V)),
        (-1, einsum(f"kl,mjhi->{out}", g, V)), (1, einsum(f"km,ljhi->{out}", g, V)),
        (-1, einsum(f"ij,hklm->{out}", g, BR)), (-1, einsum(f"hk,ijlm->{out}", g, BR)),
        (1, einsum(f"ik,hjlm->{out}", g, BR)), (1, einsum(f"hj,iklm->{out}", g, BR)),
    ]
    return lhs, combine(terms, cls=type(lhs))


def verify_operator_identities(E: Sym2, F: Sym2, g: Sym2, B: Curv4, T: Tensor | None = None,
                               tol: float = DEFAULT_TOL) -> Report:
    """Operator-level identities for symmetric ``E, F``, metric ``g`` and curvature ``B``."""
    rep = Report(tol, {"n": E.n})
    EE = kulkarni_nomizu(E, E)
    EF = kulkarni_nomizu(E, F)
    rep.equal("core.tachibana_wedge", "Q(E, E^F) = -1/2 Q(F, E^E)",
              tachibana(E, EF), tachibana(F, EE) * Fraction(-1, 2))
    rep.equal("core.wedge_tachibana", "E^Q(E,F) = -1/2 Q(F, E^E)",
              kulkarni_nomizu(E, tachibana(E, F)), tachibana(F, EE) * Fraction(-1, 2))
    G = wedge_square(g)
    rep.equal("core.metric_wedge_tachibana", "Q(g, g^E) = -Q(E, G)",
              tachibana(g, kulkarni_nomizu(g, E)), -tachibana(E, G))
    rep.equal("core.mixed_wedge_tachibana", "Q(E, g^E) = -1/2 Q(g, E^E)",
              tachibana(E, kulkarni_nomizu(g, E)), tachibana(g, EE) * Fraction(-1, 2))
    rep.zero("core.wedge_bianchi", "E^F satisfies the first Bianchi identity",
             bianchi_defect(EF))
    rep.zero("core.metric_tachibana_G", "Q(g, G) = 0", tachibana(g, G))
    rep.zero("core.weyl_tracefree", "Ric(Weyl(B)) = 0", ricci(weyl(B, g), g))
    T = B if T is None else T
    rep.equal("core.G_action", "G.T = Q(g, T)", curv_action(G, T, g), tachibana(g, T))
    rep.zero("core.metric_annihilated", "B.g = 0", curv_action(B, g, g))
    if B.n >= 3:
        lhs, rhs = weyl_commutator_expansion(B, g)
        rep.equal("core.weyl_commutator_expansion",
                  "(n-2)(B.Weyl(B) - Weyl(B).B) = Q(Ric,B) - kappa/(n-1) Q(g,B) + g^V terms"
                  " - g (B.Ric) terms, V_mijk = g^{rs} Ric_mr B_sijk", lhs, rhs)
    return rep


# ---------------------------------------------------------------------------
# Q(A, B) = 0


def verify_prop21(A: Sym2, B: Curv4, g, Y, tol: float = DEFAULT_TOL) -> Report:
    """Rank dichotomy for ``Q(A, B) = 0``.

    With ``w = A(., Y)`` and ``rho = w(Y) != 0``: either ``rank A >= 2`` and
    ``B = lam A^A``, or ``A = w (x) w / rho`` and the cyclic sum of ``w`` against
    ``B`` vanishes. In both cases ``B.B = Q(Ric(B), B)``.
    """
    g = metric_of(g)
    if A.is_zero(tol):
        raise HypothesisViolated("A vanishes")
    if not tachibana(A, B).is_zero(tol):
        raise HypothesisViolated("Q(A, B) != 0")
    comps = A.components()
    n = A.n
    w = [sum(comps[i][j] * Y[j] for j in range(n)) for i in range(n)]
    rho = sum(w[i] * Y[i] for i in range(n))
    if _is_zero_scalar(rho, tol):
        raise HypothesisViolated("w(Y) = 0")
    rep = Report(tol, {"n": n, "rho": rho})
    ww = Sym2.from_array([[wi * wj for wj in w] for wi in w], A.exact)
    if _rank(A, tol) >= 2:
        try:
            (lam,) = decompose(B, [kulkarni_nomizu(A, A)], tol)
            rep.holds("prop21.case_i", "A - rho^-1 w(x)w != 0 and B = lambda A^A", True,
                      lam=lam, case="i")
        except NoDecomposition as exc:
            rep.holds("prop21.case_i", "A - rho^-1 w(x)w != 0 and B = lambda A^A", False,
                      str(exc), case="i")
        rep.holds("prop21.rank_one_part", "A - rho^-1 w(x)w != 0",
                  not (A - ww / rho).is_zero(tol))
    else:
        rep.equal("prop21.case_ii", "A = rho^-1 w(x)w", A, ww / rho, case="ii")
        wv = Tensor.from_array(w, A.exact)
        cyc = combine([(1, einsum("x,yzab->xyzab", wv, B)),
                       (1, einsum("y,zxab->xyzab", wv, B)),
                       (1, einsum("z,xyab->xyzab", wv, B))])
        rep.zero("prop21.cyclic", "w(X) B(Y,Z,.,.) + w(Y) B(Z,X,.,.) + w(Z) B(X,Y,.,.) = 0",
                 cyc, case="ii")
    rep.equal("prop21.ricci_pseudosymmetry", "B.B = Q(Ric(B), B)",
              curv_action(B, B, g), tachibana(ricci(B, g), B))
    return rep


def prop21_lambda(rep: Report):
    """The fitted ``lam`` with ``B = lam A^A``, or None in the rank-one case."""
    chk = rep.find("prop21.case_i")
    return chk[0].params.get("lam") if chk else None


# ---------------------------------------------------------------------------
# Roter-type tensors


def verify_prop31(A: Sym2, g, phi, mu, eta, tol: float = DEFAULT_TOL) -> Report:
    """``B = phi/2 A^A + mu g^A + eta/2 g^g`` for an arbitrary symmetric ``A``."""
    g = metric_of(g)
    n = A.n
    B = roter_tensor(A, g, RoterCoefficients(phi, mu, eta))
    rep = Report(tol, {"n": n, "phi": phi, "mu": mu, "eta": eta})
    if _is_zero_scalar(phi, tol):
        if n >= 3:
            rep.zero("prop31.phi_zero_weyl", "phi = 0 implies Weyl(B) = 0", weyl(B, g))
        return rep
    ric = ricci(B, g)
    trA = A.trace(g)
    rep.equal("prop31.square",
              "A^2 = phi^-1 ((phi tr A + (n-2) mu) A + (mu tr A + (n-1) eta) g - Ric(B))",
              square(A, g),
              combine([((phi * trA + (n - 2) * mu) / phi, A),
                       ((mu * trA + (n - 1) * eta) / phi, g), (-1 / phi, ric)], cls=Sym2))
    k = (n - 2) * (mu * mu - phi * eta) / phi
    rep.equal("prop31.action_on_A",
              "B.A = Q(Ric(B) + (n-2)(mu^2 - phi eta)/phi g, A + mu/phi g)",
              curv_action(B, A, g), tachibana(ric + g * k, A + g * (mu / phi)))
    if n >= 3:
        rep.equal("prop31.pseudosymmetry",
                  "B.B = Q(Ric(B), B) + (n-2)(mu^2 - phi eta)/phi Q(g, Weyl(B))",
                  curv_action(B, B, g), tachibana(ric, B) + tachibana(g, weyl(B, g)) * k)
    return rep


def roter_derived(coeffs: RoterCoefficients, n: int, kappa) -> dict:
    """``alpha1, alpha2, L_B, L, L_Weyl`` from Roter coefficients."""
    phi, mu, eta = coeffs.phi, coeffs.mu, coeffs.eta
    if phi == 0:
        raise PhiZero("phi = 0")
    a1 = kappa + ((n - 2) * mu - 1) / phi
    a2 = (mu * kappa + (n - 1) * eta) / phi
    LB = ((n - 2) * (mu * mu - phi * eta) - mu) / phi
    L = LB + mu / phi
    LW = LB + (kappa / (n - 1) - a1) / (n - 2)
    return {"alpha1": a1, "alpha2": a2, "L_B": LB, "L": L, "L_Weyl": LW}


def verify_prop32(B: Curv4, g, coeffs: RoterCoefficients, tol: float = DEFAULT_TOL) -> Report:
    """Every consequence of ``B = phi/2 Ric^Ric + mu g^Ric + eta/2 g^g``."""
    g = metric_of(g)
    n = B.n
    rep = Report(tol, {"n": n, "phi": coeffs.phi, "mu": coeffs.mu, "eta": coeffs.eta})
    ric = ricci(B, g)
    rep.equal("prop32.roter_form", "B = phi/2 Ric(B)^Ric(B) + mu g^Ric(B) + eta/2 g^g",
              B, coeffs.tensor(ric, g))
    if n < 4:
        rep.skip("prop32.battery", "n >= 4", "needs n >= 4")
        return rep
    W = weyl(B, g)
    kappa = ric.trace(g)
    try:
        d = roter_derived(coeffs, n, kappa)
    except PhiZero:
        rep.zero("prop32.phi_zero_weyl", "phi = 0 implies Weyl(B) = 0", W)
        return rep
    if (ric - g * (kappa / n)).is_zero(tol) or W.is_zero(tol):
        rep.skip("prop32.battery", "Ric(B) != kappa/n g and Weyl(B) != 0",
                 "degenerate: point outside U_Ric and U_Weyl, skipped")
        return rep
    a1, a2, LB, L, LW = d["alpha1"], d["alpha2"], d["L_B"], d["L"], d["L_Weyl"]
    phi, mu, eta = coeffs.phi, coeffs.mu, coeffs.eta
    ric2 = square(ric, g)
    tr2 = ric2.trace(g)
    QgB, QgW = tachibana(g, B), tachibana(g, W)
    BB, BW, WB = curv_action(B, B, g), curv_action(B, W, g), curv_action(W, B, g)
    QRW = tachibana(ric, W)
    rep.equal("prop32.ricci_square", "Ric(B)^2 = alpha1 Ric(B) + alpha2 g, "
              "alpha1 = kappa + ((n-2) mu - 1)/phi, alpha2 = (mu kappa + (n-1) eta)/phi",
              ric2, combine([(a1, ric), (a2, g)], cls=Sym2), alpha1=a1, alpha2=a2)
    rep.equal("prop32.pseudosymmetry",
              "B.B = L_B Q(g,B), L_B = ((n-2)(mu^2 - phi eta) - mu)/phi", BB, QgB * LB, L_B=LB)
    rep.equal("prop32.weyl_pseudosymmetry", "B.Weyl(B) = L_B Q(g, Weyl(B))", BW, QgW * LB)
    rep.equal("prop32.ricci_pseudosymmetry", "B.B = Q(Ric(B),B) + L Q(g,Weyl(B)), L = L_B + mu/phi",
              BB, tachibana(ric, B) + QgW * L, L=L)
    rep.equal("prop32.weyl_action",
              "Weyl(B).B = L_Weyl Q(g,B), L_Weyl = L_B + (kappa/(n-1) - alpha1)/(n-2)",
              WB, QgB * LW, L_Weyl=LW)
    rep.equal("prop32.weyl_weyl", "Weyl(B).Weyl(B) = L_Weyl Q(g, Weyl(B))",
              curv_action(W, W, g), QgW * LW)
    inv = _recip(n - 2, mu)
    c1 = (mu - inv) / phi + kappa / (n - 1)
    c2 = mu * (mu - inv) / phi - eta
    rep.equal("prop32.commutator_expansion",
              "B.Weyl(B) - Weyl(B).B = (phi^-1 (mu - 1/(n-2)) + kappa/(n-1)) Q(g,B)"
              " + (phi^-1 mu (mu - 1/(n-2)) - eta) Q(Ric(B), G)",
              BW - WB, combine([(c1, QgB), (c2, tachibana(ric, wedge_square(g)))]))
    rep.equal("prop32.tachibana_weyl",
              "Q(Ric,Weyl) = phi^-1 (1/(n-2) - mu) Q(g,B) + 1/(n-2)(L_B - kappa/(n-1)) Q(g, g^Ric)",
              QRW, combine([(-(c1 - kappa / (n - 1)), QgB),
                            ((LB - kappa / (n - 1)) / (n - 2),
                             tachibana(g, kulkarni_nomizu(g, ric)))]))
    rep.equal("prop32.weyl_commutator",
              "Weyl(B).B - B.Weyl(B) = Q(Ric(B),Weyl(B)) - kappa/(n-1) Q(g,Weyl(B))",
              WB - BW, QRW - QgW * (kappa / (n - 1)))
    rep.equal("prop32.weyl_anticommutator",
              "Weyl(B).B + B.Weyl(B) = Q(Ric,Weyl) + (L + L_Weyl - 1/((n-2) phi)) Q(g,Weyl)",
              WB + BW, QRW + QgW * (L + LW - 1 / ((n - 2) * phi)))
    rep.scalar("prop32.alpha2_trace", "alpha2 = 1/n (tr Ric(B)^2 - alpha1 kappa)",
               a2, (tr2 - a1 * kappa) / n)
    rep.equal("prop32.shifted_square",
              "Ric^2 - 1/n tr(Ric^2) g = alpha1 (Ric - kappa/n g)",
              ric2 - g * (tr2 / n), (ric - g * (kappa / n)) * a1)
    rep.equal("prop32.shifted_cube",
              "Ric^3 - 1/n tr(Ric^2) Ric = alpha1 (Ric^2 - kappa/n Ric)",
              einsum("ik,kl,lj->ij", ric2, g.inverse(), ric, cls=Sym2) - ric * (tr2 / n),
              (ric2 - ric * (kappa / n)) * a1)
    return rep


def verify_prop33(B: Curv4, g, phi, tol: float = DEFAULT_TOL) -> Report:
    """Coefficients forced by the extended forms with ``g^Ric(B)^2``."""
    g = metric_of(g)
    n = B.n
    rep = Report(tol, {"n": n, "phi": phi})
    basis = extended_basis(B, g)
    ric = ricci(B, g)
    try:
        _require_outside_span(square(ric, g), [ric, g], tol)
    except HypothesisViolated as exc:
        rep.skip("prop33.extended", "Ric(B)^2 not a combination of g and Ric(B)", str(exc))
        return rep
    exp = extended_expected(B, g, phi)
    target = combine(list(zip((exp.phi, exp.beta1, exp.beta2, exp.beta3), basis)), cls=Curv4)
    rep.equal("prop33.extended",
              "B = phi/2 Ric^Ric + b1 g^Ric^2 + b2 g^Ric + b3/2 g^g with b1 = phi/(n-2),"
              " b2 = (1 - kappa phi)/(n-2), b3 = ((kappa^2 - tr Ric^2) phi - kappa)/((n-2)(n-1))",
              B, target, beta1=exp.beta1, beta2=exp.beta2, beta3=exp.beta3)
    wexp = weyl_extended_expected(B, g, phi)
    rep.equal("prop33.weyl_extended",
              "Weyl(B) = phi/2 Ric^Ric + a1 g^Ric^2 + a2 g^Ric + a3/2 g^g with a1 = phi/(n-2),"
              " a2 = -kappa phi/(n-2), a3 = (kappa^2 - tr Ric^2) phi/((n-2)(n-1))",
              weyl(B, g), combine(list(zip(wexp, basis)), cls=Curv4))
    return rep


def _require_outside_span(x: Sym2, span: list[Sym2], tol):
    """Raise HypothesisViolated when ``x`` lies in the span of ``span``."""
    rows = [[s.components()[i][j] for s in span] for i in range(x.n) for j in range(i, x.n)]
    rhs = [x.components()[i][j] for i in range(x.n) for j in range(i, x.n)]
    try:
        if x.exact:
            linalg.solve(rows, rhs)
        else:
            linalg.float_solve(rows, rhs, tol)
    except linalg.Inconsistent:
        return
    except linalg.Underdetermined:
        pass
    raise HypothesisViolated("Ric(B)^2 is a combination of g and Ric(B)")


# ---------------------------------------------------------------------------
# rank-two symmetric tensors


def verify_prop34(A: Sym2, g, weights=None, seed: int = 0,
                  tol: float = DEFAULT_TOL) -> Report:
    """Relations among ``A, A^2, A^3`` when ``rank A = 2``.

    ``weights`` are ``(phi0, phi2, ..., phi6)`` for the collapse check; when
    omitted they are drawn from a seeded generator.
    """
    g = metric_of(g)
    r = _rank(A, tol)
    if r != 2:
        raise RankNotTwo(f"rank(A) = {r}")
    n = A.n
    rep = Report(tol, {"n": n})
    A2 = square(A, g)
    A3 = einsum("ik,kl,lj->ij", A2, g.inverse(), A, cls=Sym2)
    trA, trA2 = A.trace(g), A2.trace(g)
    d = (trA2 - trA * trA) / 2
    AA = kulkarni_nomizu(A, A)
    rep.equal("prop34.cubic", "A^3 = tr(A) A^2 + 1/2 (tr(A^2) - tr(A)^2) A",
              A3, combine([(trA, A2), (d, A)], cls=Sym2))
    rep.equal("prop34.mixed_wedge", "A^A^2 = 1/2 tr(A) A^A",
              kulkarni_nomizu(A, A2), AA * (trA / 2))
    rep.equal("prop34.square_wedge", "A^2^A^2 = -1/2 (tr(A^2) - tr(A)^2) A^A",
              kulkarni_nomizu(A2, A2), AA * -d)
    C = A2 - A * trA
    rep.equal("prop34.shifted_wedge", "(A^2 - tr(A) A)^(A^2 - tr(A) A) = -1/2 (tr(A^2) - tr(A)^2) A^A",
              kulkarni_nomizu(C, C), AA * -d)
    if weights is None:
        rng = random.Random(f"prop34/{seed}/{n}")
        weights = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(6)]
        if not A.exact:
            weights = [float(w) for w in weights]
    p0, p2, p3, p4, p5, p6 = weights
    G = wedge_square(g)
    gA, gA2 = kulkarni_nomizu(g, A), kulkarni_nomizu(g, A2)
    T = combine([(p0, AA / 2), (p2, gA), (p3, G), (p4, gA2),
                 (p5, kulkarni_nomizu(A, A2)), (p6, kulkarni_nomizu(A2, A2) / 2)], cls=Curv4)
    p1 = p0 + trA * p5 - d * p6
    rep.equal("prop34.collapse",
              "phi0/2 A^A + ... + phi6/2 A^2^A^2 = phi1/2 A^A + phi2 g^A + phi3 G + phi4 g^A^2,"
              " phi1 = phi0 + tr(A) phi5 - 1/2 (tr(A^2) - tr(A)^2) phi6",
              T, combine([(p1, AA / 2), (p2, gA), (p3, G), (p4, gA2)], cls=Curv4), phi1=p1)
    return rep


__all__ = [
    "HypothesisViolated", "PhiZero", "RankNotTwo", "bianchi_defect", "prop21_lambda",
    "roter_derived", "verify_operator_identities", "verify_prop21", "verify_prop31",
    "verify_prop32", "verify_prop33", "verify_prop34", "weyl_commutator_expansion",
]
