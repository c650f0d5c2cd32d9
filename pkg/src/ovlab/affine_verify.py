"""Curvature identities of affine instances, one report per family.

Each ``verify_*`` function returns a :class:`~ovlab.report.Report` whose check
ids are stable strings. Hypotheses that do not apply to an instance are
recorded as skipped with a reason rather than silently dropped.
"""

from __future__ import annotations

from fractions import Fraction

from .affine import (
    AffineInstance, NoFit, ShapeMismatch, SpectrumUnavailable, cubic_coefficients,
    fit_square, ricci_spectrum, spectrum_of, sym_rank, tau, three_curvature_mu,
    three_curvature_split, two_quasi_umbilical_split,
)
from .ops import (
    DegenerateDecomposition, NoDecomposition, curv_action, decompose,
    extended_decompose, extended_expected, kulkarni_nomizu, proportionality, ricci,
    roter_decompose, square, tachibana, wedge_square, weyl,
)
from .report import Report
from .tensors import DEFAULT_TOL, Curv4, Sym2, combine


class NotTwoQuasiUmbilical(ValueError):
    pass


def _frac(x, n):
    """``x / n`` keeping exact scalars exact."""
    return x / n if isinstance(x, float) else Fraction(x) / n


def _ident(inst: AffineInstance):
    return {"n": inst.n, "spectrum": str(inst.spectrum) if inst.spectrum else None}


def weyl_commutator(b: Curv4, g: Sym2):
    """Both sides of ``Weyl(B).B - B.Weyl(B) = Q(Ric,Weyl) - kappa/(n-1) Q(g,Weyl)``."""
    w = weyl(b, g)
    ric = ricci(b, g)
    kappa = ric.trace(g)
    lhs = curv_action(w, b, g) - curv_action(b, w, g)
    rhs = tachibana(ric, w) - tachibana(g, w) * _frac(kappa, b.n - 1)
    return lhs, rhs


# ---------------------------------------------------------------------------
# identities valid on every instance


def verify_universal(inst: AffineInstance, tol: float = DEFAULT_TOL,
                     report: Report | None = None) -> Report:
    rep = Report(tol, _ident(inst)) if report is None else report
    h, S, R, ric, n = inst.h, inst.S, inst.r_star, inst.ric, inst.n
    rep.equal("ov.ricci_closed_form", "Ric(R*) = tr(S) S - S^2",
              ric, S * inst.tr - inst.power(2))
    rep.scalar("ov.scalar_closed_form", "kappa(R*) = tr(S)^2 - tr(S^2)",
               inst.kappa, inst.tr ** 2 - inst.tr2)
    rep.equal("ov.ricci_pseudosymmetry", "R*.R* = Q(Ric(R*), R*)",
              curv_action(R, R, h), tachibana(ric, R))
    rep.equal("ov.shape_action", "R*.S = Q(Ric(R*), S)",
              curv_action(R, S, h), tachibana(ric, S))
    rep.zero("ov.metric_action", "R*.h = 0", curv_action(R, h, h))
    if n >= 3:
        rhs = tachibana(ric, R) - kulkarni_nomizu(h, curv_action(R, ric, h)) / (n - 2)
        rep.equal("ov.weyl_action", "R*.Weyl(R*) = Q(Ric(R*), R*) - 1/(n-2) h^(R*.Ric(R*))",
                  curv_action(R, inst.weyl, h), rhs)
    return rep


def verify_scaling(inst: AffineInstance, c, tol: float = DEFAULT_TOL,
                   report: Report | None = None) -> Report:
    rep = Report(tol, _ident(inst)) if report is None else report
    other = inst.scaled(c)
    c2 = c * c
    rep.equal("ov.scaling_rstar", "R*(cS) = c^2 R*(S)", other.r_star, inst.r_star * c2)
    rep.equal("ov.scaling_ricci", "Ric(R*(cS)) = c^2 Ric(R*(S))", other.ric, inst.ric * c2)
    rep.scalar("ov.scaling_scalar", "kappa(R*(cS)) = c^2 kappa(R*(S))",
               other.kappa, inst.kappa * c2)
    return rep


# ---------------------------------------------------------------------------
# two affine principal curvatures and friends


def verify_section6(inst: AffineInstance, tol: float = DEFAULT_TOL) -> Report:
    """All two-curvature-type statements that apply to ``inst``."""
    rep = Report(tol, _ident(inst))
    h, S, R, ric, n = inst.h, inst.S, inst.r_star, inst.ric, inst.n
    verify_universal(inst, tol, rep)

    # two further relations, checked literally; they do not hold in general
    rep.equal("ov.ricci_action_literal", "R*.Ric(R*) = Q(Ric(R*), S)",
              curv_action(R, ric, h), tachibana(ric, S))
    rhs = tachibana(ric, R) - kulkarni_nomizu(h, tachibana(ric, S)) / (n - 2)
    rep.equal("ov.weyl_action_literal",
              "R*.Weyl(R*) = Q(Ric(R*), R*) - 1/(n-2) h^Q(Ric(R*), S)",
              curv_action(R, inst.weyl, h), rhs)

    try:
        spec = spectrum_of(inst, tol)
    except SpectrumUnavailable as exc:
        spec = None
        rep.skip("ov.spectrum", "eigenvalues of the shape operator", str(exc))

    _hyperspheres(inst, spec, rep)
    _weyl_criterion(inst, spec, rep)
    _partially_einstein(inst, rep)
    _quasi_umbilical(inst, spec, rep)
    _roter_points(inst, spec, rep)
    _einstein_star(inst, rep)
    _two_curvatures(inst, spec, rep)
    _starred(inst, spec, rep)
    return rep


def _hyperspheres(inst, spec, rep):
    anchor = "S = lambda h: R* = lambda^2/2 h^h, Ric(R*) = (n-1) lambda^2 h, R*.R* = 0"
    if spec is None or len(spec.distinct) != 1:
        rep.skip("ov.hypersphere", anchor, "shape operator is not a multiple of the identity")
        return
    lam = spec.distinct[0]
    h, R, n = inst.h, inst.r_star, inst.n
    rep.equal("ov.hypersphere", anchor, R, wedge_square(h) * (lam * lam))
    rep.equal("ov.hypersphere_ricci", "Ric(R*) = (n-1) lambda^2 h", inst.ric,
              h * ((n - 1) * lam * lam))
    rep.zero("ov.hypersphere_semisymmetry", "R*.R* = Q(Ric(R*), R*) = 0",
             curv_action(R, R, h))


def _weyl_criterion(inst, spec, rep):
    anchor = "Weyl(R*) = 0 iff rank(S - rho h) <= 1 for some rho (n >= 4)"
    if inst.n < 4:
        rep.skip("ov.weyl_criterion", anchor, "needs n >= 4")
        return
    if spec is None:
        rep.skip("ov.weyl_criterion", anchor, "spectrum unavailable")
        return
    qu = any(m >= inst.n - 1 for m in spec.multiplicities)
    flat = inst.weyl.is_zero(rep.tol)
    rep.holds("ov.weyl_criterion", anchor, qu == flat,
              f"Weyl(R*) zero: {flat}, quasi-umbilical: {qu}", weyl_zero=flat)


def _partially_einstein(inst, rep):
    anchor = "S^2 + L1 S + L h = 0 implies R*.R* = L Q(h, R*)"
    try:
        a, b = fit_square(inst.S, inst.h, rep.tol)
    except NoFit as exc:
        rep.skip("ov.partially_einstein", anchor, str(exc))
        return
    L = -b
    R, h = inst.r_star, inst.h
    rep.equal("ov.partially_einstein", anchor, curv_action(R, R, h),
              tachibana(h, R) * L, L1=-a, L=L)


def _quasi_umbilical(inst, spec, rep):
    anchor = "R*.R* = L Q(h, R*), L = rho (tr(S) - (n-1) rho)"
    h, S, R, ric, n, tr = inst.h, inst.S, inst.r_star, inst.ric, inst.n, inst.tr
    rhos = [] if spec is None else [v for v in spec.distinct
                                   if sym_rank(S - h * v, rep.tol) == 1]
    if not rhos:
        rep.skip("ov.quasi_umbilical", anchor, "no rho with rank(S - rho h) = 1")
        return
    for rho in rhos:
        L = rho * (tr - (n - 1) * rho)
        rep.equal("ov.quasi_umbilical", anchor, curv_action(R, R, h),
                  tachibana(h, R) * L, rho=rho, L=L)
        quad = combine([(1, inst.power(2)), ((n - 2) * rho - tr, S),
                        (rho * (tr - (n - 1) * rho), h)], cls=Sym2)
        rep.zero("ov.quasi_umbilical_quadratic",
                 "S^2 + ((n-2) rho - tr(S)) S + rho (tr(S) - (n-1) rho) h = 0", quad, rho=rho)
        shift = ric - h * (rho * (tr - rho))
        rep.equal("ov.quasi_umbilical_ricci_shift",
                  "Ric(R*) - rho (tr(S) - rho) h = (n-2) rho (S - rho h)",
                  shift, (S - h * rho) * ((n - 2) * rho), rho=rho)
        rank_anchor = "rho != 0 implies rank(Ric(R*) - rho (tr(S) - rho) h) = 1"
        if rho == 0:
            rep.skip("ov.quasi_umbilical_ricci_rank", rank_anchor, "rho = 0", rho=rho)
        else:
            r = sym_rank(shift, rep.tol)
            rep.holds("ov.quasi_umbilical_ricci_rank", rank_anchor, r == 1, f"rank {r}", rho=rho)
        rep.zero("ov.quasi_umbilical_weyl", "quasi-umbilical implies Weyl(R*) = 0",
                 inst.weyl, rho=rho)


def _ricci_ranks_ok(inst, spec, tol, extra=()):
    """rank(Ric(R*) - rho h) >= 2 for every eigenvalue rho of Ric(R*)."""
    cands = list(ricci_spectrum(spec).distinct) + list(extra)
    return all(sym_rank(inst.ric - inst.h * r, tol) >= 2 for r in cands)


def _roter_points(inst, spec, rep):
    a_shift = "R*.R* = L Q(h, R*) implies R* = phi/2 (Ric(R*) - L h)^(Ric(R*) - L h)"
    a_comm = "Weyl(R*).R* - R*.Weyl(R*) = Q(Ric(R*), Weyl(R*)) - kappa/(n-1) Q(h, Weyl(R*))"
    a_roter = "R* Roter type implies R*.R* = ((n-2)(mu^2 - phi eta) - mu)/phi Q(h, R*)"
    ids = ("ov.shifted_square_form", "ov.roter_weyl_commutator", "ov.roter_pseudosymmetry")
    anchors = (a_shift, a_comm, a_roter)

    def skip_all(reason):
        for cid, anc in zip(ids, anchors):
            rep.skip(cid, anc, reason)

    h, R, ric, n = inst.h, inst.r_star, inst.ric, inst.n
    if n < 4:
        return skip_all("needs n >= 4")
    if spec is None:
        return skip_all("spectrum unavailable")
    if (ric - h * _frac(inst.kappa, n)).is_zero(rep.tol):
        return skip_all("Ric(R*) is proportional to h")
    if inst.weyl.is_zero(rep.tol):
        return skip_all("Weyl(R*) vanishes")
    prop = proportionality(curv_action(R, R, h), tachibana(h, R), rep.tol)
    if prop.kind != "coefficient":
        return skip_all("R*.R* is not a multiple of Q(h, R*)")
    L = prop.coefficient
    if not _ricci_ranks_ok(inst, spec, rep.tol, (L,)):
        return skip_all("rank(Ric(R*) - rho h) < 2 for some rho")

    shifted = ric - h * L
    try:
        (phi,) = decompose(R, [wedge_square(shifted)], rep.tol)
        rep.holds(ids[0], a_shift, True, L=L, phi=phi)
    except (NoDecomposition, DegenerateDecomposition) as exc:
        rep.holds(ids[0], a_shift, False, str(exc), L=L)
        phi = None
    lhs, rhs = weyl_commutator(R, h)
    rep.equal(ids[1], a_comm, lhs, rhs)
    try:
        c = roter_decompose(R, h, rep.tol)
    except (NoDecomposition, DegenerateDecomposition) as exc:
        rep.skip(ids[2], a_roter, f"no Roter decomposition: {exc}")
        return
    coeff = ((n - 2) * (c.mu ** 2 - c.phi * c.eta) - c.mu) / c.phi
    rep.equal(ids[2], a_roter, curv_action(R, R, h), tachibana(h, R) * coeff,
              phi=c.phi, mu=c.mu, eta=c.eta, L=coeff)
    if phi is not None:
        ok = all(_close(x, y, rep.tol) for x, y in
                 ((c.phi, phi), (c.mu, -phi * L), (c.eta, phi * L * L)))
        rep.holds("ov.shifted_square_coefficients",
                  "phi/2 (Ric - L h)^(Ric - L h): mu = -phi L, eta = phi L^2", ok,
                  f"Roter ({c.phi}, {c.mu}, {c.eta}) vs shift phi={phi}, L={L}")


def _close(a, b, tol):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= tol * max(1.0, abs(float(a)), abs(float(b)))


def _einstein_star(inst, rep):
    h, S, R, ric, n, tr = inst.h, inst.S, inst.r_star, inst.ric, inst.n, inst.tr
    kappa = inst.kappa
    ids = {
        "ov.einstein_star_square":
            "S^2 - tr(S^2)/n h = tr(S) (S - tr(S)/n h)",
        "ov.einstein_star_shape_action_literal":
            "kappa(R*) (R*.h - Q(h, S)) = 0",
        "ov.einstein_star_shape_action":
            "R*.S = kappa(R*)/n Q(h, S)",
        "ov.einstein_star_pseudosymmetry":
            "R*.R* = kappa(R*)/n Q(h, R*)",
        "ov.einstein_star_weyl":
            "Weyl(R*) = 1/2 S^S - kappa(R*)/(2 (n-1) n) h^h",
    }
    if not (ric - h * _frac(kappa, n)).is_zero(rep.tol):
        for cid, anc in ids.items():
            rep.skip(cid, anc, "not Einstein*: Ric(R*) is not proportional to h")
        return
    k_n = _frac(kappa, n)
    rep.equal("ov.einstein_star_square", ids["ov.einstein_star_square"],
              inst.power(2) - h * _frac(inst.tr2, n), (S - h * _frac(tr, n)) * tr)
    rep.zero("ov.einstein_star_shape_action_literal",
             ids["ov.einstein_star_shape_action_literal"],
             (curv_action(R, h, h) - tachibana(h, S)) * kappa, kappa=kappa)
    rep.equal("ov.einstein_star_shape_action", ids["ov.einstein_star_shape_action"],
              curv_action(R, S, h), tachibana(h, S) * k_n)
    rep.equal("ov.einstein_star_pseudosymmetry", ids["ov.einstein_star_pseudosymmetry"],
              curv_action(R, R, h), tachibana(h, R) * k_n)
    rep.equal("ov.einstein_star_weyl", ids["ov.einstein_star_weyl"], inst.weyl,
              R - wedge_square(h) * _frac(kappa, (n - 1) * n))


def _two_curvatures(inst, spec, rep):
    anchor = "two principal curvatures: R*.R* = lambda1 lambda2 Q(h, R*)"
    n = inst.n
    if spec is None or len(spec.entries) != 2:
        rep.skip("ov.two_curvature", anchor, "not exactly two distinct eigenvalues")
        return
    (l1, k), (l2, _) = spec.entries
    h, S, R, ric = inst.h, inst.S, inst.r_star, inst.ric
    P = l1 * l2
    c = (k - 1) * l1 + (n - k - 1) * l2
    params = {"lambda1": l1, "lambda2": l2, "k": k}
    if n < 4:
        rep.skip("ov.two_curvature", anchor, "needs n >= 4", **params)
    else:
        rep.equal("ov.two_curvature", anchor, curv_action(R, R, h), tachibana(h, R) * P,
                  **params)
    rep.zero("ov.two_curvature_quadratic",
             "S^2 - (lambda1 + lambda2) S + lambda1 lambda2 h = 0",
             combine([(1, inst.power(2)), (-(l1 + l2), S), (P, h)], cls=Sym2), **params)
    rep.equal("ov.two_curvature_ricci",
              "Ric(R*) = ((k-1) lambda1 + (n-k-1) lambda2) S + lambda1 lambda2 h",
              ric, combine([(c, S), (P, h)], cls=Sym2), **params)
    rep.scalar("ov.two_curvature_scalar",
               "kappa(R*) = k(k-1) l1^2 + (n-k)(n-k-1) l2^2 + 2k(n-k) l1 l2",
               inst.kappa,
               k * (k - 1) * l1 ** 2 + (n - k) * (n - k - 1) * l2 ** 2 + 2 * k * (n - k) * P,
               **params)
    if k == 1 or k == n - 1:
        rep.zero("ov.two_curvature_weyl", "k = 1 or k = n-1 implies Weyl(R*) = 0",
                 inst.weyl, **params)
    a_shift = ("2 <= k <= n-2, (k-1) l1 + (n-k-1) l2 != 0 implies "
               "R* = phi/2 (Ric - l1 l2 h)^(Ric - l1 l2 h), phi = ((k-1) l1 + (n-k-1) l2)^-2")
    if n < 4 or not 2 <= k <= n - 2:
        rep.skip("ov.two_curvature_shifted_square", a_shift, "needs 2 <= k <= n-2", **params)
    elif c == 0:
        rep.skip("ov.two_curvature_shifted_square", a_shift,
                 "(k-1) lambda1 + (n-k-1) lambda2 = 0", **params)
    else:
        phi = 1 / (c * c)
        shifted = ric - h * P
        rep.equal("ov.two_curvature_shifted_square", a_shift, R,
                  wedge_square(shifted) * phi, phi=phi, **params)
        generic = not inst.weyl.is_zero(rep.tol) and not (
            ric - h * _frac(inst.kappa, n)).is_zero(rep.tol)
        rep.holds("ov.two_curvature_generic_point",
                  "Weyl(R*) != 0 and Ric(R*) - kappa/n h != 0", generic,
                  "point is not in U_Ric and U_Weyl", **params)
    _sign_branches(inst, spec, rep, l1, l2, k, c, params)
    a4 = "n = 4, multiplicities 2 and 2 implies 2-quasi-umbilical"
    if n == 4 and k == 2:
        ok = sym_rank(S - h * l1, rep.tol) == 2 and sym_rank(S - h * l2, rep.tol) == 2
        rep.holds("ov.two_curvature_four_dim", a4, ok, "rank(S - lambda h) != 2", **params)


def _sign_branches(inst, spec, rep, l1, l2, k, c, params):
    anchor = ("multiplicities >= 2 and (l1 l2 > 0 | l1 l2 < 0 | exactly one zero) implies "
              "(k-1) l1 + (n-k-1) l2 != 0 and the shifted square form")
    n = inst.n
    if n < 4 or min(spec.multiplicities) < 2:
        rep.skip("ov.two_curvature_sign_branch", anchor, "needs multiplicities >= 2", **params)
        return
    P = l1 * l2
    branch = "product_positive" if P > 0 else "product_negative" if P < 0 else "one_zero"
    if c != 0:
        rep.holds("ov.two_curvature_sign_branch", anchor, True, branch=branch, **params)
    elif branch == "product_negative":
        rep.skip("ov.two_curvature_sign_branch", anchor,
                 "the lambda1 lambda2 < 0 alternative admits (k-1) l1 + (n-k-1) l2 = 0; "
                 "no reading of it is preferred", branch=branch, **params)
    else:
        rep.holds("ov.two_curvature_sign_branch", anchor, False,
                  "(k-1) lambda1 + (n-k-1) lambda2 = 0", branch=branch, **params)


def _starred(inst, spec, rep):
    from .identities import verify_prop34

    h, ric, n = inst.h, inst.ric, inst.n
    if spec is None:
        return
    if (ric - h * _frac(inst.kappa, n)).is_zero(rep.tol):
        return
    for rho in ricci_spectrum(spec).distinct:
        r = sym_rank(ric - h * rho, rep.tol)
        if r == 1:
            try:
                fit = fit_square(ric, h, rep.tol)
                rep.holds("ov.quasi_umbilical_star",
                          "rank(Ric(R*) - rho h) = 1 implies Ric^2 = rho1 Ric + rho2 h",
                          True, rho=rho, rho1=fit[0], rho2=fit[1])
            except NoFit as exc:
                rep.holds("ov.quasi_umbilical_star",
                          "rank(Ric(R*) - rho h) = 1 implies Ric^2 = rho1 Ric + rho2 h",
                          False, str(exc), rho=rho)
            rep.skip("ov.quasi_umbilical_star_wedge_display",
                     "(Ric(R*) - rho h)^(Ric(R*) - rho h) = 1",
                     "a (0,4) tensor set equal to the scalar 1 cannot be checked",
                     rho=rho)
        elif r == 2:
            sub = verify_prop34(ric - h * rho, h, tol=rep.tol)
            for chk in sub:
                chk.check_id = "ov.two_quasi_umbilical_star." + chk.check_id.split(".", 1)[1]
                chk.params = {**rep.params, **chk.params, "rho": rho}
                rep.checks.append(chk)


# ---------------------------------------------------------------------------
# three principal curvatures


def verify_thm71(inst: AffineInstance, rho=None, tol: float = DEFAULT_TOL) -> Report:
    """Identities of a 2-quasi-umbilical point ``rank(S - rho h) = 2``."""
    n = inst.n
    h, S, R, ric = inst.h, inst.S, inst.r_star, inst.ric
    if rho is None:
        try:
            _, _, rho = two_quasi_umbilical_split(spectrum_of(inst, tol))
        except (ShapeMismatch, SpectrumUnavailable) as exc:
            raise NotTwoQuasiUmbilical(str(exc)) from None
    if n < 4 or sym_rank(S - h * rho, tol) != 2:
        raise NotTwoQuasiUmbilical(f"rank(S - {rho} h) != 2 or n < 4")
    rep = Report(tol, {**_ident(inst), "rho": rho})
    A = S - h * rho
    trA = A.trace(h)
    A2 = square(A, h)
    trA2 = A2.trace(h)
    a1 = trA + (n - 2) * rho
    a2 = rho * (trA + (n - 1) * rho)
    t = (trA ** 2 - trA2) / 2 + (n - 2) * rho * (trA + (n - 2) * rho)
    if inst.spectrum is not None:
        rep.scalar("ov.tqu_tau_forms",
                   "tau = 1/2((trA)^2 - tr A^2) + (n-2) rho (trA + (n-2) rho)"
                   " = (l1 + (n-3) rho)(l2 + (n-3) rho)",
                   t, tau(inst.spectrum, rho), tau=t)
    rep.equal("ov.tqu_ricci", "Ric(R*) = -A^2 + alpha1 A + alpha2 h",
              ric, combine([(-1, A2), (a1, A), (a2, h)], cls=Sym2), alpha1=a1, alpha2=a2)
    C = ric - h * a2
    CC = kulkarni_nomizu(C, C)
    rep.equal("ov.tqu_wedge_square", "(Ric(R*) - alpha2 h)^(Ric(R*) - alpha2 h) = tau A^A",
              CC, kulkarni_nomizu(A, A) * t, tau=t)
    hA = kulkarni_nomizu(h, A)
    hh = kulkarni_nomizu(h, h)
    rep.equal("ov.tqu_rstar_form", "R* = 1/2 A^A + rho h^A + rho^2/2 h^h",
              R, combine([(Fraction(1, 2), kulkarni_nomizu(A, A)), (rho, hA),
                          (rho * rho / 2, hh)], cls=Curv4))
    rk = sym_rank(C, rep.tol)
    nonzero = ("ov.tqu_rank", "ov.tqu_rstar_ricci_form", "ov.tqu_shape_from_ricci",
               "ov.tqu_scaled_rstar", "ov.tqu_shifted_ricci", "ov.tqu_shifted_scalar",
               "ov.tqu_shifted_form", "ov.tqu_extended_form", "ov.tqu_weyl_form",
               "ov.tqu_extended_solver", "ov.tqu_weyl_commutator")
    if t == 0 or (isinstance(t, float) and abs(t) <= tol):
        rep.holds("ov.tqu_degenerate_rank", "tau = 0 implies rank(Ric(R*) - alpha2 h) <= 1",
                  rk <= 1, f"rank {rk}", rank=rk)
        for cid in nonzero:
            rep.skip(cid, "tau != 0 branch", "tau = 0")
        return rep
    rep.skip("ov.tqu_degenerate_rank", "tau = 0 implies rank(Ric(R*) - alpha2 h) <= 1",
             "tau != 0")
    ti = 1 / t
    rep.holds("ov.tqu_rank", "tau != 0 implies rank(Ric(R*) - alpha2 h) >= 2", rk >= 2,
              f"rank {rk}", rank=rk)
    rep.equal("ov.tqu_rstar_ricci_form",
              "R* = 1/(2 tau) (Ric - alpha2 h)^(Ric - alpha2 h) + rho h^A + rho^2/2 h^h",
              R, combine([(ti / 2, CC), (rho, hA), (rho * rho / 2, hh)], cls=Curv4))
    kappa = inst.kappa
    C2 = square(C, h)
    rep.equal("ov.tqu_shape_from_ricci",
              "(n-2) rho A = (1 - (kappa - n alpha2)/tau)(Ric - alpha2 h) + 1/tau (Ric - alpha2 h)^2",
              A * ((n - 2) * rho), combine([(1 - ti * (kappa - n * a2), C), (ti, C2)], cls=Sym2))
    rep.equal("ov.tqu_scaled_rstar",
              "(n-2) tau R* = (n-2)/2 C^C + (n-2) tau rho^2/2 h^h + (tau - kappa + n alpha2) h^C"
              " + h^C^2, C = Ric - alpha2 h",
              R * ((n - 2) * t),
              combine([(Fraction(n - 2, 2), CC), ((n - 2) * t * rho * rho / 2, hh),
                       (t - kappa + n * a2, kulkarni_nomizu(h, C)),
                       (1, kulkarni_nomizu(h, C2))], cls=Curv4))
    B = R - hh * _frac(a2, 2 * (n - 1))
    ric_b = ricci(B, h)
    kappa_b = ric_b.trace(h)
    rep.equal("ov.tqu_shifted_ricci", "Ric(B) = Ric(R*) - alpha2 h, B = R* - alpha2/(2(n-1)) h^h",
              ric_b, C)
    rep.scalar("ov.tqu_shifted_scalar", "kappa(B) = kappa(R*) - n alpha2", kappa_b,
               kappa - n * a2)
    rep.equal("ov.tqu_shifted_form",
              "(n-2) tau B = (n-2)/2 Ric(B)^Ric(B) + h^Ric(B)^2 + (tau - kappa(B)) h^Ric(B)"
              " + (n-2) tau/2 (rho^2 - alpha2/(n-1)) h^h",
              B * ((n - 2) * t),
              combine([(Fraction(n - 2, 2), kulkarni_nomizu(ric_b, ric_b)),
                       (1, kulkarni_nomizu(h, square(ric_b, h))),
                       (t - kappa_b, kulkarni_nomizu(h, ric_b)),
                       ((n - 2) * t / 2 * (rho * rho - _frac(a2, n - 1)), hh)], cls=Curv4))
    coeffs = extended_expected(B, h, ti)
    basis = [wedge_square(ric_b), kulkarni_nomizu(h, square(ric_b, h)),
             kulkarni_nomizu(h, ric_b), wedge_square(h)]
    rep.equal("ov.tqu_extended_form",
              "B = phi/2 Ric(B)^Ric(B) + phi/(n-2) h^Ric(B)^2 + (1 - kappa(B) phi)/(n-2) h^Ric(B)"
              " + ((kappa(B)^2 - tr Ric(B)^2) phi - kappa(B))/(2(n-2)(n-1)) h^h, phi = 1/tau",
              B, combine(list(zip((coeffs.phi, coeffs.beta1, coeffs.beta2, coeffs.beta3),
                                  basis)), cls=Curv4), phi=ti)
    tr_b2 = square(ric_b, h).trace(h)
    rep.equal("ov.tqu_weyl_form",
              "Weyl(B) = phi (1/2 Ric(B)^Ric(B) + 1/(n-2) h^Ric(B)^2 - kappa(B)/(n-2) h^Ric(B)"
              " + (kappa(B)^2 - tr Ric(B)^2)/(2(n-2)(n-1)) h^h)",
              weyl(B, h),
              combine([(ti, basis[0]), (_frac(ti, n - 2), basis[1]),
                       (-_frac(ti * kappa_b, n - 2), basis[2]),
                       (_frac(ti * (kappa_b ** 2 - tr_b2), (n - 2) * (n - 1)), basis[3])],
                      cls=Curv4))
    rep.equal("ov.tqu_weyl_shift_invariant", "Weyl(B) = Weyl(R*)", weyl(B, h), inst.weyl)
    a_solver = "extended decomposition of B recovers phi = 1/tau and beta1..beta3"
    try:
        fit_square(ric_b, h, rep.tol)
        rep.skip("ov.tqu_extended_solver", a_solver,
                 "Ric(B)^2 is a combination of h and Ric(B)")
    except NoFit:
        try:
            got = extended_decompose(B, h, rep.tol)
            ok = all(_close(x, y, rep.tol) for x, y in zip(
                (got.phi, got.beta1, got.beta2, got.beta3),
                (coeffs.phi, coeffs.beta1, coeffs.beta2, coeffs.beta3)))
            rep.holds("ov.tqu_extended_solver", a_solver, ok, f"solver gave {got}")
        except (NoDecomposition, DegenerateDecomposition) as exc:
            rep.holds("ov.tqu_extended_solver", a_solver, False, str(exc))
    a_comm = ("Ric(R*)^2 = rho1 Ric(R*) + rho2 h implies Weyl(R*).R* - R*.Weyl(R*) = "
              "Q(Ric(R*), Weyl(R*)) - kappa/(n-1) Q(h, Weyl(R*))")
    try:
        fit_square(ric, h, rep.tol)
    except NoFit as exc:
        rep.skip("ov.tqu_weyl_commutator", a_comm, f"not partially Einstein*: {exc}")
    else:
        lhs, rhs = weyl_commutator(R, h)
        rep.equal("ov.tqu_weyl_commutator", a_comm, lhs, rhs)
    return rep


def verify_thm72(inst: AffineInstance, tol: float = DEFAULT_TOL) -> Report:
    """Spectrum ``(l1, l2, 0, ..., 0)`` with ``l1 != l2`` both nonzero."""
    spec = spectrum_of(inst, tol)
    n = inst.n
    zero = 0.0 if not spec.exact else Fraction(0)
    if n < 4 or spec.multiplicity(zero) != n - 2 or len(spec.entries) != 3:
        raise ShapeMismatch("need spectrum (l1, l2, 0^(n-2)) with l1 != l2 nonzero, n >= 4")
    l1, l2 = [v for v in spec.distinct if v != 0]
    rep = Report(tol, _ident(inst))
    h, S, R, ric, W = inst.h, inst.S, inst.r_star, inst.ric, inst.weyl
    kappa = inst.kappa
    phi = 1 / (l1 * l2)
    rep.equal("ov.rank_two_form", "R* = phi/2 Ric(R*)^Ric(R*), phi = 1/(lambda1 lambda2)",
              R, wedge_square(ric) * phi, phi=phi)
    rep.scalar("ov.rank_two_scalar", "kappa(R*) = 2/phi", kappa, 2 / phi)
    rep.equal("ov.rank_two_ricci_square", "Ric(R*)^2 = kappa(R*)/2 Ric(R*)",
              square(ric, h), ric * (kappa / 2))
    rep.zero("ov.rank_two_semisymmetry", "R*.R* = 0", curv_action(R, R, h))
    rep.zero("ov.rank_two_weyl_semisymmetry", "R*.Weyl(R*) = 0", curv_action(R, W, h))
    rep.equal("ov.rank_two_weyl_action",
              "Weyl(R*).R* = Q(Ric(R*) - kappa/(n-1) h, Weyl(R*))",
              curv_action(W, R, h), tachibana(ric - h * _frac(kappa, n - 1), W))
    rep.equal("ov.rank_two_weyl_pseudosymmetry",
              "Weyl(R*).Weyl(R*) = -(n-3) kappa/(2(n-2)(n-1)) Q(h, Weyl(R*))",
              curv_action(W, W, h),
              tachibana(h, W) * _frac(-(n - 3) * kappa, 2 * (n - 2) * (n - 1)))
    lhs, rhs = weyl_commutator(R, h)
    rep.equal("ov.rank_two_weyl_commutator",
              "Weyl(R*).R* - R*.Weyl(R*) = Q(Ric(R*), Weyl(R*)) - kappa/(n-1) Q(h, Weyl(R*))",
              lhs, rhs)
    rep.equal("ov.rank_two_ricci_wedge",
              "Ric(R*)^Ric(R*) = 1/2 (tr(S)^2 - tr(S^2)) S^S",
              kulkarni_nomizu(ric, ric), kulkarni_nomizu(S, S) * ((inst.tr ** 2 - inst.tr2) / 2))
    rep.scalar("ov.rank_two_tau", "rho = 0 implies tau = lambda1 lambda2",
               tau(spec, zero), l1 * l2)
    return rep


def verify_thm73(inst: AffineInstance, tol: float = DEFAULT_TOL) -> Report:
    """Three distinct principal curvatures with multiplicities (1, n1, n2)."""
    spec = spectrum_of(inst, tol)
    three_curvature_split(spec)
    tc = three_curvature_mu(inst, tol)
    rep = Report(tol, _ident(inst))
    h, S, R, ric, n, tr = inst.h, inst.S, inst.r_star, inst.ric, inst.n, inst.tr
    al, be, ga = tc.alpha, tc.beta, tc.gamma
    S2, S3, S4 = inst.power(2), inst.power(3), inst.power(4)
    rep.equal("ov.three_cubic", "S^3 = alpha S^2 + beta S + gamma h",
              S3, combine([(al, S2), (be, S), (ga, h)], cls=Sym2))
    rep.equal("ov.three_quartic",
              "S^4 = (alpha^2 + beta) S^2 + (alpha beta + gamma) S + alpha gamma h",
              S4, combine([(al * al + be, S2), (al * be + ga, S), (al * ga, h)], cls=Sym2))
    rep.equal("ov.three_ricci_square", "Ric(R*)^2 = S^4 - 2 tr(S) S^3 + tr(S)^2 S^2",
              square(ric, h), combine([(1, S4), (-2 * tr, S3), (tr * tr, S2)], cls=Sym2))
    rep.equal("ov.three_shape_proportional",
              "A = mu S, A = Ric^2 + ((alpha - tr)^2 + beta) Ric - gamma (alpha - 2 tr) h",
              tc.A, S * tc.mu, mu=tc.mu)
    rep.scalar("ov.three_mu_forms",
               "gamma + (alpha - tr)(beta + tr (alpha - tr)) = (l0 + (n1-1) l1 + (n2-1) l2)"
               "(l1 l2 + (n1 l1 + n2 l2)((n1-1) l1 + (n2-1) l2))",
               tc.mu, tc.mu_multiplicity, mu=tc.mu)
    if n == 3:
        ok = _close(al, tr, tol) and _close(tc.mu, ga, tol)
        rep.holds("ov.three_low_dim", "n = 3: alpha = tr(S), mu = gamma", ok,
                  f"alpha={al}, tr={tr}, mu={tc.mu}, gamma={ga}")
    a_pe = "mu = 0 implies Ric(R*)^2 = rho1 Ric(R*) + rho2 h"
    a_form = "mu != 0 implies R* = 1/(2 mu^2) A^A"
    if tc.mu == 0 or (isinstance(tc.mu, float) and abs(tc.mu) <= tol):
        try:
            r1, r2 = fit_square(ric, h, tol)
            rep.holds("ov.three_partially_einstein_star", a_pe, True, rho1=r1, rho2=r2)
        except NoFit as exc:
            rep.holds("ov.three_partially_einstein_star", a_pe, False, str(exc))
        rep.skip("ov.three_rstar_form", a_form, "mu = 0")
    else:
        rep.skip("ov.three_partially_einstein_star", a_pe, "mu != 0")
        rep.equal("ov.three_rstar_form", a_form, R,
                  kulkarni_nomizu(tc.A, tc.A) / (2 * tc.mu * tc.mu), mu=tc.mu)
    return rep


__all__ = [
    "NotTwoQuasiUmbilical", "verify_universal", "verify_scaling", "verify_section6",
    "verify_thm71", "verify_thm72", "verify_thm73", "weyl_commutator",
    "cubic_coefficients",
]
