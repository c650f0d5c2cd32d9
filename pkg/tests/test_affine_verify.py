import random

import pytest

from ovlab import suites
from ovlab.affine import ShapeMismatch, Spectrum, from_spectrum
from ovlab.affine_verify import (
    NotTwoQuasiUmbilical, verify_section6, verify_thm71, verify_thm72, verify_thm73,
    verify_universal,
)


def inst_of(*values, basis=None):
    return from_spectrum(Spectrum.from_values(values), basis=basis)


def statuses(rep):
    return {c.check_id: c.status for c in rep}


def assert_pass(rep, *ids):
    for cid in ids:
        found = rep.find(cid)
        assert found, cid
        assert all(c.status == "pass" for c in found), (cid, [c.reason for c in found])


def test_universal_identity_random_basis():
    rng = random.Random(3)
    for n in (3, 4, 5):
        inst = suites.realize(rng, suites.generic(rng, n), True)
        rep = verify_universal(inst)
        assert rep.ok and len(rep) > 0


def test_two_curvature_point():
    rep = verify_section6(inst_of(1, 1, 2, 2))
    assert_pass(rep, "ov.ricci_pseudosymmetry", "ov.partially_einstein", "ov.two_curvature",
                "ov.shifted_square_form", "ov.roter_pseudosymmetry",
                "ov.roter_weyl_commutator", "ov.two_curvature_shifted_square",
                "ov.shifted_square_coefficients")
    assert rep.get("ov.partially_einstein").params["L"] == 2
    assert rep.get("ov.shifted_square_form").params["L"] == 2


def test_quasi_umbilical_point():
    rep = verify_section6(inst_of(3, 1, 1, 1))
    assert rep.get("ov.quasi_umbilical").params["L"] == 3
    assert_pass(rep, "ov.quasi_umbilical", "ov.quasi_umbilical_weyl",
                "ov.quasi_umbilical_ricci_rank", "ov.weyl_criterion")


def test_einstein_star_point():
    rep = verify_section6(inst_of(1, 1, -1, -1))
    assert_pass(rep, "ov.einstein_star_square", "ov.einstein_star_shape_action",
                "ov.einstein_star_pseudosymmetry", "ov.einstein_star_weyl")


def test_literal_einstein_display_disagrees():
    # R*.h vanishes identically while kappa Q(h, S) does not
    rep = verify_section6(inst_of(1, 1, -1, -1))
    assert rep.status_of("ov.einstein_star_shape_action_literal") == "fail"


def test_weyl_criterion_generic_spectrum():
    rep = verify_section6(inst_of(1, 2, 3, 5, 7))
    assert_pass(rep, "ov.weyl_criterion")
    assert rep.get("ov.weyl_criterion").params["weyl_zero"] is False


def test_three_dimensional_guards():
    rep = verify_section6(inst_of(1, 2, 2))
    assert rep.status_of("ov.weyl_criterion") == "skipped"
    assert rep.status_of("ov.two_curvature") == "skipped"


def test_sign_branch_zero_combination_skipped():
    # (k-1) l1 + (n-k-1) l2 = 0 with l1 l2 < 0
    rep = verify_section6(inst_of(1, 1, -1, -1))
    assert rep.status_of("ov.two_curvature_sign_branch") == "skipped"


def test_thm71_nondegenerate():
    rep = verify_thm71(inst_of(2, 3, 1, 1, 1), 1)
    assert rep.ok
    assert rep.get("ov.tqu_tau_forms").status == "pass"


def test_thm71_four_dim():
    rep = verify_thm71(inst_of(1, 1, 2, 2), 2)
    assert rep.ok and len(rep.failures()) == 0


def test_thm71_degenerate_rank():
    rep = verify_thm71(inst_of(-2, 3, 1, 1, 1), 1)
    assert_pass(rep, "ov.tqu_degenerate_rank")


def test_thm71_rejects_other_shapes():
    with pytest.raises(NotTwoQuasiUmbilical):
        verify_thm71(inst_of(1, 2, 3, 4, 5))


def test_thm72_examples():
    rep = verify_thm72(inst_of(2, 3, 0, 0))
    assert rep.ok
    assert rep.get("ov.rank_two_form").params["phi"] == pytest.approx(1 / 6)
    assert verify_thm72(inst_of(1, -1, 0, 0, 0)).ok
    with pytest.raises(ShapeMismatch):
        verify_thm72(inst_of(1, 1, 0, 0))


def test_thm73_examples():
    rep = verify_thm73(inst_of(1, 2, 2, 3, 3))
    assert rep.ok and rep.get("ov.three_rstar_form").params["mu"] == 336
    rep3 = verify_thm73(inst_of(1, 2, 3))
    assert rep3.ok and rep3.status_of("ov.three_low_dim") == "pass"


def test_thm73_mu_zero_branch():
    rng = random.Random(11)
    spec = suites.three_curvature(rng, 5, mu_zero=True)
    rep = verify_thm73(from_spectrum(spec))
    assert rep.status_of("ov.three_partially_einstein_star") == "pass"
    assert rep.status_of("ov.three_rstar_form") == "skipped"


def test_float_section6_agrees_with_exact():
    ex = statuses(verify_section6(inst_of(1, 1, 2, 2)))
    fl = statuses(verify_section6(from_spectrum(Spectrum.from_values([1, 1, 2, 2]), exact=False),
                                  tol=1e-9))
    assert ex == fl
