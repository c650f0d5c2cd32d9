from fractions import Fraction

import pytest

from ovlab.affine import (
    AffineInstance, NotPositiveDefinite, ShapeMismatch, Spectrum, SpectrumUnavailable,
    classify, fit_square, from_spectrum, mu_from_multiplicities, recover_spectrum,
    ricci_spectrum, tau, three_curvature_mu,
)
from ovlab.ops import curv_action, wedge_square
from ovlab.tensors import Sym2


def spec(*pairs):
    return Spectrum.of(pairs)


def test_layout_from_spectrum():
    inst = from_spectrum(spec((1, 2), (2, 2)))
    assert inst.S == Sym2.diag([1, 1, 2, 2])
    assert inst.h == Sym2.identity(4)


def test_proper_and_improper_spheres():
    assert classify(from_spectrum(spec((1, 4)))).has("ProperSphere")
    c = classify(from_spectrum(spec((0, 4))))
    assert c.has("ImproperSphere")


def test_hypersphere_curvature():
    lam = Fraction(3, 2)
    inst = from_spectrum(spec((lam, 5)))
    assert inst.r_star == wedge_square(inst.h) * lam ** 2
    assert inst.ric == inst.h * (4 * lam ** 2)
    assert curv_action(inst.r_star, inst.h, inst.h).is_zero()


def test_ricci_and_scalar_closed_values():
    inst = from_spectrum(spec((1, 2), (2, 2)))
    assert inst.ric == Sym2.diag([5, 5, 8, 8])
    assert inst.ric == inst.S * 3 + inst.h * 2
    assert inst.kappa == 26
    assert from_spectrum(spec((2, 1), (3, 1), (0, 2))).kappa == 12


def test_quasi_umbilical_flag():
    flags = classify(from_spectrum(spec((3, 1), (1, 3))))
    assert [f.get("rho") for f in flags.all("QuasiUmbilical")] == [1]


def test_two_quasi_umbilical_flags():
    c = classify(from_spectrum(spec((1, 2), (2, 2))))
    assert sorted(f.get("rho") for f in c.all("TwoQuasiUmbilical")) == [1, 2]
    assert c.has("AffinePartiallyEinstein")


def test_einstein_star_flag():
    inst = from_spectrum(spec((1, 2), (-1, 2)))
    assert inst.ric == inst.h * -1
    c = classify(inst)
    assert c.has("EinsteinStar") and c.all("EinsteinStar")[0].get("kappa") == -4


def test_generic_flag():
    c = classify(from_spectrum(Spectrum.from_values([1, 2, 3, 5, 7])))
    assert c.names() == ["Generic"]


def test_classification_in_general_basis():
    basis = [[1, 1, 0, 0], [0, 1, 2, 0], [0, 0, 1, -1], [0, 0, 0, 1]]
    inst = from_spectrum(spec((3, 1), (1, 3)), basis=basis)
    c = classify(AffineInstance(inst.h, inst.S))
    assert c.spectrum == Spectrum.of([(1, 3), (3, 1)])
    assert c.has("QuasiUmbilical")


def test_irrational_spectrum_is_indeterminate():
    inst = AffineInstance(Sym2.identity(3), Sym2.from_array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
                          + Sym2.diag([1, 0, 0]))
    with pytest.raises(SpectrumUnavailable):
        recover_spectrum(inst.h, inst.S)
    assert classify(inst).has("Indeterminate")


def test_indefinite_h_rejected():
    with pytest.raises(NotPositiveDefinite):
        AffineInstance(Sym2.diag([1, -1, 1]), Sym2.identity(3))


def test_tau_both_routes():
    assert tau(Spectrum.from_values([2, 3, 1, 1, 1]), 1) == 20
    assert tau(Spectrum.from_values([-2, 3, 1, 1, 1]), 1) == 0
    with pytest.raises(ShapeMismatch):
        tau(Spectrum.from_values([1, 2, 3]))


def test_three_curvature_mu():
    inst = from_spectrum(spec((1, 1), (2, 2), (3, 2)))
    tc = three_curvature_mu(inst)
    assert tc.mu == tc.mu_multiplicity == 336
    assert tc.A == inst.S * 336


def test_three_curvature_low_dimension():
    inst = from_spectrum(spec((1, 1), (2, 1), (3, 1)))
    tc = three_curvature_mu(inst)
    assert tc.alpha == inst.tr and tc.mu == tc.gamma == 6


def test_mu_from_multiplicities_factor():
    assert mu_from_multiplicities(spec((5, 1), (1, 2), (-1, 2))) == -5


def test_fit_square():
    S = Sym2.diag([1, 1, 2, 2])
    assert fit_square(S, Sym2.identity(4)) == (3, -2)


def test_ricci_spectrum():
    assert ricci_spectrum(spec((1, 2), (2, 2))) == spec((5, 2), (8, 2))


def test_scaling():
    inst = from_spectrum(spec((1, 2), (2, 2)))
    s = inst.scaled(Fraction(-1, 3))
    assert s.r_star == inst.r_star * Fraction(1, 9)
    assert s.kappa == inst.kappa / 9


def test_float_mode_classification():
    c = classify(from_spectrum(spec((3, 1), (1, 3)), exact=False), tol=1e-9)
    assert c.has("QuasiUmbilical")
