from fractions import Fraction

import pytest

from ovlab.affine import Spectrum
from ovlab.ops import G_tensor, ricci, wedge_square
from ovlab.spaceform import (
    SpaceFormInstance, gauss_curvature, partially_einstein_expected, partially_einstein_fit,
    verify_gauss, verify_thm81,
)
from ovlab.tensors import Sym2


def test_totally_geodesic():
    g = Sym2.identity(4)
    inst = SpaceFormInstance(g, Sym2.zeros(4), Fraction(2, 3))
    R = gauss_curvature(inst)
    assert R == G_tensor(g) * Fraction(2, 3)
    assert ricci(R, g) == g * 2


def test_umbilical_flat_ambient():
    g = Sym2.identity(3)
    inst = SpaceFormInstance(g, g * 2, 0)
    assert gauss_curvature(inst) == wedge_square(g) * 4
    assert verify_gauss(inst).ok


def test_gauss_identities():
    inst = SpaceFormInstance(Sym2.identity(4), Sym2.diag([1, 2, 3, 0]), 1)
    rep = verify_gauss(inst)
    assert rep.ok and len(rep) == 2


def test_gauss_general_metric():
    g = Sym2.from_array([[2, 1, 0], [1, 2, 0], [0, 0, 1]])
    H = Sym2.from_array([[1, 0, 1], [0, -2, 0], [1, 0, 1]])
    assert verify_gauss(SpaceFormInstance(g, H, Fraction(-1, 2))).ok


def test_thm81_euclidean_ambient():
    spec = Spectrum.of([(1, 1), (2, 2), (3, 2)])
    rep = verify_thm81(SpaceFormInstance.from_spectrum(spec, 0))
    assert rep.ok and rep.get("sf.curvature_form").params["mu"] == 336


def test_thm81_unit_sphere_ambient():
    spec = Spectrum.of([(1, 1), (2, 2), (3, 1)])
    rep = verify_thm81(SpaceFormInstance.from_spectrum(spec, 1))
    assert rep.ok
    assert rep.status_of("sf.mu_forms") == "pass"


def test_thm81_product_family():
    spec = Spectrum.of([(5, 1), (1, 2), (-1, 2)])
    rep = verify_thm81(SpaceFormInstance.from_spectrum(spec, Fraction(1, 3)))
    assert rep.ok and rep.get("sf.curvature_form").params["mu"] == -5


def test_partially_einstein_detection():
    two = SpaceFormInstance.from_spectrum(Spectrum.of([(1, 2), (3, 2)]), 1)
    assert partially_einstein_expected(two)
    assert partially_einstein_fit(two) is not None
    generic = SpaceFormInstance.from_spectrum(Spectrum.from_values([1, 2, 4, 8]), 0)
    assert not partially_einstein_expected(generic)
    assert partially_einstein_fit(generic) is None


def test_float_instance():
    spec = Spectrum.of([(1, 1), (2, 2), (3, 2)])
    rep = verify_thm81(SpaceFormInstance.from_spectrum(spec, 0.5, exact=False), tol=1e-8)
    assert rep.ok


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        SpaceFormInstance(Sym2.identity(3), Sym2.identity(4), 0)
