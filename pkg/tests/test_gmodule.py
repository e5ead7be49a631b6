import pytest
from hypothesis import given

from confal.gmodule import Element, GradedBasis, ModuleMap, combine
from confal.poly import Poly

from conftest import poly_strategy

D = Poly.D
BASIS = GradedBasis(("x", "y"), (0, 1))


def test_basis_validation():
    with pytest.raises(ValueError):
        GradedBasis((), ())
    with pytest.raises(ValueError):
        GradedBasis(("x", "x"), (0, 0))
    with pytest.raises(ValueError):
        GradedBasis(("a,b",), (0,))
    with pytest.raises(ValueError):
        GradedBasis(("x",), (2,))


def test_combine_examples():
    x = BASIS.generator(0)
    y = BASIS.generator(1)
    assert combine(x, y, 0) == x
    assert not combine(x, x, -1)
    assert combine(x, y, D) == Element(BASIS, {0: Poly.const(1), 1: D})


def test_combine_basis_mismatch():
    other = GradedBasis(("z",), (0,))
    with pytest.raises(ValueError):
        BASIS.generator(0) + other.generator(0)


def test_module_map_examples():
    x = BASIS.generator(0)
    assert ModuleMap.identity(BASIS)(x) == x
    assert ModuleMap.scaling(BASIS, D)(x) == Element(BASIS, {0: D})
    assert not ModuleMap.zero(BASIS)(x + BASIS.generator(1))


def test_module_map_rejects_lambda_entries():
    with pytest.raises(ValueError):
        ModuleMap(BASIS, ((Poly.L, Poly.zero()), (Poly.zero(), Poly.zero())))


def test_module_map_from_dict():
    m = ModuleMap.from_dict(BASIS, {"x": {"x": D}, "y": {"y": D}})
    assert m == ModuleMap.scaling(BASIS, D)
    assert m.entry(0, 0) == D
    assert m.entry(0, 1) == Poly.zero()


@given(poly_strategy(max_deg=2, n_vars=1), poly_strategy(max_deg=2))
def test_map_commutes_with_action(mpoly, coeff):
    # entries are D-only, so m(D a) = D m(a)
    m = ModuleMap.scaling(BASIS, mpoly)
    a = Element(BASIS, {0: coeff, 1: coeff * coeff})
    assert m(a * D) == m(a) * D


def test_homogeneity():
    x, y = BASIS.generator(0), BASIS.generator(1)
    assert x.has_parity(0)
    assert y.has_parity(1)
    assert not (x + y).has_parity(0)
    assert Element.zero(BASIS).has_parity(0)
