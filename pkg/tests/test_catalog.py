import random
from fractions import Fraction

import pytest

from confal.axioms import Suite, check_derived_identities, check_suite
from confal.catalog import (CATALOG_NAMES, CatalogError, catalog_build,
                            catalog_list, phi_coefficient)
from confal.conformal import save_algebra
from confal.gmodule import Element
from confal.poly import LAM0, Poly, parse_poly

D, L = Poly.D, Poly.L

LIE_CASES = [
    ("vir", {}),
    ("ns", {}),
    ("current", {"variant": "abelian", "dim": "3"}),
    ("current", {"variant": "solvable2"}),
    ("r1", {"p": "D"}),
    ("r1", {"p": "D^3+2*D"}),
    ("r2", {"q": "1"}),
    ("r2", {"q": "L^2"}),
    ("r3", {}),
    ("r4", {"beta": "2", "gamma": "0"}),
    ("r4", {"beta": "3", "gamma": "1"}),
    ("r4", {"beta": "-1/2", "gamma": "5"}),
    ("r5", {"alpha": "1"}),
    ("r5", {"alpha": "-2/3"}),
]

TPCSA_CASES = [
    ("r1_tpcsa", {"p": "D", "phi": "1"}),
    ("r1_tpcsa", {"p": "D", "phi": "s"}),
    ("r1_tpcsa", {"p": "D", "phi": "t"}),
    ("r1_tpcsa", {"p": "D^2", "phi": "s*t+2"}),
    ("r2_tpcsa", {"q": "1", "c": "2"}),
    ("r2_tpcsa", {"q": "L", "c": "0"}),
    ("r3_tpcsa", {"c": "1"}),
    ("r4_tpcsa", {"beta": "2", "gamma": "0", "c": "1"}),
    ("r4_tpcsa", {"beta": "2", "gamma": "1", "c": "1"}),
    ("r4_tpcsa", {"beta": "3", "gamma": "0", "c": "0"}),
    ("trivial_product", {"of": "r5", "alpha": "1"}),
    ("trivial_product", {"of": "vir"}),
]


@pytest.mark.parametrize("name,params", LIE_CASES)
def test_catalog_lie_algebras(name, params):
    alg = catalog_build(name, params)
    assert check_suite(alg, Suite.LIE).passed


@pytest.mark.parametrize("name,params", TPCSA_CASES)
def test_catalog_tpcsa_families(name, params):
    alg = catalog_build(name, params)
    assert check_suite(alg, Suite.TPCSA).passed
    assert check_derived_identities(alg).passed


def test_vir_table_entry():
    vir = catalog_build("vir")
    assert vir.table("bracket").entry(0, 0) == \
        Element(vir.basis, {0: parse_poly("D+2*L")})


def test_r4_table_entries():
    alg = catalog_build("r4", {"beta": "2", "gamma": "0"})
    b = alg.table("bracket")
    assert b.entry(0, 0) == Element(alg.basis, {0: parse_poly("D+2*L")})
    assert b.entry(0, 1) == Element(alg.basis, {1: parse_poly("D+2*L")})


def test_r1_tpcsa_phi_s_entry():
    alg = catalog_build("r1_tpcsa", {"p": "D", "phi": "s"})
    circ = alg.table("circ")
    assert circ.entry(1, 1) == \
        Element(alg.basis, {0: parse_poly("(D+2*L)*D")})


def test_catalog_names_and_list():
    listed = [name for name, _ in catalog_list()]
    assert listed == list(CATALOG_NAMES)


def test_catalog_unknown_name():
    with pytest.raises(CatalogError):
        catalog_build("w_algebra")


def test_catalog_missing_param():
    with pytest.raises(CatalogError, match="missing"):
        catalog_build("r2", {})
    with pytest.raises(CatalogError, match="missing"):
        catalog_build("r4", {"gamma": "0"})


def test_catalog_param_variable_discipline():
    with pytest.raises(CatalogError, match="forbidden"):
        catalog_build("r1", {"p": "L"})
    with pytest.raises(CatalogError, match="forbidden"):
        catalog_build("r2", {"q": "D"})
    with pytest.raises(CatalogError):
        catalog_build("r1_tpcsa", {"p": "D", "phi": "D"})


def test_r2_tpcsa_guards_nonconstant_q():
    with pytest.raises(CatalogError):
        catalog_build("r2_tpcsa", {"q": "L", "c": "1"})


def test_r4_tpcsa_guards_beta():
    with pytest.raises(CatalogError):
        catalog_build("r4_tpcsa", {"beta": "3", "gamma": "0", "c": "1"})


def test_trivial_product_requires_base():
    with pytest.raises(CatalogError, match="of="):
        catalog_build("trivial_product", {})


def test_phi_coefficient_oddness():
    # (D+2L) Phi(D, (D+2L)^2) flips sign under L -> -D-L for any Phi
    rng = random.Random(11)
    flip = lambda p: p.subst(LAM0, -D - L)
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(0, 5)):
            es, et = rng.randint(0, 3), rng.randint(0, 3)
            terms[(es, et, 0, 0, 0)] = Fraction(rng.randint(-5, 5))
        phi = Poly(terms)
        h = phi_coefficient(phi)
        assert flip(h) == -h


def test_catalog_emission_deterministic():
    a = save_algebra(catalog_build("r4_tpcsa", {"beta": "2", "gamma": "0", "c": "1"}))
    b = save_algebra(catalog_build("r4_tpcsa", {"c": "1", "gamma": "0", "beta": "2"}))
    assert a == b
