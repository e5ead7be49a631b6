import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from confal.catalog import catalog_build
from confal.constructions import (derivation_star, direct_sum,
                                  h_modified_bracket, tensor_tpcsa)
from confal.conformal import AlgebraDef, ProductTable
from confal.gmodule import Element, GradedBasis, ModuleMap
from confal.poly import NVARS, Poly


@st.composite
def poly_strategy(draw, max_terms=5, max_deg=3, n_vars=NVARS):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = [0] * NVARS
        for v in range(n_vars):
            exps[v] = draw(st.integers(0, max_deg))
        num = draw(st.integers(-8, 8))
        den = draw(st.integers(1, 6))
        terms[tuple(exps)] = Fraction(num, den)
    return Poly(terms)


def random_poly(rng: random.Random, max_terms=6, max_deg=4, n_vars=NVARS) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * NVARS
        for v in range(n_vars):
            exps[v] = rng.randint(0, max_deg)
        terms[tuple(exps)] = Fraction(rng.randint(-20, 20), rng.randint(1, 12))
    return Poly(terms)


def rank1_product(c="1") -> AlgebraDef:
    """Rank-1 commutative associative product x o x = c x."""
    basis = GradedBasis(("x",), (0,))
    entries = {}
    cpoly = Poly.const(Fraction(c))
    if cpoly:
        entries[(0, 0)] = Element(basis, {0: cpoly})
    return AlgebraDef(basis, {"circ": ProductTable("circ", basis, entries)},
                      {}, f"rank1 c={c}")


def vir_with_product() -> AlgebraDef:
    vir = catalog_build("vir")
    basis = vir.basis
    circ = ProductTable("circ", basis, {(0, 0): Element(basis, {0: Poly.const(1)})})
    return AlgebraDef(basis, {"circ": circ, "bracket": vir.table("bracket")},
                      {}, "vir with unit product")


def constant_lift() -> AlgebraDef:
    """Constant tables of an ordinary transposed Poisson superalgebra:
    x even with x.x = x, x.y = y, and bracket [x,y] = y on odd y."""
    basis = GradedBasis(("x", "y"), (0, 1))
    one = Poly.const(1)
    circ = ProductTable("circ", basis, {
        (0, 0): Element(basis, {0: one}),
        (0, 1): Element(basis, {1: one}),
        (1, 0): Element(basis, {1: one}),
    })
    bracket = ProductTable("bracket", basis, {
        (0, 1): Element(basis, {1: one}),
        (1, 0): Element(basis, {1: -one}),
    })
    return AlgebraDef(basis, {"circ": circ, "bracket": bracket}, {},
                      "constant lift")


R4_UNIT = {"beta": "2", "gamma": "0", "c": "1"}


@pytest.fixture(scope="session")
def tpcsa_corpus():
    """Verified transposed structures of varied provenance."""
    r4 = catalog_build("r4_tpcsa", R4_UNIT)
    r1 = catalog_build("r1_tpcsa", {"p": "D", "phi": "1"})
    corpus = [
        r4,
        r1,
        catalog_build("r1_tpcsa", {"p": "D", "phi": "s"}),
        catalog_build("r2_tpcsa", {"q": "1", "c": "1"}),
        catalog_build("r3_tpcsa", {"c": "1"}),
        catalog_build("trivial_product", {"of": "ns"}),
        catalog_build("trivial_product", {"of": "r5", "alpha": "1"}),
        vir_with_product(),
        constant_lift(),
        direct_sum(r4, r1),
        tensor_tpcsa(r4, r4),
    ]
    modified = h_modified_bracket(r4.table("circ"), r4.table("bracket"),
                                  r4.basis.generator(0))
    corpus.append(AlgebraDef(r4.basis,
                             {"circ": r4.table("circ"), "bracket": modified},
                             {}, "h-modified r4"))
    return corpus


@pytest.fixture(scope="session")
def star_corpus():
    """Pairs (circ, star) built through even derivations."""
    out = []
    alg = rank1_product("1")
    dmap = ModuleMap.scaling(alg.basis, Poly.D)
    star = derivation_star(alg.table("circ"), dmap)
    out.append(AlgebraDef(alg.basis, {"circ": alg.table("circ"), "star": star},
                          {}, "rank1 derivation star"))
    r4 = catalog_build("r4_tpcsa", R4_UNIT)
    dmap = ModuleMap.scaling(r4.basis, Poly.D)
    star = derivation_star(r4.table("circ"), dmap)
    out.append(AlgebraDef(r4.basis, {"circ": r4.table("circ"), "star": star},
                          {}, "r4 derivation star"))
    lift = constant_lift()
    dmap = ModuleMap.zero(lift.basis)
    star = derivation_star(lift.table("circ"), dmap)
    out.append(AlgebraDef(lift.basis,
                          {"circ": lift.table("circ"), "star": star},
                          {}, "lift zero star"))
    return out
