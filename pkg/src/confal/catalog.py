"""Built-in parameterized builders for the named rank-1 and rank-(1+1)
algebras and their compatible product families.

Catalog keys take parameters as grammar strings ("--param beta=2" on the
CLI); builders parse and type-check them.  Family polynomials for the odd
square product are written in two placeholder variables s and t, where the
built coefficient is (D+2L) * Phi(D, (D+2L)^2), an odd polynomial in D+2L.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .axioms import PreconditionError
from .conformal import AlgebraDef, ProductTable
from .constructions import current_bracket
from .gmodule import Element, GradedBasis
from .poly import ACTION, LAM0, Poly, PolyParseError, parse_poly

CATALOG_NAMES = ("vir", "ns", "current", "r1", "r2", "r3", "r4", "r5",
                 "r1_tpcsa", "r2_tpcsa", "r3_tpcsa", "r4_tpcsa",
                 "trivial_product")

PHI_VARS = {"s": 0, "t": 1}


class CatalogError(ValueError):
    """Missing or ill-typed catalog parameter."""


def _param(params: Mapping[str, str], key: str, default: str | None = None) -> str:
    if key in params:
        return params[key]
    if default is None:
        raise CatalogError(f"missing parameter {key!r}")
    return default


def _parse(params, key, default=None, allowed=frozenset((ACTION, LAM0)),
           names=None) -> Poly:
    text = _param(params, key, default)
    try:
        p = parse_poly(text, names)
    except PolyParseError as exc:
        raise CatalogError(f"parameter {key!r}: {exc}") from None
    extra = p.variables() - allowed
    if extra:
        raise CatalogError(f"parameter {key!r} uses a forbidden variable")
    return p


def _scalar(params, key, default=None) -> Fraction:
    p = _parse(params, key, default, allowed=frozenset())
    if not p:
        return Fraction(0)
    return p.terms[(0, 0, 0, 0, 0)]


def _rank2() -> GradedBasis:
    return GradedBasis(("x", "y"), (0, 1))


def _elem(basis, name, poly) -> Element:
    return Element(basis, {basis.index(name): poly})


def _bracket(basis, entries) -> ProductTable:
    table = {}
    for (na, nb), elem in entries.items():
        if elem:
            table[(basis.index(na), basis.index(nb))] = elem
    return ProductTable("bracket", basis, table)


def _circ(basis, entries) -> ProductTable:
    table = {}
    for (na, nb), elem in entries.items():
        if elem:
            table[(basis.index(na), basis.index(nb))] = elem
    return ProductTable("circ", basis, table)


def _provenance(name, params) -> str:
    if not params:
        return f"catalog:{name}"
    rendered = " ".join(f"{k}={params[k]}" for k in sorted(params))
    return f"catalog:{name} {rendered}"


def _flip(p: Poly) -> Poly:
    return p.subst(LAM0, -Poly.D - Poly.L)


def phi_coefficient(phi: Poly) -> Poly:
    """(D+2L) * Phi(D, (D+2L)^2) as a polynomial in D and L."""
    shift = Poly.D + 2 * Poly.L
    square = shift * shift
    acc = Poly.zero()
    for exps, coeff in phi.terms.items():
        acc = acc + coeff * (Poly.D ** exps[0]) * (square ** exps[1])
    return shift * acc


def _build_vir(params) -> AlgebraDef:
    basis = GradedBasis(("L",), (0,))
    bracket = _bracket(basis, {("L", "L"): _elem(basis, "L", parse_poly("D+2*L"))})
    return AlgebraDef(basis, {"bracket": bracket}, {}, _provenance("vir", params))


def _build_ns(params) -> AlgebraDef:
    basis = GradedBasis(("L", "G"), (0, 1))
    bracket = _bracket(basis, {
        ("L", "L"): _elem(basis, "L", parse_poly("D+2*L")),
        ("L", "G"): _elem(basis, "G", parse_poly("D+3/2*L")),
        ("G", "L"): _elem(basis, "G", parse_poly("1/2*D+3/2*L")),
        ("G", "G"): _elem(basis, "L", parse_poly("1")),
    })
    return AlgebraDef(basis, {"bracket": bracket}, {}, _provenance("ns", params))


def _build_current(params) -> AlgebraDef:
    variant = _param(params, "variant", "solvable2")
    if variant == "abelian":
        dim = int(_scalar(params, "dim", "2"))
        if dim < 1:
            raise CatalogError("abelian dimension must be positive")
        basis = GradedBasis(tuple(f"e{i}" for i in range(dim)), (0,) * dim)
        out = current_bracket(basis, {})
    elif variant == "solvable2":
        basis = GradedBasis(("e", "f"), (0, 0))
        out = current_bracket(basis, {("e", "f"): {"e": 1},
                                      ("f", "e"): {"e": -1}})
    else:
        raise CatalogError(f"unknown current variant {variant!r}")
    return AlgebraDef(out.basis, out.tables, dict(params),
                      _provenance("current", params))


def _r_bracket(name: str, params) -> ProductTable:
    basis = _rank2()
    if name == "r1":
        p = _parse(params, "p", "D", allowed=frozenset((ACTION,)))
        return _bracket(basis, {("y", "y"): _elem(basis, "x", p)})
    if name == "r2":
        q = _parse(params, "q", None, allowed=frozenset((LAM0,)))
        return _bracket(basis, {
            ("x", "y"): _elem(basis, "y", q),
            ("y", "x"): _elem(basis, "y", -_flip(q)),
        })
    if name == "r3":
        return _bracket(basis, {("x", "x"): _elem(basis, "x", parse_poly("D+2*L"))})
    if name == "r4":
        beta = _scalar(params, "beta")
        gamma = _scalar(params, "gamma", "0")
        xy = Poly.D + beta * Poly.L + Poly.const(gamma)
        return _bracket(basis, {
            ("x", "x"): _elem(basis, "x", parse_poly("D+2*L")),
            ("x", "y"): _elem(basis, "y", xy),
            ("y", "x"): _elem(basis, "y", -_flip(xy)),
        })
    if name == "r5":
        alpha = _scalar(params, "alpha", "1")
        xy = parse_poly("D+3/2*L")
        entries = {
            ("x", "x"): _elem(basis, "x", parse_poly("D+2*L")),
            ("x", "y"): _elem(basis, "y", xy),
            ("y", "x"): _elem(basis, "y", -_flip(xy)),
        }
        if alpha:
            entries[("y", "y")] = _elem(basis, "x", Poly.const(alpha))
        return _bracket(basis, entries)
    raise CatalogError(f"unknown type {name!r}")


def _build_r(name, params) -> AlgebraDef:
    bracket = _r_bracket(name, params)
    return AlgebraDef(bracket.basis, {"bracket": bracket}, dict(params),
                      _provenance(name, params))


def _constant_product(basis, c: Fraction, with_xy: bool) -> ProductTable:
    entries = {}
    if c:
        entries[("x", "x")] = _elem(basis, "x", Poly.const(c))
        if with_xy:
            entries[("x", "y")] = _elem(basis, "y", Poly.const(c))
            entries[("y", "x")] = _elem(basis, "y", Poly.const(c))
    return _circ(basis, entries)


def _build_r1_tpcsa(params) -> AlgebraDef:
    bracket = _r_bracket("r1", params)
    basis = bracket.basis
    phi = _parse(params, "phi", "0", allowed=frozenset((0, 1)), names=PHI_VARS)
    h = phi_coefficient(phi)
    circ = _circ(basis, {("y", "y"): _elem(basis, "x", h)} if h else {})
    return AlgebraDef(basis, {"circ": circ, "bracket": bracket}, dict(params),
                      _provenance("r1_tpcsa", params))


def _build_r2_tpcsa(params) -> AlgebraDef:
    bracket = _r_bracket("r2", params)
    basis = bracket.basis
    q = _parse(params, "q", None, allowed=frozenset((LAM0,)))
    c = _scalar(params, "c", "0")
    if c and (not q or q.degree(LAM0) > 0):
        raise CatalogError(
            "nonzero product constant requires a nonzero constant q")
    circ = _constant_product(basis, c, with_xy=True)
    return AlgebraDef(basis, {"circ": circ, "bracket": bracket}, dict(params),
                      _provenance("r2_tpcsa", params))


def _build_r3_tpcsa(params) -> AlgebraDef:
    bracket = _r_bracket("r3", params)
    basis = bracket.basis
    c = _scalar(params, "c", "0")
    circ = _constant_product(basis, c, with_xy=False)
    return AlgebraDef(basis, {"circ": circ, "bracket": bracket}, dict(params),
                      _provenance("r3_tpcsa", params))


def _build_r4_tpcsa(params) -> AlgebraDef:
    bracket = _r_bracket("r4", params)
    basis = bracket.basis
    beta = _scalar(params, "beta")
    c = _scalar(params, "c", "0")
    if c and beta != 2:
        raise CatalogError("nonzero product constant requires beta = 2")
    circ = _constant_product(basis, c, with_xy=True)
    return AlgebraDef(basis, {"circ": circ, "bracket": bracket}, dict(params),
                      _provenance("r4_tpcsa", params))


def _build_trivial_product(params) -> AlgebraDef:
    inner = dict(params)
    base_name = inner.pop("of", None)
    if base_name is None:
        raise CatalogError("trivial_product needs of=<catalog name>")
    base = catalog_build(base_name, inner)
    if "bracket" not in base.tables:
        raise CatalogError("trivial_product base must carry a bracket")
    circ = ProductTable("circ", base.basis, {})
    return AlgebraDef(base.basis,
                      {"circ": circ, "bracket": base.table("bracket")},
                      dict(params), _provenance("trivial_product", params))


_BUILDERS = {
    "vir": _build_vir,
    "ns": _build_ns,
    "current": _build_current,
    "r1": lambda p: _build_r("r1", p),
    "r2": lambda p: _build_r("r2", p),
    "r3": lambda p: _build_r("r3", p),
    "r4": lambda p: _build_r("r4", p),
    "r5": lambda p: _build_r("r5", p),
    "r1_tpcsa": _build_r1_tpcsa,
    "r2_tpcsa": _build_r2_tpcsa,
    "r3_tpcsa": _build_r3_tpcsa,
    "r4_tpcsa": _build_r4_tpcsa,
    "trivial_product": _build_trivial_product,
}

CATALOG_DOC = {
    "vir": "rank 1, bracket (D+2L); no parameters",
    "ns": "rank (1+1) with an odd square root of the rank-1 bracket",
    "current": "constant bracket from Lie structure constants; variant=abelian|solvable2",
    "r1": "nilpotent odd square; p=<poly in D> (default D)",
    "r2": "odd eigenvector bracket; q=<poly in L>",
    "r3": "rank-1 bracket with a passive odd generator",
    "r4": "bracket with parameters beta, gamma",
    "r5": "deformation family; alpha=<rational> (default 1)",
    "r1_tpcsa": "compatible product family; p=<poly in D>, phi=<poly in s,t>",
    "r2_tpcsa": "compatible product family; q=<poly in L>, c=<rational>",
    "r3_tpcsa": "compatible product family; c=<rational>",
    "r4_tpcsa": "compatible product family; beta, gamma, c",
    "trivial_product": "zero product over any catalog bracket; of=<name> plus its params",
}


def catalog_build(name: str, params: Mapping[str, str] | None = None) -> AlgebraDef:
    if name not in _BUILDERS:
        raise CatalogError(f"unknown catalog name {name!r}")
    return _BUILDERS[name](dict(params or {}))


def catalog_list() -> list:
    return [(name, CATALOG_DOC[name]) for name in CATALOG_NAMES]
