"""Table-to-table constructions: commutators, derivations, modifications,
direct sums, tensor products and current algebras.

Each construction checks its stated precondition suites, builds the new
structure on generators, and re-verifies the suites its contract promises.
A postcondition failure is raised as InternalInvariantError: it would mean
either a bug in the engine or a genuine counterexample, and must never be
returned silently.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping

from .axioms import (Axiom, PreconditionError, Suite, check_axiom,
                     check_suite)
from .conformal import (AlgebraDef, ProductTable, lam_product, nth_product,
                        validate_table)
from .gmodule import EVEN, Element, GradedBasis, ModuleMap
from .poly import ACTION, LAM0, Poly


class InternalInvariantError(RuntimeError):
    """A construction produced a table violating its own contract."""


def _require(report, what: str) -> None:
    if not report.passed:
        first = report.violations[0]
        raise PreconditionError(f"{what}: {first.render()}")


def _ensure(report, what: str) -> None:
    if not report.passed:
        first = report.violations[0]
        raise InternalInvariantError(f"{what}: {first.render()}")


def commutator_bracket(star: ProductTable) -> ProductTable:
    """[a_L b] := a *_L b - (-1)^{|a||b|} b *_{-D-L} a on generators.

    Skew-symmetric by construction and validated; it is a Lie bracket
    whenever the star product is left-symmetric.
    """
    basis = star.basis
    entries = {}
    n = basis.size
    for i, j in itertools.product(range(n), repeat=2):
        a, b = basis.generator(i), basis.generator(j)
        sign = -1 if (basis.parity(i) & basis.parity(j)) else 1
        elem = (lam_product(star, a, b, Poly.L)
                - sign * lam_product(star, b, a, -Poly.D - Poly.L))
        if elem:
            entries[(i, j)] = elem
    bracket = ProductTable("bracket", basis, entries)
    out = AlgebraDef(basis, {"bracket": bracket})
    _ensure(validate_table(out), "commutator output malformed")
    _ensure(check_axiom(out, Axiom.SKEW_SYMMETRY), "commutator not skew")
    return bracket


def derivation_star(circ: ProductTable, deriv: ModuleMap) -> ProductTable:
    """a *_L b := a o_L deriv(b) for an even derivation of a commutative
    associative product; the result is a Novikov product and, with the
    original one, a Novikov-Poisson pair (both re-verified).
    """
    basis = circ.basis
    base = AlgebraDef(basis, {"circ": circ})
    _require(check_suite(base, Suite.COMM_ASSOC),
             "derivation_star needs a commutative associative product")
    if deriv.parity != EVEN:
        raise PreconditionError("derivation must be even")
    _require(check_axiom(base, Axiom.DERIVATION, aux=deriv),
             "map is not a derivation of the product")

    entries = {}
    n = basis.size
    for i, j in itertools.product(range(n), repeat=2):
        elem = lam_product(circ, basis.generator(i),
                           deriv(basis.generator(j)), Poly.L)
        if elem:
            entries[(i, j)] = elem
    star = ProductTable("star", basis, entries)
    out = AlgebraDef(basis, {"circ": circ, "star": star})
    _ensure(check_suite(out, Suite.NOVIKOV), "derivation star not Novikov")
    _ensure(check_suite(out, Suite.NOVIKOV_POISSON),
            "derivation star not Novikov-Poisson")
    return star


def h_modified_bracket(circ: ProductTable, bracket: ProductTable,
                       h: Element) -> ProductTable:
    """[x_L y]^h := h o_(0) [x_L y]; with the original product this is again
    a transposed structure (re-verified)."""
    basis = circ.basis
    if not h.has_parity(EVEN):
        raise PreconditionError("h must be even")
    base = AlgebraDef(basis, {"circ": circ, "bracket": bracket})
    _require(check_suite(base, Suite.TPCSA),
             "h-modification needs a verified tpcsa structure")

    entries = {}
    n = basis.size
    for i, j in itertools.product(range(n), repeat=2):
        raw = bracket.entries.get((i, j))
        if raw is None:
            continue
        elem = nth_product(circ, h, raw, 0)
        if elem:
            entries[(i, j)] = elem
    new_bracket = ProductTable("bracket", basis, entries)
    out = AlgebraDef(basis, {"circ": circ, "bracket": new_bracket})
    _ensure(check_suite(out, Suite.TPCSA), "h-modified bracket not tpcsa")
    return new_bracket


def hom_map_from_element(circ: ProductTable, h: Element) -> ModuleMap:
    """The 0-th left multiplication x -> (h o_L x)|_{L=0}; an even map
    commuting with D, which twists the bracket into a Hom-Jacobi identity
    on any verified transposed structure."""
    basis = circ.basis
    if not h.has_parity(EVEN):
        raise PreconditionError("h must be even")
    n = basis.size
    cols = []
    for j in range(n):
        image = nth_product(circ, h, basis.generator(j), 0)
        col = [Poly.zero()] * n
        for k, p in image.comps.items():
            if p.variables() - {ACTION}:
                raise InternalInvariantError("hom map entry uses a binder")
            col[k] = p
        cols.append(tuple(col))
    return ModuleMap(basis, tuple(cols), EVEN)


def _renamed(names, taken) -> tuple:
    out = []
    seen = set(taken)
    for name in names:
        candidate = name
        while candidate in seen:
            candidate += "'"
        seen.add(candidate)
        out.append(candidate)
    return tuple(out)


def direct_sum(a: AlgebraDef, b: AlgebraDef) -> AlgebraDef:
    """Concatenated basis with blockwise tables; all cross pairs are zero.
    Right-hand names that collide get primes appended."""
    if set(a.tables) != set(b.tables):
        raise PreconditionError("summands carry different table kinds")
    left = a.basis
    right_names = _renamed(b.basis.names, left.names)
    basis = GradedBasis(left.names + right_names,
                        left.parities + b.basis.parities)
    shift = left.size
    tables = {}
    for kind in a.tables:
        entries = {}
        for (i, j), elem in a.table(kind).entries.items():
            entries[(i, j)] = Element(basis, dict(elem.comps))
        for (i, j), elem in b.table(kind).entries.items():
            entries[(i + shift, j + shift)] = Element(
                basis, {k + shift: p for k, p in elem.comps.items()})
        tables[kind] = ProductTable(kind, basis, entries)
    out = AlgebraDef(basis, tables, {},
                     f"direct_sum({a.provenance or '?'}, {b.provenance or '?'})")
    _ensure(validate_table(out), "direct sum malformed")
    return out


def _tensor_basis(a: GradedBasis, b: GradedBasis) -> GradedBasis:
    names = []
    parities = []
    for i in range(a.size):
        for j in range(b.size):
            names.append(f"{a.names[i]}*{b.names[j]}")
            parities.append((a.parities[i] + b.parities[j]) % 2)
    return GradedBasis(tuple(names), tuple(parities))


def _tensor_elem(basis: GradedBasis, rank2: int, e1: Element,
                 e2: Element) -> Element:
    # D acts the same through either factor, so the two D-polynomials
    # multiply on the product basis
    comps = {}
    for k, p in e1.comps.items():
        for l, q in e2.comps.items():
            comps[k * rank2 + l] = p * q
    return Element(basis, comps)


def _tensor_tables(a: AlgebraDef, b: AlgebraDef, second_kind: str) -> AlgebraDef:
    basis = _tensor_basis(a.basis, b.basis)
    n1, n2 = a.basis.size, b.basis.size
    circ1, circ2 = a.table("circ"), b.table("circ")
    op1, op2 = a.table(second_kind), b.table(second_kind)
    circ_entries = {}
    op_entries = {}
    for i1, i2, j1, j2 in itertools.product(range(n1), range(n2),
                                            range(n1), range(n2)):
        sign = -1 if (a.basis.parity(j1) & b.basis.parity(i2)) else 1
        row, col = i1 * n2 + i2, j1 * n2 + j2
        c11 = circ1.entries.get((i1, j1))
        c22 = circ2.entries.get((i2, j2))
        if c11 is not None and c22 is not None:
            elem = sign * _tensor_elem(basis, n2, c11, c22)
            if elem:
                circ_entries[(row, col)] = elem
        acc = Element.zero(basis)
        o11 = op1.entries.get((i1, j1))
        if o11 is not None and c22 is not None:
            acc = acc + _tensor_elem(basis, n2, o11, c22)
        o22 = op2.entries.get((i2, j2))
        if c11 is not None and o22 is not None:
            acc = acc + _tensor_elem(basis, n2, c11, o22)
        if acc:
            op_entries[(row, col)] = sign * acc
    tables = {"circ": ProductTable("circ", basis, circ_entries),
              second_kind: ProductTable(second_kind, basis, op_entries)}
    return AlgebraDef(basis, tables, {},
                      f"tensor({a.provenance or '?'}, {b.provenance or '?'})")


def tensor_tpcsa(a: AlgebraDef, b: AlgebraDef) -> AlgebraDef:
    """Tensor product over C[D] of two transposed structures:

        (a1 x a2) o_L (b1 x b2) = (-1)^{|a2||b1|} (a1 o_L b1) x (a2 o_L b2)
        [(a1 x a2)_L (b1 x b2)] = (-1)^{|a2||b1|} ([a1_L b1] x (a2 o_L b2)
                                                   + (a1 o_L b1) x [a2_L b2])

    The result is re-verified to pass the tpcsa suite.
    """
    for side, alg in (("left", a), ("right", b)):
        _require(check_suite(alg, Suite.TPCSA),
                 f"tensor_tpcsa: {side} factor is not a tpcsa")
    out = _tensor_tables(a, b, "bracket")
    _ensure(check_suite(out, Suite.TPCSA), "tensor product not tpcsa")
    return out


def tensor_prelie_poisson(a: AlgebraDef, b: AlgebraDef) -> AlgebraDef:
    """Same tensor pattern with (circ, star) tables; the result is
    re-verified to be pre-Lie Poisson."""
    for side, alg in (("left", a), ("right", b)):
        _require(check_suite(alg, Suite.PRELIE_POISSON),
                 f"tensor_prelie_poisson: {side} factor is not pre-Lie Poisson")
    out = _tensor_tables(a, b, "star")
    _ensure(check_suite(out, Suite.PRELIE_POISSON),
            "tensor product not pre-Lie Poisson")
    return out


def _constant(value) -> Fraction:
    return Fraction(value)


def current_bracket(basis: GradedBasis,
                    brackets: Mapping[tuple, Mapping[str, object]]) -> AlgebraDef:
    """Current algebra of a finite-dimensional Lie superalgebra.

    brackets maps (name, name) to {target name: rational constant}; missing
    pairs are zero.  The constants are validated for super antisymmetry and
    the super Jacobi identity before the constant table is built, and the
    output is verified to pass the lie suite.
    """
    n = basis.size
    const = [[{} for _ in range(n)] for _ in range(n)]
    for (na, nb), targets in brackets.items():
        i, j = basis.index(na), basis.index(nb)
        for target, value in targets.items():
            k = basis.index(target)
            want = (basis.parity(i) + basis.parity(j)) % 2
            if basis.parity(k) != want:
                raise PreconditionError(
                    f"constants not parity-closed at ({na},{nb})->{target}")
            q = _constant(value)
            if q:
                const[i][j][k] = q

    def bk(i, j):
        return const[i][j]

    def add_into(acc, terms, scale):
        for k, q in terms.items():
            cur = acc.get(k, Fraction(0)) + scale * q
            if cur:
                acc[k] = cur
            else:
                acc.pop(k, None)

    for i, j in itertools.product(range(n), repeat=2):
        sign = -1 if (basis.parity(i) & basis.parity(j)) else 1
        acc = dict(bk(i, j))
        add_into(acc, bk(j, i), sign)
        if acc:
            raise PreconditionError(
                f"constants not super-antisymmetric at "
                f"({basis.names[i]},{basis.names[j]})")
    for i, j, k in itertools.product(range(n), repeat=3):
        sign = -1 if (basis.parity(i) & basis.parity(j)) else 1
        acc = {}
        for m, q in bk(j, k).items():
            add_into(acc, bk(i, m), q)
        for m, q in bk(i, j).items():
            add_into(acc, bk(m, k), -q)
        for m, q in bk(i, k).items():
            add_into(acc, bk(j, m), -sign * q)
        if acc:
            raise PreconditionError(
                f"constants fail the super Jacobi identity at "
                f"({basis.names[i]},{basis.names[j]},{basis.names[k]})")

    entries = {}
    for i, j in itertools.product(range(n), repeat=2):
        comps = {k: Poly.const(q) for k, q in bk(i, j).items()}
        if comps:
            entries[(i, j)] = Element(basis, comps)
    table = ProductTable("bracket", basis, entries)
    out = AlgebraDef(basis, {"bracket": table}, {}, "current_bracket")
    _ensure(check_suite(out, Suite.LIE), "current bracket not a Lie structure")
    return out
