"""Lambda-product engine: structure tables, sesquilinear extension, file I/O.

A product table stores, for each ordered pair of generators (i, j), the value
of e_i applied to e_j as an element whose coefficients use D and the formal
table variable (stored in the L slot).  Sesquilinearity

    (D a) o_v b = -v (a o_v b),      a o_v (D b) = (D + v)(a o_v b)

extends the table to arbitrary elements: with a = sum p_i e_i and
b = sum q_j e_j,

    a o_v b = sum_ij p_i[D -> -v] * q_j[D -> D+v] * table(i, j)[L -> v].

Composed binders such as -D-L or M-L are handled by expanding the product at
the scratch variable N and substituting afterwards; the D appearing in the
substituted expression is the action on that product's own result, which
enclosing applications then shift through their sesquilinear substitutions.

Tables are stored in full (both orders of every pair); commutativity and
skew-symmetry are checked, never assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial
from typing import Mapping

from .gmodule import Element, GradedBasis
from .poly import (ACTION, LAM0, LAM3, Poly, PolyParseError, parse_poly,
                   poly_to_str)

TABLE_KINDS = ("circ", "bracket", "star")


class SchemaError(ValueError):
    """Malformed algebra document."""


@dataclass(eq=True)
class ProductTable:
    """Structure polynomials of one lambda-product on generators."""

    kind: str
    basis: GradedBasis
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in TABLE_KINDS:
            raise ValueError(f"table kind must be one of {TABLE_KINDS}")
        clean = {}
        for (i, j), elem in self.entries.items():
            n = self.basis.size
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pair ({i},{j}) out of range")
            if elem.basis != self.basis:
                raise ValueError("entry over a different basis")
            if elem:
                clean[(i, j)] = elem
        self.entries = clean

    def entry(self, i: int, j: int) -> Element:
        got = self.entries.get((i, j))
        if got is None:
            return Element.zero(self.basis)
        return got

    def map_polys(self, fn) -> "ProductTable":
        return ProductTable(self.kind, self.basis, {
            pair: elem.map_polys(fn) for pair, elem in self.entries.items()})

    def lam_degree(self) -> int:
        """Largest combined D/L degree over all entries (-1 if empty)."""
        deg = -1
        for elem in self.entries.values():
            for p in elem.comps.values():
                deg = max(deg, p.degree())
        return deg


def _element_uses(elem: Element, v: int) -> bool:
    return any(p.uses(v) for p in elem.comps.values())


def _apply_at_var(table: ProductTable, a: Element, b: Element, v: int) -> Element:
    vpoly = Poly.var(v)
    shift_left = -vpoly
    shift_right = Poly.D + vpoly
    acc: dict = {}
    for i, pi in a.comps.items():
        pm = pi.subst(ACTION, shift_left)
        for j, qj in b.comps.items():
            entry = table.entries.get((i, j))
            if entry is None:
                continue
            qm = qj.subst(ACTION, shift_right)
            factor = pm * qm
            if not factor:
                continue
            for k, g in entry.comps.items():
                term = factor * g.subst(LAM0, vpoly)
                cur = acc.get(k, Poly.zero()) + term
                if cur:
                    acc[k] = cur
                else:
                    acc.pop(k, None)
    return Element(table.basis, acc)


def _as_plain_var(binder: Poly) -> int | None:
    if len(binder.terms) != 1:
        return None
    (exps, coeff), = binder.terms.items()
    if coeff != 1 or sum(exps) != 1 or exps[ACTION]:
        return None
    return exps.index(1)


def lam_product(table: ProductTable, a: Element, b: Element, binder: Poly) -> Element:
    """Evaluate a o_binder b.

    The binder is either a plain lambda-variable or an affine combination of
    D and the binder variables L, M, G; in the latter case the product is
    expanded at the scratch variable N first and N is substituted away, so N
    must not occur in the operands.
    """
    if a.basis != table.basis or b.basis != table.basis:
        raise ValueError("basis mismatch")
    if not isinstance(binder, Poly):
        binder = Poly.const(binder)
    if not binder.is_affine():
        raise ValueError("binder must be affine")
    v = _as_plain_var(binder)
    if v is not None:
        return _apply_at_var(table, a, b, v)
    if binder.uses(LAM3):
        raise ValueError("composed binder may not use the scratch variable")
    if _element_uses(a, LAM3) or _element_uses(b, LAM3):
        raise ValueError("scratch variable collides with operand coefficients")
    raw = _apply_at_var(table, a, b, LAM3)
    return raw.map_polys(lambda p: p.subst(LAM3, binder))


def nth_product(table: ProductTable, a: Element, b: Element, n: int) -> Element:
    """n-th product: n! times the coefficient of binder**n in the lambda form."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if _element_uses(a, LAM3) or _element_uses(b, LAM3):
        raise ValueError("scratch variable collides with operand coefficients")
    raw = _apply_at_var(table, a, b, LAM3)
    fac = factorial(n)
    return Element(table.basis,
                   {k: p.coeff(LAM3, n) * fac for k, p in raw.comps.items()})


@dataclass(eq=True)
class AlgebraDef:
    """A basis with named product tables, parameter strings and provenance."""

    basis: GradedBasis
    tables: dict
    params: dict = field(default_factory=dict)
    provenance: str = ""

    def __post_init__(self):
        for kind, table in self.tables.items():
            if kind not in TABLE_KINDS:
                raise ValueError(f"unknown table kind {kind!r}")
            if table.kind != kind or table.basis != self.basis:
                raise ValueError(f"table {kind!r} does not match the algebra")

    def table(self, kind: str) -> ProductTable:
        return self.tables[kind]

    def has(self, kind: str) -> bool:
        return kind in self.tables


def validate_table(algebra: AlgebraDef):
    """Structural validation: parity closure and entry grammar.

    Algebraic axioms are not checked here.  Returns a CheckReport; import is
    deferred to avoid a cycle with the axioms module.
    """
    from .axioms import CheckReport, Violation

    basis = algebra.basis
    violations = []
    checked = 0
    for kind in TABLE_KINDS:
        if not algebra.has(kind):
            continue
        table = algebra.table(kind)
        for (i, j), elem in sorted(table.entries.items()):
            checked += 1
            want = (basis.parity(i) + basis.parity(j)) % 2
            for k, p in sorted(elem.comps.items()):
                if basis.parity(k) != want:
                    violations.append(Violation(
                        identity=f"parity_closure[{kind}]",
                        gens=(basis.names[i], basis.names[j], basis.names[k]),
                        binders="",
                        residual=Element(basis, {k: p})))
                extra = p.variables() - {ACTION, LAM0}
                if extra:
                    violations.append(Violation(
                        identity=f"entry_grammar[{kind}]",
                        gens=(basis.names[i], basis.names[j], basis.names[k]),
                        binders="",
                        residual=Element(basis, {k: p})))
    return CheckReport(name="table_validation", violations=violations,
                       checked=checked)


# ---------------------------------------------------------------------------
# Algebra file format (JSON document)
# ---------------------------------------------------------------------------

def algebra_to_dict(algebra: AlgebraDef) -> dict:
    basis_doc = [{"name": n, "parity": p}
                 for n, p in zip(algebra.basis.names, algebra.basis.parities)]
    tables_doc = {}
    for kind in TABLE_KINDS:
        if not algebra.has(kind):
            continue
        table = algebra.table(kind)
        tdoc = {}
        n = algebra.basis.size
        for i in range(n):
            for j in range(n):
                elem = table.entries.get((i, j))
                if not elem:
                    continue
                targets = {}
                for k in sorted(elem.comps):
                    p = elem.comps[k]
                    if p.variables() - {ACTION, LAM0}:
                        raise SchemaError(
                            "table entries may only use D and L in files")
                    targets[algebra.basis.names[k]] = poly_to_str(p)
                tdoc[f"{algebra.basis.names[i]},{algebra.basis.names[j]}"] = targets
        tables_doc[kind] = tdoc
    doc = {"basis": basis_doc, "tables": tables_doc}
    if algebra.params:
        doc["params"] = {k: algebra.params[k] for k in sorted(algebra.params)}
    if algebra.provenance:
        doc["provenance"] = algebra.provenance
    return doc


def save_algebra(algebra: AlgebraDef) -> str:
    return json.dumps(algebra_to_dict(algebra), indent=2) + "\n"


def algebra_from_dict(doc) -> AlgebraDef:
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object")
    unknown = set(doc) - {"basis", "tables", "params", "provenance"}
    if unknown:
        raise SchemaError(f"unknown document keys: {sorted(unknown)}")
    basis_doc = doc.get("basis")
    if not isinstance(basis_doc, list) or not basis_doc:
        raise SchemaError("'basis' must be a nonempty list")
    names, parities = [], []
    for item in basis_doc:
        if not isinstance(item, dict) or set(item) != {"name", "parity"}:
            raise SchemaError(f"bad basis item {item!r}")
        names.append(item["name"])
        parities.append(item["parity"])
    if len(set(names)) != len(names):
        raise SchemaError("duplicate basis name")
    try:
        basis = GradedBasis(tuple(names), tuple(parities))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None

    tables_doc = doc.get("tables", {})
    if not isinstance(tables_doc, dict):
        raise SchemaError("'tables' must be an object")
    tables = {}
    for kind in tables_doc:
        if kind not in TABLE_KINDS:
            raise SchemaError(f"unknown table kind {kind!r}")
    for kind in TABLE_KINDS:
        if kind not in tables_doc:
            continue
        tdoc = tables_doc[kind]
        if not isinstance(tdoc, dict):
            raise SchemaError(f"table {kind!r} must be an object")
        entries = {}
        for pair_key, targets in tdoc.items():
            parts = pair_key.split(",")
            if len(parts) != 2:
                raise SchemaError(f"bad pair key {pair_key!r} in table {kind!r}")
            try:
                i, j = basis.index(parts[0]), basis.index(parts[1])
            except KeyError as exc:
                raise SchemaError(f"table {kind!r}: {exc.args[0]}") from None
            if (i, j) in entries:
                raise SchemaError(f"duplicate pair {pair_key!r} in table {kind!r}")
            if not isinstance(targets, dict):
                raise SchemaError(f"entry {pair_key!r} must be an object")
            comps = {}
            for target, text in targets.items():
                try:
                    k = basis.index(target)
                except KeyError as exc:
                    raise SchemaError(f"table {kind!r} entry {pair_key!r}: "
                                      f"{exc.args[0]}") from None
                try:
                    p = parse_poly(text)
                except PolyParseError as exc:
                    raise SchemaError(f"table {kind!r} entry {pair_key!r} "
                                      f"target {target!r}: {exc}") from None
                if p.variables() - {ACTION, LAM0}:
                    raise SchemaError(f"table {kind!r} entry {pair_key!r} "
                                      f"target {target!r}: only D and L allowed")
                if p:
                    comps[k] = p
            if comps:
                entries[(i, j)] = Element(basis, comps)
        tables[kind] = ProductTable(kind, basis, entries)

    params_doc = doc.get("params", {})
    if not isinstance(params_doc, dict) or not all(
            isinstance(k, str) and isinstance(v, str)
            for k, v in params_doc.items()):
        raise SchemaError("'params' must map strings to strings")
    provenance = doc.get("provenance", "")
    if not isinstance(provenance, str):
        raise SchemaError("'provenance' must be a string")

    algebra = AlgebraDef(basis, tables, dict(params_doc), provenance)
    report = validate_table(algebra)
    if not report.passed:
        first = report.violations[0]
        raise SchemaError(f"{first.identity} violation at {first.gens}")
    return algebra


def load_algebra(data) -> AlgebraDef:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return algebra_from_dict(doc)
