"""Batch front end: check, construct, classify, catalog.

Exit codes: 0 all checks passed / construction succeeded, 1 a check produced
violations (the report is still written), 2 usage, I/O, schema or
precondition errors.  Reports are deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions
from .axioms import (Axiom, MissingTableError, PreconditionError, Suite,
                     check_axiom, check_compat_equivalence,
                     check_derived_identities, check_suite,
                     check_transposed_leibniz_nth)
from .catalog import CatalogError, catalog_build, catalog_list
from .classify import SearchConfig, SearchSpaceError, search_compatible
from .conformal import (SchemaError, load_algebra, save_algebra,
                        validate_table)
from .gmodule import Element, ModuleMap
from .poly import PolyParseError, parse_poly

EXTRA_SUITES = ("derived_identities", "compat_equivalence",
                "transposed_leibniz_nth", "table_validation")


class CliError(Exception):
    pass


def _read_algebra(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        return load_algebra(data)
    except SchemaError as exc:
        raise CliError(f"{path}: {exc}") from None


def _read_module_map(path: str, algebra) -> ModuleMap:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read map {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise CliError(f"{path}: map document must be an object")
    try:
        images = {src: {dst: parse_poly(text) for dst, text in col.items()}
                  for src, col in doc.items()}
        return ModuleMap.from_dict(algebra.basis, images)
    except (PolyParseError, KeyError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from None


def _parse_element(text: str, algebra) -> Element:
    """'x' or a JSON object mapping generator names to polynomials."""
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
            comps = {algebra.basis.index(name): parse_poly(ptext)
                     for name, ptext in doc.items()}
        except (json.JSONDecodeError, PolyParseError, KeyError) as exc:
            raise CliError(f"bad element {text!r}: {exc}") from None
        return Element(algebra.basis, comps)
    try:
        return algebra.basis.generator(algebra.basis.index(text))
    except KeyError as exc:
        raise CliError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _params_from_args(pairs) -> dict:
    params = {}
    for item in pairs or ():
        if "=" not in item:
            raise CliError(f"--param expects k=v, got {item!r}")
        key, value = item.split("=", 1)
        params[key] = value
    return params


def _cmd_check(args) -> int:
    algebra = _read_algebra(args.file)
    if args.axiom:
        try:
            axiom = Axiom(args.axiom)
        except ValueError:
            raise CliError(f"unknown axiom {args.axiom!r}") from None
        aux = _read_module_map(args.aux, algebra) if args.aux else None
        report = check_axiom(algebra, axiom, aux)
    elif args.suite in EXTRA_SUITES:
        if args.suite == "derived_identities":
            report = check_derived_identities(algebra)
        elif args.suite == "compat_equivalence":
            compat = check_compat_equivalence(algebra)
            if not args.json:
                sys.stdout.write(compat.render_text())
                return 0 if compat.consistent else 1
            report = compat.as_check_report()
        elif args.suite == "transposed_leibniz_nth":
            report = check_transposed_leibniz_nth(algebra)
        else:
            report = validate_table(algebra)
    else:
        try:
            suite = Suite(args.suite)
        except ValueError:
            raise CliError(f"unknown suite {args.suite!r}") from None
        report = check_suite(algebra, suite)
    if args.json:
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(report.render_text(), args.out)
    return 0 if report.passed else 1


def _cmd_construct(args) -> int:
    kind = args.kind
    inputs = [_read_algebra(path) for path in args.inputs]

    def need(count):
        if len(inputs) != count:
            raise CliError(f"{kind} takes {count} input file(s)")

    if kind == "commutator":
        need(1)
        star = inputs[0].tables.get("star")
        if star is None:
            raise CliError("commutator input needs a star table")
        bracket = constructions.commutator_bracket(star)
        out = _wrap(inputs[0], {"bracket": bracket,
                                **_keep(inputs[0], "circ", "star")},
                    f"commutator({inputs[0].provenance or args.inputs[0]})")
    elif kind == "derivation_star":
        need(1)
        if not args.map:
            raise CliError("derivation_star needs --map FILE")
        circ = _require_table(inputs[0], "circ")
        deriv = _read_module_map(args.map, inputs[0])
        star = constructions.derivation_star(circ, deriv)
        out = _wrap(inputs[0], {"circ": circ, "star": star},
                    f"derivation_star({inputs[0].provenance or args.inputs[0]})")
    elif kind == "h_modify":
        need(1)
        if not args.element:
            raise CliError("h_modify needs --element NAME-or-JSON")
        circ = _require_table(inputs[0], "circ")
        bracket = _require_table(inputs[0], "bracket")
        h = _parse_element(args.element, inputs[0])
        new_bracket = constructions.h_modified_bracket(circ, bracket, h)
        out = _wrap(inputs[0], {"circ": circ, "bracket": new_bracket},
                    f"h_modify({inputs[0].provenance or args.inputs[0]}, "
                    f"h={args.element})")
    elif kind == "hom_map":
        need(1)
        if not args.element:
            raise CliError("hom_map needs --element NAME-or-JSON")
        circ = _require_table(inputs[0], "circ")
        h = _parse_element(args.element, inputs[0])
        hom = constructions.hom_map_from_element(circ, h)
        doc = {src: {inputs[0].basis.names[i]: str(hom.entry(i, j))
                     for i, poly in enumerate(col) if poly}
               for j, (src, col) in enumerate(zip(inputs[0].basis.names,
                                                  hom.columns))}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
        return 0
    elif kind == "direct_sum":
        need(2)
        out = constructions.direct_sum(inputs[0], inputs[1])
    elif kind == "tensor":
        need(2)
        out = constructions.tensor_tpcsa(inputs[0], inputs[1])
    elif kind == "tensor_prelie":
        need(2)
        out = constructions.tensor_prelie_poisson(inputs[0], inputs[1])
    else:
        raise CliError(f"unknown construction {kind!r}")
    _emit(save_algebra(out), args.out)
    return 0


def _keep(algebra, *kinds) -> dict:
    return {k: algebra.table(k) for k in kinds if algebra.has(k)}


def _require_table(algebra, kind):
    if not algebra.has(kind):
        raise CliError(f"input needs a {kind} table")
    return algebra.table(kind)


def _wrap(base, tables, provenance):
    from .conformal import AlgebraDef

    return AlgebraDef(base.basis, tables, dict(base.params), provenance)


def _cmd_classify(args) -> int:
    lie_params = {}
    for key in ("p", "q", "beta", "gamma", "alpha"):
        value = getattr(args, key)
        if value is not None:
            lie_params[key] = value
    try:
        grid = tuple(Fraction(v) for v in args.grid.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad grid: {exc}") from None
    cfg = SearchConfig(rtype=args.type, lie_params=lie_params,
                       degree=args.deg, grid=grid, modulus=args.mod,
                       ceiling=args.ceiling, jobs=args.jobs)
    result = search_compatible(cfg)
    for finding in result.findings:
        print(finding, file=sys.stderr)
    if args.json:
        _emit(json.dumps(result.to_dict(), indent=2) + "\n", args.out)
    else:
        lines = [f"type: {cfg.rtype}",
                 f"nominal candidates: {result.nominal}",
                 f"solutions: {len(result.solutions)}"]
        for sol in result.solutions:
            d = sol.to_dict()
            lines.append(f"  f={d['f']} g={d['g']} h={d['h']} "
                         f"family_match={d['family_match']}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_catalog(args) -> int:
    if args.action == "list":
        lines = [f"{name}: {doc}" for name, doc in catalog_list()]
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    params = _params_from_args(args.param)
    algebra = catalog_build(args.name, params)
    _emit(save_algebra(algebra), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confal",
        description="Exact checker and constructor for conformal "
                    "superalgebra structure tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run an axiom or suite on an algebra file")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--suite", choices=[s.value for s in Suite] + list(EXTRA_SUITES))
    group.add_argument("--axiom", choices=[a.value for a in Axiom])
    p.add_argument("--aux", help="module-map JSON file for hom_jacobi/derivation")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("construct", help="build a new algebra from inputs")
    p.add_argument("kind", choices=["commutator", "derivation_star", "h_modify",
                                    "hom_map", "direct_sum", "tensor",
                                    "tensor_prelie"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--map", help="module-map JSON file")
    p.add_argument("--element", help="element as a name or JSON object")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("classify", help="search compatible products on a grid")
    p.add_argument("--type", required=True, choices=["r1", "r2", "r3", "r4", "r5"])
    p.add_argument("--p", help="polynomial in D (type r1)")
    p.add_argument("--q", help="polynomial in L (type r2)")
    p.add_argument("--beta")
    p.add_argument("--gamma")
    p.add_argument("--alpha")
    p.add_argument("--deg", type=int, default=1)
    p.add_argument("--grid", default="-1,0,1")
    p.add_argument("--mod", type=int, help="odd prime for the pre-filter pass")
    p.add_argument("--ceiling", type=int, default=10_000_000)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("catalog", help="list or emit built-in algebras")
    psub = p.add_subparsers(dest="action", required=True)
    pl = psub.add_parser("list")
    pl.add_argument("--out")
    pl.set_defaults(func=_cmd_catalog)
    pe = psub.add_parser("emit")
    pe.add_argument("name")
    pe.add_argument("--param", action="append")
    pe.add_argument("--out")
    pe.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (CliError, CatalogError, SchemaError, PolyParseError,
            MissingTableError, PreconditionError, SearchSpaceError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
