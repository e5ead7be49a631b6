"""Symbolic verification of algebra axioms and derived identities.

Every check quantifies over basis generators only: each identity is
sesquilinear in every slot, so vanishing on generators implies vanishing on
the whole free module.  Binders follow a fixed protocol (L for lambda, M for
mu, G for gamma, N as the transient scratch slot), so residuals and reports
are deterministic.  A residual is the left-minus-right element of an
identity instance; a check passes iff every residual is exactly zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb

from .conformal import AlgebraDef, ProductTable, lam_product, nth_product
from .gmodule import Element, GradedBasis, ModuleMap
from .poly import Poly

HALF = Fraction(1, 2)


class MissingTableError(ValueError):
    """The algebra lacks a table the requested check needs."""


class PreconditionError(ValueError):
    """A check or construction was invoked outside its stated precondition."""


class Axiom(Enum):
    COMMUTATIVE = "commutative"
    ASSOCIATIVE = "associative"
    SKEW_SYMMETRY = "skew_symmetry"
    JACOBI = "jacobi"
    LEIBNIZ = "leibniz"
    LEIBNIZ_RIGHT = "leibniz_right"
    TRANSPOSED_LEIBNIZ = "transposed_leibniz"
    TRANSPOSED_LEIBNIZ_RIGHT = "transposed_leibniz_right"
    LEFT_SYMMETRIC = "left_symmetric"
    NOVIKOV = "novikov"
    HOM_JACOBI = "hom_jacobi"
    NP_COMPAT_ASSOC = "np_compat_assoc"
    NP_COMPAT_SYMM = "np_compat_symm"
    PRELIE_LEIBNIZ = "prelie_leibniz"
    DERIVATION = "derivation"
    HALF_DERIVATION = "half_derivation"
    ASSOC_CONJUGATES = "assoc_conjugates"
    COMM_EXCHANGE = "comm_exchange"
    NP_CONJUGATES = "np_conjugates"


class Suite(Enum):
    COMM_ASSOC = "comm_assoc"
    LIE = "lie"
    PCSA = "pcsa"
    TPCSA = "tpcsa"
    LEFT_SYMMETRIC = "left_symmetric"
    NOVIKOV = "novikov"
    NOVIKOV_POISSON = "novikov_poisson"
    PRELIE_COMMUTATIVE = "prelie_commutative"
    PRELIE_POISSON = "prelie_poisson"
    DIFF_NOVIKOV_POISSON = "diff_novikov_poisson"


SUITES = {
    Suite.COMM_ASSOC: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE),
    Suite.LIE: (Axiom.SKEW_SYMMETRY, Axiom.JACOBI),
    Suite.PCSA: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE, Axiom.SKEW_SYMMETRY,
                 Axiom.JACOBI, Axiom.LEIBNIZ),
    Suite.TPCSA: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE, Axiom.SKEW_SYMMETRY,
                  Axiom.JACOBI, Axiom.TRANSPOSED_LEIBNIZ),
    Suite.LEFT_SYMMETRIC: (Axiom.LEFT_SYMMETRIC,),
    Suite.NOVIKOV: (Axiom.LEFT_SYMMETRIC, Axiom.NOVIKOV),
    Suite.NOVIKOV_POISSON: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE,
                            Axiom.LEFT_SYMMETRIC, Axiom.NOVIKOV,
                            Axiom.NP_COMPAT_ASSOC, Axiom.NP_COMPAT_SYMM),
    Suite.PRELIE_COMMUTATIVE: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE,
                               Axiom.LEFT_SYMMETRIC, Axiom.PRELIE_LEIBNIZ),
    Suite.PRELIE_POISSON: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE,
                           Axiom.LEFT_SYMMETRIC, Axiom.NP_COMPAT_ASSOC,
                           Axiom.NP_COMPAT_SYMM),
    Suite.DIFF_NOVIKOV_POISSON: (Axiom.COMMUTATIVE, Axiom.ASSOCIATIVE,
                                 Axiom.LEFT_SYMMETRIC, Axiom.NOVIKOV,
                                 Axiom.NP_COMPAT_ASSOC, Axiom.NP_COMPAT_SYMM,
                                 Axiom.PRELIE_LEIBNIZ),
}

AXIOM_TABLES = {
    Axiom.COMMUTATIVE: ("circ",),
    Axiom.ASSOCIATIVE: ("circ",),
    Axiom.SKEW_SYMMETRY: ("bracket",),
    Axiom.JACOBI: ("bracket",),
    Axiom.LEIBNIZ: ("circ", "bracket"),
    Axiom.LEIBNIZ_RIGHT: ("circ", "bracket"),
    Axiom.TRANSPOSED_LEIBNIZ: ("circ", "bracket"),
    Axiom.TRANSPOSED_LEIBNIZ_RIGHT: ("circ", "bracket"),
    Axiom.LEFT_SYMMETRIC: ("star",),
    Axiom.NOVIKOV: ("star",),
    Axiom.HOM_JACOBI: ("bracket",),
    Axiom.NP_COMPAT_ASSOC: ("circ", "star"),
    Axiom.NP_COMPAT_SYMM: ("circ", "star"),
    Axiom.PRELIE_LEIBNIZ: ("circ", "star"),
    Axiom.DERIVATION: (),
    Axiom.HALF_DERIVATION: ("circ", "bracket"),
    Axiom.ASSOC_CONJUGATES: ("circ",),
    Axiom.COMM_EXCHANGE: ("circ",),
    Axiom.NP_CONJUGATES: ("circ", "star"),
}


@dataclass(frozen=True)
class Violation:
    identity: str
    gens: tuple
    binders: str
    residual: Element

    def render(self) -> str:
        where = ",".join(self.gens)
        binders = f" [{self.binders}]" if self.binders else ""
        return f"{self.identity} ({where}){binders}: {self.residual}"


@dataclass
class CheckReport:
    name: str
    violations: list
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "pass": self.passed,
            "violations": [
                {"identity": v.identity, "tuple": list(v.gens),
                 "residual": str(v.residual)}
                for v in self.violations
            ],
        }

    def render_text(self) -> str:
        lines = [f"suite: {self.name}",
                 f"status: {'PASS' if self.passed else 'FAIL'}",
                 f"checked: {self.checked} identity instances"]
        for v in self.violations:
            lines.append("  " + v.render())
        return "\n".join(lines) + "\n"

    @staticmethod
    def merge(name: str, reports) -> "CheckReport":
        violations = []
        checked = 0
        for rep in reports:
            violations.extend(rep.violations)
            checked += rep.checked
        return CheckReport(name=name, violations=violations, checked=checked)


def _sgn(pa: int, pb: int) -> int:
    return -1 if (pa & pb) else 1


def _sgn_exp(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _table(algebra: AlgebraDef, kind: str) -> ProductTable:
    if not algebra.has(kind):
        raise MissingTableError(f"algebra has no {kind!r} table")
    return algebra.table(kind)


def _gens(basis: GradedBasis):
    return [basis.generator(i) for i in range(basis.size)]


D, L, M, G = Poly.D, Poly.L, Poly.M, Poly.G


def _axiom_residuals(algebra: AlgebraDef, axiom: Axiom, aux):
    """Yield (identity, generator names, binder string, residual)."""
    basis = algebra.basis
    par = basis.parities
    names = basis.names
    gens = _gens(basis)
    idx = range(basis.size)
    need = AXIOM_TABLES[axiom]
    ci = _table(algebra, "circ") if "circ" in need else None
    br = _table(algebra, "bracket") if "bracket" in need else None
    st = _table(algebra, "star") if "star" in need else None
    tag = axiom.value

    if axiom in (Axiom.HOM_JACOBI, Axiom.DERIVATION):
        if not isinstance(aux, ModuleMap):
            raise PreconditionError(f"{tag} needs a ModuleMap aux argument")
        if aux.basis != basis:
            raise PreconditionError("aux map is over a different basis")

    if axiom is Axiom.COMMUTATIVE:
        for i, j in itertools.product(idx, repeat=2):
            res = (lam_product(ci, gens[i], gens[j], L)
                   - _sgn(par[i], par[j])
                   * lam_product(ci, gens[j], gens[i], -D - L))
            yield tag, (names[i], names[j]), "L", res

    elif axiom is Axiom.ASSOCIATIVE:
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(ci, a, lam_product(ci, b, c, M), L)
                   - lam_product(ci, lam_product(ci, a, b, L), c, L + M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.SKEW_SYMMETRY:
        for i, j in itertools.product(idx, repeat=2):
            res = (lam_product(br, gens[i], gens[j], L)
                   + _sgn(par[i], par[j])
                   * lam_product(br, gens[j], gens[i], -D - L))
            yield tag, (names[i], names[j]), "L", res

    elif axiom is Axiom.JACOBI:
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(br, a, lam_product(br, b, c, M), L)
                   - lam_product(br, lam_product(br, a, b, L), c, L + M)
                   - _sgn(par[i], par[j])
                   * lam_product(br, b, lam_product(br, a, c, L), M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.LEIBNIZ:
        # [a_L (b o_M c)] = [a_L b] o_{L+M} c + (-1)^{|a||b|} b o_M [a_L c]
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(br, a, lam_product(ci, b, c, M), L)
                   - lam_product(ci, lam_product(br, a, b, L), c, L + M)
                   - _sgn(par[i], par[j])
                   * lam_product(ci, b, lam_product(br, a, c, L), M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.LEIBNIZ_RIGHT:
        # [(a o_L b)_M c] = a o_L [b_{M-L} c] + (-1)^{|a||b|} b o_{M-L} [a_L c]
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(br, lam_product(ci, a, b, L), c, M)
                   - lam_product(ci, a, lam_product(br, b, c, M - L), L)
                   - _sgn(par[i], par[j])
                   * lam_product(ci, b, lam_product(br, a, c, L), M - L))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.TRANSPOSED_LEIBNIZ:
        # 2 (a o_L [b_M c]) = [(a o_L b)_{L+M} c] + (-1)^{|a||b|}[b_M (a o_L c)]
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (2 * lam_product(ci, a, lam_product(br, b, c, M), L)
                   - lam_product(br, lam_product(ci, a, b, L), c, L + M)
                   - _sgn(par[i], par[j])
                   * lam_product(br, b, lam_product(ci, a, c, L), M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.TRANSPOSED_LEIBNIZ_RIGHT:
        # 2 ([a_L b] o_M c) = [a_L (b o_{M-L} c)] - (-1)^{|a||b|}[b_{M-L} (a o_L c)]
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (2 * lam_product(ci, lam_product(br, a, b, L), c, M)
                   - lam_product(br, a, lam_product(ci, b, c, M - L), L)
                   + _sgn(par[i], par[j])
                   * lam_product(br, b, lam_product(ci, a, c, L), M - L))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.LEFT_SYMMETRIC:
        # associator super-symmetric in the first two slots
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            left = (lam_product(st, lam_product(st, a, b, L), c, L + M)
                    - lam_product(st, a, lam_product(st, b, c, M), L))
            right = (lam_product(st, lam_product(st, b, a, M), c, L + M)
                     - lam_product(st, b, lam_product(st, a, c, L), M))
            res = left - _sgn(par[i], par[j]) * right
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.NOVIKOV:
        # (a*_L b)*_{L+M} c = (-1)^{|b||c|}(a*_L c)*_{-M-D} b
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(st, lam_product(st, a, b, L), c, L + M)
                   - _sgn(par[j], par[k])
                   * lam_product(st, lam_product(st, a, c, L), b, -M - D))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.HOM_JACOBI:
        alpha = aux
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(br, alpha(a), lam_product(br, b, c, M), L)
                   - lam_product(br, lam_product(br, a, b, L), alpha(c), L + M)
                   - _sgn(par[i], par[j])
                   * lam_product(br, alpha(b), lam_product(br, a, c, L), M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.NP_COMPAT_ASSOC:
        # (a o_L b) *_{L+M} c = a o_L (b *_M c)
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(st, lam_product(ci, a, b, L), c, L + M)
                   - lam_product(ci, a, lam_product(st, b, c, M), L))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.NP_COMPAT_SYMM:
        # (a*b) o c - a*(b o c) is super-symmetric in a, b
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            left = (lam_product(ci, lam_product(st, a, b, L), c, L + M)
                    - lam_product(st, a, lam_product(ci, b, c, M), L))
            right = (lam_product(ci, lam_product(st, b, a, M), c, L + M)
                     - lam_product(st, b, lam_product(ci, a, c, L), M))
            res = left - _sgn(par[i], par[j]) * right
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.PRELIE_LEIBNIZ:
        # a *_L (b o_M c) = (a *_L b) o_{L+M} c + (-1)^{|a||b|} b o_M (a *_L c)
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(st, a, lam_product(ci, b, c, M), L)
                   - lam_product(ci, lam_product(st, a, b, L), c, L + M)
                   - _sgn(par[i], par[j])
                   * lam_product(ci, b, lam_product(st, a, c, L), M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.DERIVATION:
        d = aux
        if d.parity != 0:
            raise PreconditionError("derivation check requires an even map")
        kinds = [k for k in ("circ", "bracket", "star") if algebra.has(k)]
        if not kinds:
            raise MissingTableError("algebra has no tables")
        for kind in kinds:
            t = algebra.table(kind)
            for i, j in itertools.product(idx, repeat=2):
                a, b = gens[i], gens[j]
                res = (d(lam_product(t, a, b, L))
                       - lam_product(t, d(a), b, L)
                       - lam_product(t, a, d(b), L))
                yield f"{tag}[{kind}]", (names[i], names[j]), "L", res

    elif axiom is Axiom.HALF_DERIVATION:
        # left multiplication by a is a conformal 1/2-derivation of the bracket
        for i, j, k in itertools.product(idx, repeat=3):
            a, x, y = gens[i], gens[j], gens[k]
            res = (lam_product(ci, a, lam_product(br, x, y, M), L)
                   - HALF * (lam_product(br, lam_product(ci, a, x, L), y, L + M)
                             + _sgn(par[i], par[j])
                             * lam_product(br, x, lam_product(ci, a, y, L), M)))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.ASSOC_CONJUGATES:
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            gtuple = (names[i], names[j], names[k])
            res = (lam_product(ci, a, lam_product(ci, b, c, -D - M), L)
                   - lam_product(ci, lam_product(ci, a, b, L), c, -D - M))
            yield f"{tag}#1", gtuple, "L,M", res
            res = (lam_product(ci, a, lam_product(ci, b, c, M), -D - L)
                   - lam_product(ci, lam_product(ci, a, b, -D - M), c,
                                 -D + M - L))
            yield f"{tag}#2", gtuple, "L,M", res
            res = (lam_product(ci, a, lam_product(ci, b, c, -D - M), -D - L)
                   - lam_product(ci, lam_product(ci, a, b, -D + M - L), c,
                                 -D - M))
            yield f"{tag}#3", gtuple, "L,M", res

    elif axiom is Axiom.COMM_EXCHANGE:
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            res = (lam_product(ci, a, lam_product(ci, b, c, M), L)
                   - _sgn(par[i], par[j])
                   * lam_product(ci, b, lam_product(ci, a, c, L), M))
            yield tag, (names[i], names[j], names[k]), "L,M", res

    elif axiom is Axiom.NP_CONJUGATES:
        for i, j, k in itertools.product(idx, repeat=3):
            a, b, c = gens[i], gens[j], gens[k]
            gtuple = (names[i], names[j], names[k])
            res = (lam_product(ci, a, lam_product(st, b, c, -D - M), L)
                   - lam_product(st, lam_product(ci, a, b, L), c, -D - M))
            yield f"{tag}#1", gtuple, "L,M", res
            res = (lam_product(ci, a, lam_product(st, b, c, M), -D - L)
                   - lam_product(st, lam_product(ci, a, b, -D - M), c,
                                 -D + M - L))
            yield f"{tag}#2", gtuple, "L,M", res
            res = (lam_product(ci, a, lam_product(st, b, c, -D - M), -D - L)
                   - lam_product(st, lam_product(ci, a, b, -D + M - L), c,
                                 -D - M))
            yield f"{tag}#3", gtuple, "L,M", res

    else:  # pragma: no cover
        raise ValueError(f"unhandled axiom {axiom!r}")


def check_axiom(algebra: AlgebraDef, axiom: Axiom,
                aux: ModuleMap | None = None) -> CheckReport:
    """Check one identity on all generator tuples, reporting every violation."""
    violations = []
    checked = 0
    for identity, gtuple, binders, residual in _axiom_residuals(algebra, axiom, aux):
        checked += 1
        if residual:
            violations.append(Violation(identity, gtuple, binders, residual))
    return CheckReport(name=axiom.value, violations=violations, checked=checked)


def check_suite(algebra: AlgebraDef, suite: Suite,
                aux: ModuleMap | None = None) -> CheckReport:
    reports = [check_axiom(algebra, axiom, aux) for axiom in SUITES[suite]]
    return CheckReport.merge(suite.value, reports)


# ---------------------------------------------------------------------------
# Derived identities forced by the transposed Leibniz rule
# ---------------------------------------------------------------------------

DERIVED_IDENTITIES = ("cyclic_circ_bracket", "cyclic_bracket_circ",
                      "scaled_bracket_jacobi", "scaled_argument_jacobi",
                      "bracket_product_cycle", "product_pair_exchange",
                      "product_pair_exchange_right")


def _derived_residuals(algebra: AlgebraDef):
    basis = algebra.basis
    par = basis.parities
    names = basis.names
    gens = _gens(basis)
    idx = range(basis.size)
    ci = _table(algebra, "circ")
    br = _table(algebra, "bracket")

    def cp(a, b, binder):
        return lam_product(ci, a, b, binder)

    def bp(a, b, binder):
        return lam_product(br, a, b, binder)

    # three-slot cyclic identities
    for i, j, k in itertools.product(idx, repeat=3):
        x, y, z = gens[i], gens[j], gens[k]
        px, py, pz = par[i], par[j], par[k]
        gtuple = (names[i], names[j], names[k])

        res = (_sgn(px, pz) * cp(x, bp(y, z, M), L)
               + _sgn(px, py) * cp(y, bp(z, x, -D - L), M)
               + _sgn(py, pz) * cp(z, bp(x, y, L), -D - L - M))
        yield "cyclic_circ_bracket", gtuple, "L,M", res

        res = (_sgn(px, pz) * cp(bp(x, y, L), z, M)
               + _sgn(px, py) * cp(bp(y, z, M - L), x, -D - L)
               + _sgn(py, pz) * cp(bp(z, x, -D - L), y, -D - M + L))
        yield "cyclic_bracket_circ", gtuple, "L,M", res

    # four-slot identities with a scaling element h
    for h_i, i, j, k in itertools.product(idx, repeat=4):
        h, x, y, z = gens[h_i], gens[i], gens[j], gens[k]
        px, py, pz = par[i], par[j], par[k]
        gtuple = (names[h_i], names[i], names[j], names[k])

        res = (_sgn(px, pz) * bp(cp(h, bp(x, y, G), L), z, L + M)
               + _sgn(px, py) * bp(cp(h, bp(y, z, M - G), L), x, -D - G)
               + _sgn(py, pz) * bp(cp(h, bp(z, x, -D - G), L), y, -D - M + G))
        yield "scaled_bracket_jacobi", gtuple, "L,M,G", res

        res = (_sgn(px, pz) * bp(cp(h, x, L), bp(y, z, M - G), L + G)
               + _sgn(px, py) * bp(cp(h, y, L), bp(z, x, -D - G), L + M - G)
               + _sgn(py, pz) * bp(cp(h, z, L), bp(x, y, G), -D - M))
        yield "scaled_argument_jacobi", gtuple, "L,M,G", res

        res = (_sgn(px, pz) * cp(bp(h, x, L), bp(y, z, M - G), L + G)
               + _sgn(px, py) * cp(bp(h, y, L), bp(z, x, -D - G), L + M - G)
               + _sgn(py, pz) * cp(bp(h, z, L), bp(x, y, G), -D - M))
        yield "bracket_product_cycle", gtuple, "L,M,G", res

    # four-slot identities mixing two products with one bracket
    for u_i, v_i, i, j in itertools.product(idx, repeat=4):
        u, v, x, y = gens[u_i], gens[v_i], gens[i], gens[j]
        pu, pv, px = par[u_i], par[v_i], par[i]
        gtuple = (names[u_i], names[v_i], names[i], names[j])

        res = (_sgn(pv, px) * bp(cp(u, x, L), cp(v, y, G), M)
               + _sgn_exp(pu * (px + pv)) * bp(cp(v, x, G), cp(u, y, L),
                                               G + M - L)
               - 2 * cp(cp(u, v, L), bp(x, y, M - L), L + G))
        yield "product_pair_exchange", gtuple, "L,M,G", res

        res = (_sgn(pv, px) * cp(x, bp(u, cp(v, y, G), L), M - L)
               + _sgn(pu, pv) * cp(bp(cp(v, x, G), u, G + M - L), y, G + M)
               - _sgn(pu, px) * cp(cp(u, v, L), bp(x, y, M - L), L + G))
        yield "product_pair_exchange_right", gtuple, "L,M,G", res


def check_derived_identities(algebra: AlgebraDef) -> CheckReport:
    """The seven identities every transposed structure satisfies.

    Precondition (enforced): the algebra passes the tpcsa suite; the
    identities are consequences of it, so running them on anything else
    would report noise rather than findings.
    """
    base = check_suite(algebra, Suite.TPCSA)
    if not base.passed:
        raise PreconditionError(
            "derived identities require a verified tpcsa structure; "
            f"{len(base.violations)} base violations found")
    violations = []
    checked = 0
    for identity, gtuple, binders, residual in _derived_residuals(algebra):
        checked += 1
        if residual:
            violations.append(Violation(identity, gtuple, binders, residual))
    return CheckReport(name="derived_identities", violations=violations,
                       checked=checked)


def check_transposed_leibniz_nth(algebra: AlgebraDef,
                                 n_max: int | None = None,
                                 m_max: int | None = None) -> CheckReport:
    """Transposed Leibniz rule expressed through n-th products:

        2 (a_(n) (b_[m] c)) = sum_j C(n,j) (a_(j) b)_[n+m-j] c
                              + (-1)^{|a||b|} b_[m] (a_(n) c)

    Checked for all n, m up to the tables' degree bounds; consistency of the
    n-th-product formulation with the lambda form.
    """
    basis = algebra.basis
    par = basis.parities
    names = basis.names
    gens = _gens(basis)
    ci = _table(algebra, "circ")
    br = _table(algebra, "bracket")
    bound = max(ci.lam_degree(), 0) + max(br.lam_degree(), 0) + 1
    n_max = bound if n_max is None else n_max
    m_max = bound if m_max is None else m_max

    violations = []
    checked = 0
    for i, j, k in itertools.product(range(basis.size), repeat=3):
        a, b, c = gens[i], gens[j], gens[k]
        for n in range(n_max + 1):
            for m in range(m_max + 1):
                checked += 1
                lhs = 2 * nth_product(ci, a, nth_product(br, b, c, m), n)
                rhs = _sgn(par[i], par[j]) * nth_product(
                    br, b, nth_product(ci, a, c, n), m)
                for jj in range(n + 1):
                    rhs = rhs + comb(n, jj) * nth_product(
                        br, nth_product(ci, a, b, jj), c, n + m - jj)
                res = lhs - rhs
                if res:
                    violations.append(Violation(
                        "transposed_leibniz_nth",
                        (names[i], names[j], names[k]), f"n={n},m={m}", res))
    return CheckReport(name="transposed_leibniz_nth", violations=violations,
                       checked=checked)


# ---------------------------------------------------------------------------
# Compatibility of the two Leibniz-type couplings
# ---------------------------------------------------------------------------

@dataclass
class CompatReport:
    """Verdicts for the biconditional linking the two coupled structures.

    consistent is True iff (leibniz and transposed_leibniz) holds exactly
    when the three product expressions vanish identically.
    """

    leibniz: bool
    transposed_leibniz: bool
    products_vanish: bool
    witnesses: list = field(default_factory=list)
    checked: int = 0

    @property
    def consistent(self) -> bool:
        return (self.leibniz and self.transposed_leibniz) == self.products_vanish

    def as_check_report(self) -> CheckReport:
        # witnesses are expected whenever one coupling fails; they become
        # violations only if the biconditional itself breaks
        violations = [] if self.consistent else list(self.witnesses)
        return CheckReport(name="compat_equivalence", violations=violations,
                           checked=self.checked)

    def render_text(self) -> str:
        lines = [
            "suite: compat_equivalence",
            f"leibniz: {'PASS' if self.leibniz else 'FAIL'}",
            f"transposed_leibniz: {'PASS' if self.transposed_leibniz else 'FAIL'}",
            f"products_vanish: {'PASS' if self.products_vanish else 'FAIL'}",
            f"biconditional: {'CONSISTENT' if self.consistent else 'BROKEN'}",
        ]
        return "\n".join(lines) + "\n"


def check_compat_equivalence(algebra: AlgebraDef) -> CompatReport:
    """Both couplings hold at once iff three product expressions vanish:

        a o_L [b_M c] = [b_{M-L} a] o_M c = [(a o_L b)_{L+M} c] = 0.
    """
    for suite in (Suite.COMM_ASSOC, Suite.LIE):
        rep = check_suite(algebra, suite)
        if not rep.passed:
            raise PreconditionError(
                f"compat equivalence requires the {suite.value} suite to pass")
    basis = algebra.basis
    gens = _gens(basis)
    names = basis.names
    ci = _table(algebra, "circ")
    br = _table(algebra, "bracket")

    leibniz = check_axiom(algebra, Axiom.LEIBNIZ)
    transposed = check_axiom(algebra, Axiom.TRANSPOSED_LEIBNIZ)
    witnesses = list(leibniz.violations) + list(transposed.violations)

    vanish = True
    checked = leibniz.checked + transposed.checked
    for i, j, k in itertools.product(range(basis.size), repeat=3):
        a, b, c = gens[i], gens[j], gens[k]
        gtuple = (names[i], names[j], names[k])
        terms = (
            ("product_with_bracket",
             lam_product(ci, a, lam_product(br, b, c, M), L)),
            ("bracket_then_product",
             lam_product(ci, lam_product(br, b, a, M - L), c, M)),
            ("bracket_of_product",
             lam_product(br, lam_product(ci, a, b, L), c, L + M)),
        )
        for label, value in terms:
            checked += 1
            if value:
                vanish = False
                witnesses.append(Violation(label, gtuple, "L,M", value))
    return CompatReport(leibniz=leibniz.passed,
                        transposed_leibniz=transposed.passed,
                        products_vanish=vanish,
                        witnesses=witnesses, checked=checked)
