"""Free Z2-graded C[D]-modules of finite rank.

A basis is an ordered list of named, parity-tagged generators; an element is
a finite mapping from basis indices to polynomial coefficients.  Module maps
are square matrices of D-only polynomials (one column per generator), so they
commute with the D-action by construction.  Only free modules of finite rank
are modeled; that is what makes the tensor product constructions sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .poly import ACTION, Poly

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class GradedBasis:
    """Ordered generator names with parities (0 even, 1 odd)."""

    names: tuple
    parities: tuple

    def __post_init__(self):
        if not self.names:
            raise ValueError("basis must be nonempty")
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities must align")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis name")
        for name in self.names:
            if not name or "," in name or name != name.strip():
                raise ValueError(f"bad basis name {name!r}")
        for p in self.parities:
            if p not in (EVEN, ODD):
                raise ValueError(f"parity must be 0 or 1, got {p!r}")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no basis generator named {name!r}") from None

    def parity(self, i: int) -> int:
        return self.parities[i]

    def generator(self, i: int) -> "Element":
        return Element(self, {i: Poly.const(1)})


def basis_of(pairs: Iterable[tuple]) -> GradedBasis:
    names, parities = zip(*pairs)
    return GradedBasis(tuple(names), tuple(parities))


class Element:
    """Finite mapping basis index -> Poly; zero coefficients are dropped."""

    __slots__ = ("basis", "comps")

    def __init__(self, basis: GradedBasis, comps: Mapping[int, Poly] | None = None):
        clean = {}
        if comps:
            for i, p in comps.items():
                if not 0 <= i < basis.size:
                    raise ValueError(f"component index {i} out of range")
                if not isinstance(p, Poly):
                    p = Poly.const(p)
                if p:
                    clean[i] = p
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def zero(cls, basis: GradedBasis) -> "Element":
        return cls(basis, {})

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.basis == other.basis and self.comps == other.comps

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.comps)
        for i, p in other.comps.items():
            acc = out.get(i, Poly.zero()) + p
            if acc:
                out[i] = acc
            else:
                out.pop(i, None)
        return Element(self.basis, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.basis, {i: -p for i, p in self.comps.items()})

    def __mul__(self, scalar) -> "Element":
        return Element(self.basis, {i: p * scalar for i, p in self.comps.items()})

    __rmul__ = __mul__

    def _check(self, other: "Element") -> None:
        if self.basis != other.basis:
            raise ValueError("basis mismatch")

    def map_polys(self, fn) -> "Element":
        return Element(self.basis, {i: fn(p) for i, p in self.comps.items()})

    def has_parity(self, parity: int) -> bool:
        """True iff the element is homogeneous of the given parity (zero passes)."""
        return all(self.basis.parity(i) == parity for i in self.comps)

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        parts = []
        for i in sorted(self.comps):
            parts.append(f"({self.comps[i]})*{self.basis.names[i]}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Element<{self}>"


def combine(a: Element, b: Element, scale) -> Element:
    """a + scale*b, coefficientwise and exact."""
    return a + b * scale


@dataclass(frozen=True)
class ModuleMap:
    """C[D]-linear endomorphism given by D-only matrix entries.

    columns[j][i] is the coefficient of generator i in the image of
    generator j.  The declared parity is even for every use in this package.
    """

    basis: GradedBasis
    columns: tuple
    parity: int = EVEN

    def __post_init__(self):
        n = self.basis.size
        if len(self.columns) != n or any(len(col) != n for col in self.columns):
            raise ValueError("matrix shape must match the basis rank")
        for col in self.columns:
            for entry in col:
                if entry.variables() - {ACTION}:
                    raise ValueError("module map entries may only use D")
        if self.parity not in (EVEN, ODD):
            raise ValueError("parity must be 0 or 1")

    @classmethod
    def zero(cls, basis: GradedBasis) -> "ModuleMap":
        n = basis.size
        z = Poly.zero()
        return cls(basis, tuple(tuple(z for _ in range(n)) for _ in range(n)))

    @classmethod
    def scaling(cls, basis: GradedBasis, factor: Poly) -> "ModuleMap":
        """factor(D) times the identity; factor=D gives the action itself."""
        n = basis.size
        z = Poly.zero()
        return cls(basis, tuple(
            tuple(factor if i == j else z for i in range(n)) for j in range(n)))

    @classmethod
    def identity(cls, basis: GradedBasis) -> "ModuleMap":
        return cls.scaling(basis, Poly.const(1))

    @classmethod
    def from_dict(cls, basis: GradedBasis, images: Mapping[str, Mapping[str, Poly]],
                  parity: int = EVEN) -> "ModuleMap":
        """images[source name][target name] = D-polynomial coefficient."""
        n = basis.size
        cols = []
        for j in range(n):
            image = images.get(basis.names[j], {})
            col = [Poly.zero()] * n
            for target, p in image.items():
                col[basis.index(target)] = p
            cols.append(tuple(col))
        return cls(basis, tuple(cols), parity)

    def entry(self, i: int, j: int) -> Poly:
        return self.columns[j][i]

    def __call__(self, elem: Element) -> Element:
        if elem.basis != self.basis:
            raise ValueError("basis mismatch")
        acc: dict = {}
        for j, pj in elem.comps.items():
            for i, mij in enumerate(self.columns[j]):
                if not mij:
                    continue
                cur = acc.get(i, Poly.zero()) + pj * mij
                if cur:
                    acc[i] = cur
                else:
                    acc.pop(i, None)
        return Element(self.basis, acc)
