"""Exact sparse polynomial arithmetic over the rationals.

Polynomials live in Q[D, L, M, G, N], where D is the action variable of a
C[D]-module and L, M, G, N are four formal lambda-variables (three binders
plus one scratch slot used for composed binders).  A polynomial is a mapping
from exponent tuples to nonzero Fraction coefficients; the zero polynomial is
the empty mapping.  All arithmetic is exact, and two polynomials are equal
iff their mappings are identical, so identity testing is plain equality.

The module also provides the text grammar used by algebra files:

    expr     := term (("+"|"-") term)*
    term     := factor ("*" factor)*
    factor   := atom ("^" nat)? | "-" factor
    atom     := rational | var | "(" expr ")"
    rational := int ("/" posint)?
    var      := "D" | "L" | "M" | "G" | "N"

Algebra files only ever use D and L; the remaining names appear in residual
printouts.  Whitespace is insignificant.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

NVARS = 5
ACTION, LAM0, LAM1, LAM2, LAM3 = range(NVARS)
VAR_NAMES = ("D", "L", "M", "G", "N")
VAR_IDS = {name: idx for idx, name in enumerate(VAR_NAMES)}

Exponents = tuple
Scalar = Union[int, Fraction, "ModP"]

_ZERO_EXP = (0,) * NVARS


class PolyParseError(ValueError):
    """Syntax error in the polynomial grammar, with a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class ModP:
    """Element of the prime field F_p, for the classification fast path.

    Absorbs ints and Fractions on either side of an operation, so the generic
    polynomial code runs unchanged once table coefficients are reduced mod p.
    Only odd primes are accepted (signs matter in every super identity).
    """

    __slots__ = ("p", "v")

    def __init__(self, p: int, value) -> None:
        if p < 3 or p % 2 == 0:
            raise ValueError(f"modulus must be an odd prime >= 3, got {p}")
        self.p = p
        self.v = self._reduce(value)

    def _reduce(self, value) -> int:
        if isinstance(value, ModP):
            if value.p != self.p:
                raise ValueError("mixed moduli")
            return value.v
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def __add__(self, other):
        return ModP(self.p, self.v + self._reduce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.p, self.v - self._reduce(other))

    def __rsub__(self, other):
        return ModP(self.p, self._reduce(other) - self.v)

    def __mul__(self, other):
        return ModP(self.p, self.v * self._reduce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            return self.v == self._reduce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"ModP({self.p}, {self.v})"


class Poly:
    """Immutable sparse polynomial in the five fixed variables.

    Instances are treated as values; every operation returns a new Poly in
    canonical form (no stored coefficient equals zero).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Scalar] | None = None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != NVARS or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps!r}")
                if not isinstance(coeff, (ModP,)):
                    coeff = Fraction(coeff)
                if coeff != 0:
                    clean[tuple(exps)] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # internal: terms already canonical
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def const(cls, value) -> "Poly":
        if not isinstance(value, ModP):
            value = Fraction(value)
        if value == 0:
            return cls._raw({})
        return cls._raw({_ZERO_EXP: value})

    @classmethod
    def var(cls, v: int) -> "Poly":
        exps = [0] * NVARS
        exps[v] = 1
        return cls._raw({tuple(exps): Fraction(1)})

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps, 0) + coeff
            if acc == 0:
                out.pop(exps, None)
            else:
                out[exps] = acc
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __neg__(self) -> "Poly":
        return Poly._raw({exps: -c for exps, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction, ModP)):
            if other == 0:
                return Poly.zero()
            return Poly._raw({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly.zero()
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2],
                       ea[3] + eb[3], ea[4] + eb[4])
                acc = out.get(key, 0) + ca * cb
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return Poly._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        acc = Poly.const(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def degree(self, v: int | None = None) -> int:
        """Total degree, or degree in variable v.  Zero polynomial has -1."""
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e) for e in self.terms)
        return max(e[v] for e in self.terms)

    def uses(self, v: int) -> bool:
        return any(e[v] for e in self.terms)

    def variables(self) -> set:
        out = set()
        for exps in self.terms:
            for v in range(NVARS):
                if exps[v]:
                    out.add(v)
        return out

    def coeff(self, v: int, n: int) -> "Poly":
        """The polynomial multiplying v**n, with v removed from it."""
        out = {}
        for exps, c in self.terms.items():
            if exps[v] == n:
                stripped = list(exps)
                stripped[v] = 0
                out[tuple(stripped)] = c
        return Poly._raw(out)

    def is_affine(self) -> bool:
        return all(sum(e) <= 1 for e in self.terms)

    def subst(self, v: int, replacement: "Poly") -> "Poly":
        """Replace v by an affine expression, expanding to canonical form."""
        if not isinstance(replacement, Poly):
            replacement = Poly.const(replacement)
        if not replacement.is_affine():
            raise ValueError("substitution expression must be affine")
        if not self.uses(v):
            return self
        if replacement.terms == Poly.var(v).terms:
            return self
        nmax = self.degree(v)
        powers = [Poly.const(1)]
        for _ in range(nmax):
            powers.append(powers[-1] * replacement)
        acc = Poly.zero()
        for n in range(nmax + 1):
            part = self.coeff(v, n)
            if part:
                acc = acc + part * powers[n]
        return acc

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> "Poly":
        out = {}
        for exps, c in self.terms.items():
            nc = fn(c)
            if nc != 0:
                out[exps] = nc
        return Poly._raw(out)

    def monomials(self) -> Iterator[tuple[Exponents, Scalar]]:
        """Terms in canonical print order."""
        for exps in sorted(self.terms, key=_mono_key):
            yield exps, self.terms[exps]

    def __str__(self) -> str:
        return poly_to_str(self)

    def __repr__(self) -> str:
        return f"Poly({poly_to_str(self)!r})"


def _coerce(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, ModP)):
        return Poly.const(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Poly")


def _mono_key(exps: Exponents):
    # descending total degree, then D-major descending exponents
    return (-sum(exps), tuple(-e for e in exps))


Poly.D = Poly.var(ACTION)
Poly.L = Poly.var(LAM0)
Poly.M = Poly.var(LAM1)
Poly.G = Poly.var(LAM2)
Poly.N = Poly.var(LAM3)


def poly_to_str(p: Poly, names: tuple = VAR_NAMES) -> str:
    """Canonical rendering; parse_poly(poly_to_str(p)) == p."""
    if not p.terms:
        return "0"
    pieces = []
    for exps, coeff in p.monomials():
        neg = coeff < 0
        mag = -coeff if neg else coeff
        factors = []
        if mag != 1 or not any(exps):
            factors.append(str(mag))
        for v, e in enumerate(exps):
            if e == 1:
                factors.append(names[v])
            elif e > 1:
                factors.append(f"{names[v]}^{e}")
        text = "*".join(factors)
        if not pieces:
            pieces.append(("-" if neg else "") + text)
        else:
            pieces.append(("-" if neg else "+") + text)
    return "".join(pieces)


class _Parser:
    def __init__(self, text: str, names: Mapping[str, int]):
        self.text = text
        self.pos = 0
        self.names = names

    def error(self, message: str):
        raise PolyParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def expr(self) -> Poly:
        acc = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                acc = acc + self.term()
            elif ch == "-":
                self.pos += 1
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        if self.peek() == "-":
            self.pos += 1
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.nat()
        return base

    def atom(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            return Poly.const(self.rational())
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isalnum():
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.names:
                self.pos = start
                self.error(f"unknown variable {name!r}")
            return Poly.var(self.names[name])
        if ch == "":
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an exponent")
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        num = int(self.text[start:self.pos])
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            slash = self.pos
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == dstart:
                self.pos = slash + 1
                self.error("expected a denominator")
            den = int(self.text[dstart:self.pos])
            if den == 0:
                self.pos = dstart
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)


def parse_poly(text: str, names: Mapping[str, int] | None = None) -> Poly:
    """Parse the grammar above into a canonical Poly.

    `names` overrides the variable alphabet (used for the two-place family
    polynomials written in s and t).
    """
    parser = _Parser(text, VAR_IDS if names is None else names)
    result = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error(f"unexpected character {text[parser.pos]!r}")
    return result


def to_prime_field(p: Poly, modulus: int) -> Poly:
    """Reduce all coefficients into F_modulus."""
    return p.map_coeffs(lambda c: ModP(modulus, c))
