"""Exact arithmetic in free graded-commutative algebras over the rationals.

Values are `Element` instances: finitely supported rational linear
combinations of monomials in graded generators.  Odd-degree generators
anticommute and square to zero, even-degree generators commute; all
coefficients are `fractions.Fraction`, never floats.

Monomials are stored as tuples ``((gen_index, exponent), ...)`` sorted by
generator index; the empty tuple is the unit monomial.  Generator order is
declaration order and monomial order is graded-lexicographic, so every
serialization is deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import ContextError, DegreeError, ParseError

Monomial = tuple  # ((gen_index, exponent), ...), index-ascending
UNIT_MONOMIAL: Monomial = ()

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Generator:
    """A graded generator.  Degree must be >= 1; parity rules commutation."""

    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r} has degree {self.degree}; "
                             "degree-0 generators are not allowed")
        if not _NAME_RE.match(self.name):
            raise ValueError(f"invalid generator name {self.name!r}")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    def __repr__(self):
        return f"Generator({self.name!r}, {self.degree})"


class FreeAlgebra:
    """Free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, generators, label: str = ""):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.generators = gens
        self.label = label
        self._index = {g.name: i for i, g in enumerate(gens)}
        self._basis_cache: dict[int, tuple[Monomial, ...]] = {}

    # -- introspection -------------------------------------------------

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def generator_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} in algebra {self.label!r}") from None

    def generator(self, name: str) -> Generator:
        return self.generators[self.generator_index(name)]

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeAlgebra({self.label!r}; {gens})"

    # -- key protocol (shared with the other algebra kinds) ------------

    def one_key(self) -> Monomial:
        return UNIT_MONOMIAL

    def key_degree(self, mono: Monomial) -> int:
        return sum(self.generators[i].degree * e for i, e in mono)

    def mul_key_pairs(self, m1: Monomial, m2: Monomial):
        """Product of two monomials: [(monomial, coefficient)] or []."""
        res = self.mul_monomials(m1, m2)
        if res is None:
            return []
        sign, mono = res
        return [(mono, Fraction(sign))]

    def keys_of_degree(self, n: int) -> tuple[Monomial, ...]:
        return self.basis_of_degree(n)

    def format_key(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def sort_key(self, mono: Monomial):
        dense = [0] * len(self.generators)
        for i, e in mono:
            dense[i] = e
        return (self.key_degree(mono), tuple(-e for e in dense))

    # -- monomial arithmetic -------------------------------------------

    def mul_monomials(self, m1: Monomial, m2: Monomial):
        """Merge two monomials with the Koszul sign.

        Returns (sign, monomial) or None when an odd generator squares.
        """
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        # Koszul: each odd factor of m2 moves left past the odd factors of
        # m1 that have a larger generator index.
        odd1 = [i for i, _ in m1 if self.generators[i].is_odd]
        swaps = 0
        for j, _ in m2:
            if self.generators[j].is_odd:
                swaps += sum(1 for i in odd1 if i > j)
        merged: dict[int, int] = dict(m1)
        for j, e in m2:
            if j in merged:
                if self.generators[j].is_odd:
                    return None  # odd square
                merged[j] += e
            else:
                merged[j] = e
        mono = tuple(sorted(merged.items()))
        return (-1) ** swaps, mono

    def monomial(self, powers) -> Monomial:
        """Build a monomial key from {name_or_generator: exponent}."""
        merged: dict[int, int] = {}
        for key, e in dict(powers).items():
            name = key.name if isinstance(key, Generator) else key
            i = self.generator_index(name)
            if e < 0:
                raise ValueError(f"negative exponent for {name}")
            if e == 0:
                continue
            if self.generators[i].is_odd and e > 1:
                raise ValueError(f"odd generator {name} raised to power {e}")
            merged[i] = merged.get(i, 0) + e
        return tuple(sorted(merged.items()))

    def basis_of_degree(self, n: int) -> tuple[Monomial, ...]:
        """All monomials of total degree n, in graded-lex order."""
        if n < 0:
            return ()
        cached = self._basis_cache.get(n)
        if cached is not None:
            return cached
        out: list[Monomial] = []

        def rec(gen_pos: int, remaining: int, acc: list):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if gen_pos >= len(self.generators):
                return
            g = self.generators[gen_pos]
            max_e = 1 if g.is_odd else remaining // g.degree
            for e in range(min(max_e, remaining // g.degree), -1, -1):
                if e:
                    acc.append((gen_pos, e))
                    rec(gen_pos + 1, remaining - e * g.degree, acc)
                    acc.pop()
                else:
                    rec(gen_pos + 1, remaining, acc)

        rec(0, n, [])
        out.sort(key=self.sort_key)
        result = tuple(out)
        self._basis_cache[n] = result
        return result

    # -- element constructors ------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {UNIT_MONOMIAL: Fraction(1)})

    def gen(self, name: str) -> "Element":
        i = self.generator_index(name)
        return Element(self, {((i, 1),): Fraction(1)})

    def resolve_name(self, name: str) -> "Element":
        return self.gen(name)

    def name_power(self, name: str, exp: int) -> "Element":
        g = self.generator(name)
        if g.is_odd and exp > 1:
            raise ValueError(f"odd generator {name} raised to power {exp}")
        i = self.generator_index(name)
        return Element(self, {((i, exp),): Fraction(1)})

    def element(self, terms) -> "Element":
        return Element(self, {m: Fraction(c) for m, c in terms.items() if c})


class Element:
    """A rational linear combination of basis keys of one algebra.

    The same class serves free algebras (keys are monomials), finite
    basis-presented algebras (keys are basis indices) and tensor algebras
    (keys are pairs).  Instances are immutable by convention.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if c}

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for 0; DegreeError otherwise."""
        if not self.terms:
            return None
        degs = {self.algebra.key_degree(k) for k in self.terms}
        if len(degs) > 1:
            raise DegreeError(f"inhomogeneous element (degrees {sorted(degs)}): {self}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.algebra.key_degree(k) for k in self.terms}) <= 1

    def homogeneous_part(self, n: int) -> "Element":
        return Element(self.algebra,
                       {k: c for k, c in self.terms.items()
                        if self.algebra.key_degree(k) == n})

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    # -- arithmetic -----------------------------------------------------

    def _check_context(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise ContextError(
                f"mixed algebra contexts: {self.algebra!r} vs {other.algebra!r}")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_context(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return Element(self.algebra, terms)

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Element(self.algebra, {k: c * v for k, v in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check_context(other)
        acc: dict = {}
        alg = self.algebra
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                for k, c in alg.mul_key_pairs(k1, k2):
                    s = acc.get(k, 0) + c12 * c
                    if s:
                        acc[k] = s
                    else:
                        acc.pop(k, None)
        return Element(alg, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one() if hasattr(self.algebra, "one") else None
        if result is None:
            result = Element(self.algebra, {self.algebra.one_key(): Fraction(1)})
        for _ in range(exp):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    # -- rendering --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        alg = self.algebra
        keys = sorted(self.terms, key=alg.sort_key)
        chunks = []
        for k in keys:
            c = self.terms[k]
            mono = alg.format_key(k)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"<Element {self}>"


def multiply(a: Element, b: Element) -> Element:
    """Graded-commutative product; operands must share an algebra context."""
    return a * b


def basis_of_degree(algebra: FreeAlgebra, n: int) -> tuple[Monomial, ...]:
    """Canonically ordered monomial basis of total degree n."""
    return algebra.basis_of_degree(n)


# ---------------------------------------------------------------------------
# Expression parsing
#
# Grammar:   element = term (("+"|"-") term)*
#            term    = [sign] [rational "*"] factor ("*" factor)*
#            factor  = name ["^" positive-int]
#            rational as "p/q" or an integer; whitespace insignificant.
# As a convenience a bare rational is accepted as a term, so "0" and
# constant expressions parse.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[+\-*^()])|(?P<bad>\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}",
                             position=m.start("bad"))
        if m.group("number"):
            tokens.append(("number", m.group("number").replace(" ", ""), m.start("number")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_element(text: str, context) -> Element:
    """Parse an expression string into an Element over `context`.

    `context` is any algebra exposing `resolve_name`, `name_power`, `one`
    and `zero`; both free algebras and finite basis-presented algebras
    qualify (powers in a finite context expand through the product table).
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_rational(tok) -> Fraction:
        try:
            if "/" in tok[1]:
                p, q = tok[1].split("/")
                return Fraction(int(p), int(q))
            return Fraction(int(tok[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed rational {tok[1]!r}: {exc}",
                             position=tok[2]) from None

    def parse_factor() -> Element:
        tok = advance()
        if tok[0] != "name":
            raise ParseError(f"expected generator name, found {tok[1]!r}",
                             position=tok[2])
        name = tok[1]
        exp = 1
        if peek()[:2] == ("op", "^"):
            advance()
            etok = advance()
            if etok[0] != "number" or "/" in etok[1]:
                raise ParseError("expected positive integer exponent",
                                 position=etok[2])
            exp = int(etok[1])
            if exp < 1:
                raise ParseError("exponent must be >= 1", position=etok[2])
        try:
            return context.name_power(name, exp)
        except KeyError:
            raise ParseError(f"unknown generator {name!r}", position=tok[2]) from None
        except ValueError as exc:
            raise ParseError(str(exc), position=tok[2]) from None

    def parse_term() -> Element:
        sign = 1
        while peek()[:2] in (("op", "+"), ("op", "-")):
            if advance()[1] == "-":
                sign = -sign
        coeff = Fraction(1)
        have_factor = False
        acc = context.one()
        if peek()[0] == "number":
            coeff = parse_rational(advance())
            if peek()[:2] == ("op", "*"):
                advance()
                acc = acc * parse_factor()
                have_factor = True
            elif peek()[0] == "name":
                raise ParseError("missing '*' between coefficient and generator",
                                 position=peek()[2])
        else:
            acc = acc * parse_factor()
            have_factor = True
        while have_factor and peek()[:2] == ("op", "*"):
            advance()
            acc = acc * parse_factor()
        return acc * (sign * coeff)

    result = parse_term()
    while peek()[:2] in (("op", "+"), ("op", "-")):
        # sign is consumed inside parse_term
        result = result + parse_term()
    tok = peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected trailing input {tok[1]!r}", position=tok[2])
    return result


def parse_linear(text: str, resolve) -> dict:
    """Parse a linear combination "c1*name1 + c2*name2 + ...".

    `resolve` maps a name to a key; used for product-table values, which
    are linear in basis names by definition.  Returns {key: Fraction}.
    """
    tokens = _tokenize(text)
    pos = 0
    out: dict = {}

    def rational(tok) -> Fraction:
        if "/" in tok[1]:
            p, q = tok[1].split("/")
            if int(q) == 0:
                raise ParseError(f"malformed rational {tok[1]!r}", position=tok[2])
            return Fraction(int(p), int(q))
        return Fraction(int(tok[1]))

    while tokens[pos][0] != "end":
        sign = 1
        while tokens[pos][:2] in (("op", "+"), ("op", "-")):
            if tokens[pos][1] == "-":
                sign = -sign
            pos += 1
        coeff = Fraction(1)
        tok = tokens[pos]
        if tok[0] == "number":
            coeff = rational(tok)
            pos += 1
            if tokens[pos][:2] == ("op", "*"):
                pos += 1
                tok = tokens[pos]
            else:
                if coeff != 0:
                    raise ParseError("linear combination expects name after coefficient",
                                     position=tok[2])
                continue
        if tok[0] != "name":
            raise ParseError(f"expected basis name, found {tok[1]!r}", position=tok[2])
        try:
            key = resolve(tok[1])
        except KeyError:
            raise ParseError(f"unknown basis element {tok[1]!r}", position=tok[2]) from None
        pos += 1
        val = out.get(key, Fraction(0)) + sign * coeff
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


def basis_count_series(generators, upto: int) -> list[int]:
    """Coefficients of prod (1-t^|g|)^-1 over even g times prod (1+t^|g|) over odd g.

    Independent oracle for basis_of_degree sizes.
    """
    coeffs = [0] * (upto + 1)
    coeffs[0] = 1
    for g in generators:
        if g.is_odd:
            new = coeffs[:]
            for n in range(g.degree, upto + 1):
                new[n] += coeffs[n - g.degree]
            coeffs = new
        else:
            # multiply by geometric series in t^degree
            for n in range(g.degree, upto + 1):
                coeffs[n] += coeffs[n - g.degree]
    return coeffs
