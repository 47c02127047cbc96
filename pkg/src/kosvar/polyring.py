"""Prime-field scalars, sparse multivariate polynomials, and graded rings.

Polynomials are ring-agnostic: a modulus p plus a sparse map from exponent
vectors to canonical residues.  Degree, order and homogeneity questions are
answered by a GradedRing, which carries the variable names, positive weights
and (for quotient rings) homogeneous relations.
"""

from __future__ import annotations

import itertools
import re

from .errors import (
    InhomogeneousInput,
    InhomogeneousRelation,
    NonPrimeModulus,
    ParseError,
    UnknownVariable,
)

DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Arithmetic in F_p on canonical residues 0 <= a < p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeModulus(f"modulus {p} is not prime")
        self.p = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))


class Polynomial:
    """Sparse polynomial over F_p: exponent tuple -> nonzero residue."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[tuple[int, ...], int]):
        self.p = p
        self.terms = {e: c % p for e, c in terms.items() if c % p != 0}

    @staticmethod
    def zero(p: int) -> "Polynomial":
        return Polynomial(p, {})

    @staticmethod
    def constant(p: int, c: int, nvars: int) -> "Polynomial":
        return Polynomial(p, {(0,) * nvars: c})

    @staticmethod
    def monomial(p: int, exp: tuple[int, ...], c: int = 1) -> "Polynomial":
        return Polynomial(p, {exp: c})

    @staticmethod
    def variable(p: int, nvars: int, i: int) -> "Polynomial":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return Polynomial(p, {exp: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = (t.get(e, 0) + c) % self.p
        return Polynomial(self.p, t)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = (t.get(e, 0) - c) % self.p
        return Polynomial(self.p, t)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.p, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % self.p
        return Polynomial(self.p, out)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.p, {e: cc * c for e, cc in self.terms.items()})

    def mul_term(self, exp: tuple[int, ...], c: int) -> "Polynomial":
        return Polynomial(
            self.p, {tuple(a + b for a, b in zip(e, exp)): cc * c for e, cc in self.terms.items()}
        )

    def constant_part(self) -> int:
        for e, c in self.terms.items():
            if not any(e):
                return c
        return 0

    def __repr__(self):
        return f"Polynomial(p={self.p}, {self.terms!r})"


def degrevlex_key(exp: tuple[int, ...], weights: tuple[int, ...]):
    """Sort key: larger key = larger monomial in weighted degrevlex."""
    return (sum(e * w for e, w in zip(exp, weights)), tuple(-e for e in reversed(exp)))


class GradedRing:
    """Standard graded polynomial ring over F_p, optionally modulo homogeneous relations.

    Immutable after construction.  The monomial order is degrevlex in the
    declared variable order; quotient arithmetic goes through the reduced
    Groebner basis of the relations (computed lazily).
    """

    def __init__(
        self,
        prime: int,
        variables: tuple[str, ...],
        variable_degrees: tuple[int, ...],
        relations: tuple[Polynomial, ...] = (),
    ):
        self.prime = prime
        self.field = PrimeField(prime)
        self.variables = tuple(variables)
        self.variable_degrees = tuple(variable_degrees)
        self.relations = tuple(relations)
        self.nvars = len(self.variables)
        self._relations_gb = None

    # -- construction -----------------------------------------------------

    def base_ring(self) -> "GradedRing":
        """The relation-free polynomial cover (Q for R = Q/I)."""
        if not self.relations:
            return self
        return GradedRing(self.prime, self.variables, self.variable_degrees, ())

    def with_relations(self, relations) -> "GradedRing":
        return make_graded_ring(self.prime, self.variables, self.variable_degrees, tuple(relations))

    def __eq__(self, other):
        return (
            isinstance(other, GradedRing)
            and self.prime == other.prime
            and self.variables == other.variables
            and self.variable_degrees == other.variable_degrees
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.prime, self.variables, self.variable_degrees, len(self.relations)))

    def __repr__(self):
        rel = f"/({', '.join(self.format_polynomial(r) for r in self.relations)})" if self.relations else ""
        return f"F{self.prime}[{', '.join(self.variables)}]{rel}"

    # -- elements ----------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.prime)

    def one(self) -> Polynomial:
        return Polynomial.constant(self.prime, 1, self.nvars)

    def constant(self, c: int) -> Polynomial:
        return Polynomial.constant(self.prime, c, self.nvars)

    def variable(self, i: int) -> Polynomial:
        return Polynomial.variable(self.prime, self.nvars, i)

    # -- grading -----------------------------------------------------------

    def wdeg(self, exp: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(exp, self.variable_degrees))

    def is_homogeneous(self, f: Polynomial) -> bool:
        degs = {self.wdeg(e) for e in f.terms}
        return len(degs) <= 1

    def degree(self, f: Polynomial) -> int | None:
        """Weighted degree of a homogeneous polynomial; None for 0."""
        if f.is_zero():
            return None
        degs = {self.wdeg(e) for e in f.terms}
        if len(degs) > 1:
            raise InhomogeneousInput(f"not homogeneous: {self.format_polynomial(f)}")
        return degs.pop()

    def order_key(self, exp: tuple[int, ...]):
        return degrevlex_key(exp, self.variable_degrees)

    def leading_term(self, f: Polynomial) -> tuple[tuple[int, ...], int]:
        exp = max(f.terms, key=self.order_key)
        return exp, f.terms[exp]

    def sorted_terms(self, f: Polynomial) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending degrevlex order (the canonical print order)."""
        return [(e, f.terms[e]) for e in sorted(f.terms, key=self.order_key, reverse=True)]

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        """All exponent vectors of weighted degree exactly d, descending degrevlex."""
        if d < 0:
            return []
        out = []

        def rec(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == self.nvars:
                if remaining == 0:
                    out.append(prefix)
                return
            w = self.variable_degrees[i]
            for e in range(remaining // w + 1):
                rec(i + 1, remaining - e * w, prefix + (e,))

        rec(0, d, ())
        out.sort(key=self.order_key, reverse=True)
        return out

    def dim_of_degree(self, d: int) -> int:
        return len(self.monomials_of_degree(d))

    # -- quotient arithmetic -------------------------------------------------

    def relations_gb(self):
        """Reduced GB of the relation ideal, in the base polynomial ring."""
        if self._relations_gb is None:
            from .groebner import groebner_basis

            self._relations_gb = groebner_basis(self.base_ring(), list(self.relations))
        return self._relations_gb

    def nf(self, f: Polynomial) -> Polynomial:
        """Canonical representative modulo the relations (identity if none)."""
        if not self.relations:
            return f
        from .groebner import normal_form

        return normal_form(self.base_ring(), f, self.relations_gb())

    # -- printing / parsing ---------------------------------------------------

    def format_polynomial(self, f: Polynomial) -> str:
        if f.is_zero():
            return "0"
        parts = []
        for exp, c in self.sorted_terms(f):
            factors = []
            if c != 1 or not any(exp):
                factors.append(str(c))
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return "+".join(parts)

    def parse_polynomial(self, text: str, line: int = 0, col_offset: int = 0) -> Polynomial:
        return parse_polynomial(self, text, line=line, col_offset=col_offset)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^]))")


def parse_polynomial(ring: GradedRing, text: str, line: int = 0, col_offset: int = 0) -> Polynomial:
    """Parse `c*x^2*y + 3*z - w` style polynomials in the ring's variables.

    Grammar: sum of terms separated by + or -; a term is *-joined factors;
    a factor is an integer or a variable with optional ^exponent.
    """
    var_index = {name: i for i, name in enumerate(ring.variables)}
    pos = 0
    n = len(text)
    tokens: list[tuple[str, str, int]] = []
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", line, col_offset + pos + 1)
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()

    result = ring.zero()
    i = 0
    sign = 1
    if not tokens:
        raise ParseError("empty polynomial", line, col_offset + 1)
    while i < len(tokens):
        kind, val, at = tokens[i]
        if kind == "op" and val in "+-":
            sign = 1 if val == "+" else -1
            i += 1
            if i >= len(tokens):
                raise ParseError("dangling sign", line, col_offset + at + 1)
            continue
        # one term: factors joined by '*'
        coeff = sign % ring.prime
        exp = [0] * ring.nvars
        expect_factor = True
        while i < len(tokens):
            kind, val, at = tokens[i]
            if kind == "op" and val in "+-":
                break
            if expect_factor:
                if kind == "int":
                    coeff = (coeff * int(val)) % ring.prime
                    i += 1
                elif kind == "name":
                    if val not in var_index:
                        raise UnknownVariable(
                            f"unknown variable {val!r} at line {line}, column {col_offset + at + 1}"
                        )
                    e = 1
                    i += 1
                    if i + 1 < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                        if tokens[i + 1][0] != "int":
                            raise ParseError("exponent must be an integer", line, col_offset + at + 1)
                        e = int(tokens[i + 1][1])
                        i += 2
                    exp[var_index[val]] += e
                else:
                    raise ParseError(f"unexpected {val!r}", line, col_offset + at + 1)
                expect_factor = False
            else:
                if kind == "op" and val == "*":
                    expect_factor = True
                    i += 1
                else:
                    raise ParseError(f"expected '*' before {val!r}", line, col_offset + at + 1)
        if expect_factor:
            raise ParseError("dangling '*'", line, col_offset + 1)
        result = result + Polynomial.monomial(ring.prime, tuple(exp), coeff)
        sign = 1
    return result


def make_graded_ring(
    p: int,
    variables,
    degrees=None,
    relations=(),
) -> GradedRing:
    """Validated constructor: p prime, positive weights, homogeneous relations.

    `relations` entries may be Polynomials or strings in the declared variables.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"modulus {p} is not prime")
    variables = tuple(variables)
    if degrees is None:
        degrees = (1,) * len(variables)
    degrees = tuple(degrees)
    if len(degrees) != len(variables):
        raise ParseError("degs and vars have different lengths")
    if any(d <= 0 for d in degrees):
        raise ParseError("variable degrees must be positive")
    base = GradedRing(p, variables, degrees, ())
    rels = []
    for r in relations:
        poly = base.parse_polynomial(r) if isinstance(r, str) else r
        if poly.is_zero():
            continue
        if not base.is_homogeneous(poly):
            raise InhomogeneousRelation(
                f"relation {base.format_polynomial(poly)} is not homogeneous"
            )
        rels.append(poly)
    return GradedRing(p, variables, degrees, tuple(rels))
