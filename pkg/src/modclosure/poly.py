"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials are stored as maps from exponent vectors to nonzero Fraction
coefficients, together with the ordered tuple of variable names of their
ambient ring.  Values are immutable and canonical, so ``==`` is semantic
equality.  Mixing values from different rings raises ``RingMismatchError``
rather than coercing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Exponent = tuple[int, ...]

INFINITY = math.inf


class RingMismatchError(ValueError):
    """Operands live over different variable tuples or free ranks."""


class PolyParseError(ValueError):
    """Syntax error in a polynomial string; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def grevlex_key(exps: Exponent):
    """Sort key realizing graded reverse lexicographic order (ascending)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def check_weight(w: Sequence[int], nvars: int, strict: bool = False) -> tuple[int, ...]:
    """Validate a weight vector: nonnegative integers, not all zero.

    With ``strict`` every entry must be positive (the requirement for
    selecting compact faces of a Newton polyhedron).
    """
    w = tuple(int(e) for e in w)
    if len(w) != nvars:
        raise RingMismatchError(f"weight has {len(w)} entries, ring has {nvars} variables")
    if any(e < 0 for e in w):
        raise ValueError(f"weight entries must be nonnegative: {w}")
    if strict:
        if any(e <= 0 for e in w):
            raise ValueError(f"weight must be strictly positive: {w}")
    elif all(e == 0 for e in w):
        raise ValueError("weight must not be identically zero")
    return w


class Polynomial:
    """Immutable multivariate polynomial over Q."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: dict[Exponent, Fraction] | None = None):
        object.__setattr__(self, "vars", tuple(variables))
        clean: dict[Exponent, Fraction] = {}
        n = len(self.vars)
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != n:
                    raise RingMismatchError(f"exponent {exps} has wrong length for {self.vars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = Fraction(coeff)
                if coeff:
                    clean[exps] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - safety net
        raise AttributeError("Polynomial is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "Polynomial":
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: Fraction(value)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Exponent, coeff=1) -> "Polynomial":
        return cls(variables, {tuple(exps): Fraction(coeff)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: Fraction(1)})

    # -- basic structure ------------------------------------------------

    def _same_ring(self, other: "Polynomial") -> None:
        if self.vars != other.vars:
            raise RingMismatchError(f"mixed rings {self.vars} and {other.vars}")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def support(self) -> set[Exponent]:
        return set(self.terms)

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same_ring(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, 0) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return Polynomial(self.vars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._same_ring(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(exps, 0) + c1 * c2
                if acc:
                    terms[exps] = acc
                else:
                    terms.pop(exps, None)
        return Polynomial(self.vars, terms)

    def __rmul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading (exponent, coefficient) under grevlex; zero polynomial errors."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def exact_div(self, g: "Polynomial") -> "Polynomial":
        """Exact quotient self/g; raises ValueError when g does not divide."""
        self._same_ring(g)
        if g.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        ge, gc = g.leading()
        quot: dict[Exponent, Fraction] = {}
        rem = self
        while not rem.is_zero:
            re, rc = rem.leading()
            shift = tuple(a - b for a, b in zip(re, ge))
            if any(s < 0 for s in shift):
                raise ValueError("inexact polynomial division")
            c = rc / gc
            quot[shift] = c
            rem = rem - Polynomial(self.vars, {shift: c}) * g
        return Polynomial(self.vars, quot)

    # -- weighted structure ----------------------------------------------

    def weighted_min_degree(self, w: Sequence[int]):
        """min of <w, k> over the support; +infinity for the zero polynomial."""
        w = check_weight(w, len(self.vars))
        if not self.terms:
            return INFINITY
        return min(sum(a * b for a, b in zip(w, e)) for e in self.terms)

    def face_part(self, w: Sequence[int], d: int) -> "Polynomial":
        """Sum of the terms whose w-degree equals d (zero if none)."""
        w = check_weight(w, len(self.vars))
        if d < 0:
            raise ValueError("face level must be nonnegative")
        kept = {e: c for e, c in self.terms.items()
                if sum(a * b for a, b in zip(w, e)) == d}
        return Polynomial(self.vars, kept)

    def is_weighted_homogeneous(self, w: Sequence[int]) -> bool:
        w = check_weight(w, len(self.vars))
        degs = {sum(a * b for a, b in zip(w, e)) for e in self.terms}
        return len(degs) <= 1

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Evaluate at images[i] in place of the i-th variable."""
        if len(images) != len(self.vars):
            raise RingMismatchError("substitution needs one image per variable")
        if not images:
            raise ValueError("empty substitution")
        target = images[0].vars
        for im in images:
            if im.vars != target:
                raise RingMismatchError("substitution images over mixed rings")
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(target, 1)} for _ in images
        ]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = Polynomial.zero(target)
        for exps, coeff in self.terms.items():
            piece = Polynomial.constant(target, coeff)
            for i, e in enumerate(exps):
                if e:
                    piece = piece * power(i, e)
            out = out + piece
        return out

    # -- text form --------------------------------------------------------

    def __str__(self) -> str:
        return serialize_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({'*'.join(self.vars) or 'Q'}: {self})"


def _format_term(variables: tuple[str, ...], exps: Exponent, coeff: Fraction) -> str:
    mono = "*".join(
        v if e == 1 else f"{v}^{e}"
        for v, e in zip(variables, exps)
        if e
    )
    mag = abs(coeff)
    if not mono:
        return str(mag)
    if mag == 1:
        return mono
    return f"{mag}*{mono}"


def serialize_poly(f: Polynomial) -> str:
    """Canonical text form: terms in descending grevlex order."""
    if f.is_zero:
        return "0"
    parts: list[str] = []
    for exps in sorted(f.terms, key=grevlex_key, reverse=True):
        coeff = f.terms[exps]
        body = _format_term(f.vars, exps, coeff)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


class _Parser:
    """Recursive-descent parser for the +,-,*,^ polynomial grammar."""

    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.vars = variables

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse(self) -> Polynomial:
        result = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected character {self.text[self.pos]!r}")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.text[self.pos] == "-":
                sign = -sign
            self.pos += 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            nxt = self.term()
            acc = acc + nxt if op == "+" else acc - nxt
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        sign = 1
        while self.peek() == "-":
            sign = -sign
            self.pos += 1
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = base ** self.natural()
        return base.scale(sign)

    def atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        if ch.isdigit():
            num = self.natural()
            if self.peek() == "/":
                self.pos += 1
                den = self.natural()
                if den == 0:
                    raise self.error("zero denominator")
                return Polynomial.constant(self.vars, Fraction(num, den))
            return Polynomial.constant(self.vars, num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
            name = self.text[start:self.pos]
            if name not in self.vars:
                self.pos = start
                raise self.error(f"undeclared variable {name!r}")
            return Polynomial.variable(self.vars, name)
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected character {ch!r}")

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a number")
        return int(self.text[start:self.pos])


def parse_poly(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse polynomial text over the declared variables.

    The grammar covers integer and a/b rational coefficients, +, -, *, ^
    and parentheses.  Serialization via str() round-trips through here.
    """
    return _Parser(text, tuple(variables)).parse()


def parse_polys(texts: Iterable[str], variables: Sequence[str]) -> list[Polynomial]:
    return [parse_poly(t, variables) for t in texts]
