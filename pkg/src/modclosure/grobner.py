"""Groebner bases for ideals and submodules of free modules over Q[x_1..x_n].

The engine is a plain Buchberger loop with normal (lowest lcm degree first)
pair selection, the product criterion for single-component pairs, and
fraction-free integer arithmetic: every basis vector is kept primitive with
a positive leading coefficient, which also makes reduced bases canonical.

A vector of R^p is represented internally as a dict mapping module terms
(position, exponent tuple) to integer coefficients.  Ideals are the p = 1
case throughout.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Exponent, Polynomial, RingMismatchError, grevlex_key

Term = tuple[int, Exponent]
Vec = dict[Term, int]
Column = tuple[Polynomial, ...]

INFINITE = math.inf


class TruncationCapError(RuntimeError):
    """Local colength did not stabilize below the truncation cap."""


@dataclass(frozen=True)
class ModuleOrder:
    """Monomial order on (monomial, position) pairs.

    ``base`` is the underlying monomial order; ``position_over_term``
    selects POT instead of the default TOP comparison; ``elim_vars`` > 0
    turns the order into a block order eliminating the first variables.
    Lower positions always compare as larger, so e_1 > e_2 > ... .
    """

    base: str = "grevlex"
    position_over_term: bool = False
    elim_vars: int = 0

    def monomial_key(self, exps: Exponent):
        if self.base == "grevlex":
            key = grevlex_key(exps)
        elif self.base == "lex":
            key = exps
        else:
            raise ValueError(f"unknown base order {self.base!r}")
        if self.elim_vars:
            return (sum(exps[: self.elim_vars]), key)
        return key

    def term_key(self, term: Term):
        pos, exps = term
        if self.position_over_term:
            return (-pos, self.monomial_key(exps))
        return (self.monomial_key(exps), -pos)


DEFAULT_ORDER = ModuleOrder()
POT_ORDER = ModuleOrder(position_over_term=True)


# -- vector plumbing -----------------------------------------------------


def column_to_vec(column: Sequence[Polynomial]) -> Vec:
    """Clear denominators and strip content; returns a primitive integer vec."""
    entries: dict[Term, Fraction] = {}
    for pos, f in enumerate(column):
        for exps, coeff in f.terms.items():
            entries[(pos, exps)] = coeff
    if not entries:
        return {}
    denom = math.lcm(*(c.denominator for c in entries.values()))
    ints = {t: int(c * denom) for t, c in entries.items()}
    content = math.gcd(*ints.values())
    return {t: c // content for t, c in ints.items()}


def vec_to_column(vec: Vec, rank: int, variables: tuple[str, ...]) -> Column:
    polys: list[dict[Exponent, Fraction]] = [{} for _ in range(rank)]
    for (pos, exps), coeff in vec.items():
        polys[pos][exps] = Fraction(coeff)
    return tuple(Polynomial(variables, t) for t in polys)


def _normalize(vec: Vec, keyf) -> Vec:
    """Primitive part with positive leading coefficient."""
    if not vec:
        return {}
    content = math.gcd(*vec.values())
    lead = max(vec, key=keyf)
    if vec[lead] < 0:
        content = -content
    return {t: c // content for t, c in vec.items()}


class _Entry:
    """Basis element with cached leading-term data."""

    __slots__ = ("vec", "lt", "lc", "lexp", "pos", "single_pos", "monomial")

    def __init__(self, vec: Vec, keyf):
        self.vec = vec
        self.lt = max(vec, key=keyf)
        self.lc = vec[self.lt]
        self.pos, self.lexp = self.lt
        positions = {p for p, _ in vec}
        self.single_pos = len(positions) == 1
        self.monomial = len(vec) == 1


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(vec: Vec, index: dict[int, list[_Entry]], keyf, track_scale: bool = False):
    """Total reduction modulo the indexed basis.

    Returns the remainder (integer coefficients).  When ``track_scale`` the
    overall integer the input was multiplied by is returned as well, so the
    exact field normal form can be recovered as remainder/scale.
    """
    work = dict(vec)
    rem: Vec = {}
    scale = 1
    while work:
        term = max(work, key=keyf)
        coeff = work[term]
        pos, exps = term
        reducer = None
        for entry in index.get(pos, ()):
            if _divides(entry.lexp, exps):
                reducer = entry
                break
        if reducer is None:
            rem[term] = coeff
            del work[term]
            continue
        d = math.gcd(coeff, reducer.lc)
        mult = reducer.lc // d
        sub = coeff // d
        if mult != 1:
            for t in work:
                work[t] *= mult
            if rem:
                for t in rem:
                    rem[t] *= mult
            if track_scale:
                scale *= mult
        shift = tuple(a - b for a, b in zip(exps, reducer.lexp))
        for (gpos, gexps), gcoeff in reducer.vec.items():
            target = (gpos, tuple(a + b for a, b in zip(gexps, shift)))
            acc = work.get(target, 0) - sub * gcoeff
            if acc:
                work[target] = acc
            else:
                work.pop(target, None)
    if track_scale:
        return rem, scale
    return rem


def _spair(f: _Entry, g: _Entry) -> Vec:
    lcm = tuple(max(a, b) for a, b in zip(f.lexp, g.lexp))
    d = math.gcd(f.lc, g.lc)
    sf = tuple(a - b for a, b in zip(lcm, f.lexp))
    sg = tuple(a - b for a, b in zip(lcm, g.lexp))
    cf = g.lc // d
    cg = f.lc // d
    out: Vec = {}
    for (pos, exps), coeff in f.vec.items():
        t = (pos, tuple(a + b for a, b in zip(exps, sf)))
        out[t] = out.get(t, 0) + cf * coeff
    for (pos, exps), coeff in g.vec.items():
        t = (pos, tuple(a + b for a, b in zip(exps, sg)))
        acc = out.get(t, 0) - cg * coeff
        if acc:
            out[t] = acc
        else:
            out.pop(t, None)
    return {t: c for t, c in out.items() if c}


def _buchberger(vecs: list[Vec], keyf) -> list[Vec]:
    basis: list[_Entry] = []
    index: dict[int, list[_Entry]] = {}
    pairs: list[tuple[int, int, int, int]] = []
    counter = itertools.count()

    def push(entry: _Entry) -> None:
        for k, other in enumerate(basis):
            if other.pos != entry.pos:
                continue
            if other.monomial and entry.monomial:
                continue  # S-vector of two single terms cancels exactly
            if (other.single_pos and entry.single_pos
                    and all(min(a, b) == 0 for a, b in zip(other.lexp, entry.lexp))):
                continue  # product criterion, valid inside one component
            lcm = tuple(max(a, b) for a, b in zip(other.lexp, entry.lexp))
            heapq.heappush(pairs, (sum(lcm), next(counter), len(basis), k))
        basis.append(entry)
        index.setdefault(entry.pos, []).append(entry)
        index[entry.pos].sort(key=lambda e: (len(e.vec), keyf(e.lt)))

    for vec in vecs:
        vec = _normalize(vec, keyf)
        if vec:
            push(_Entry(vec, keyf))

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        s = _spair(basis[i], basis[j])
        if not s:
            continue
        r = _normalize(_reduce(s, index, keyf), keyf)
        if r:
            push(_Entry(r, keyf))

    # minimalize: leading terms pairwise non-divisible
    kept: list[_Entry] = []
    for entry in sorted(basis, key=lambda e: keyf(e.lt)):
        lt_pos, lt_exp = entry.lt
        if any(k.pos == lt_pos and _divides(k.lexp, lt_exp) for k in kept):
            continue
        kept.append(entry)

    # tail-reduce until stable for a canonical reduced basis
    changed = True
    while changed:
        changed = False
        for i, entry in enumerate(kept):
            others = kept[:i] + kept[i + 1:]
            idx: dict[int, list[_Entry]] = {}
            for e in others:
                idx.setdefault(e.pos, []).append(e)
            r = _normalize(_reduce(entry.vec, idx, keyf), keyf)
            if r != entry.vec:
                kept[i] = _Entry(r, keyf)
                changed = True
    return [e.vec for e in sorted(kept, key=lambda e: keyf(e.lt))]


# -- public basis object --------------------------------------------------


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of R^rank.

    Vectors are primitive integer dicts sorted by leading term; two
    submodules are equal iff their reduced bases under the same order
    coincide.
    """

    __slots__ = ("rank", "vars", "order", "vectors", "_index", "_keyf")

    def __init__(self, rank: int, variables: tuple[str, ...], order: ModuleOrder, vectors: list[Vec]):
        self.rank = rank
        self.vars = tuple(variables)
        self.order = order
        self.vectors = tuple(vectors)
        self._keyf = order.term_key
        self._index: dict[int, list[_Entry]] = {}
        for vec in self.vectors:
            entry = _Entry(vec, self._keyf)
            self._index.setdefault(entry.pos, []).append(entry)
        for entries in self._index.values():
            entries.sort(key=lambda e: (len(e.vec), self._keyf(e.lt)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.rank, self.vars, self.order, self.vectors) == (
            other.rank, other.vars, other.order, other.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def leading_terms(self) -> list[Term]:
        return [max(v, key=self._keyf) for v in self.vectors]

    def columns(self) -> list[Column]:
        return [vec_to_column(v, self.rank, self.vars) for v in self.vectors]

    def normal_form_vec(self, vec: Vec) -> dict[Term, Fraction]:
        rem, scale = _reduce(vec, self._index, self._keyf, track_scale=True)
        return {t: Fraction(c, scale) for t, c in rem.items()}

    def normal_form(self, column: Sequence[Polynomial]) -> Column:
        self._check_column(column)
        rem = self.normal_form_vec(column_to_vec(column))
        polys: list[dict[Exponent, Fraction]] = [{} for _ in range(self.rank)]
        for (pos, exps), coeff in rem.items():
            polys[pos][exps] = coeff
        return tuple(Polynomial(self.vars, t) for t in polys)

    def contains(self, column: Sequence[Polynomial]) -> bool:
        self._check_column(column)
        vec = column_to_vec(column)
        if not vec:
            return True
        return not _reduce(vec, self._index, self._keyf)

    def _check_column(self, column: Sequence[Polynomial]) -> None:
        if len(column) != self.rank:
            raise RingMismatchError(
                f"vector has {len(column)} components, module lives in R^{self.rank}")
        for f in column:
            if f.vars != self.vars:
                raise RingMismatchError(f"mixed rings {f.vars} and {self.vars}")


def groebner_basis(columns: Sequence[Sequence[Polynomial]], rank: int,
                   variables: Sequence[str], order: ModuleOrder = DEFAULT_ORDER) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule of R^rank spanned by columns."""
    variables = tuple(variables)
    vecs = []
    for col in columns:
        if len(col) != rank:
            raise RingMismatchError(f"generator of length {len(col)} in R^{rank}")
        for f in col:
            if f.vars != variables:
                raise RingMismatchError(f"mixed rings {f.vars} and {variables}")
        vecs.append(column_to_vec(col))
    reduced = _buchberger(vecs, order.term_key)
    return GroebnerBasis(rank, variables, order, reduced)


def groebner_ideal(gens: Sequence[Polynomial], variables: Sequence[str] | None = None,
                   order: ModuleOrder = DEFAULT_ORDER) -> GroebnerBasis:
    gens = list(gens)
    if variables is None:
        if not gens:
            raise ValueError("cannot infer the ring of an empty ideal")
        variables = gens[0].vars
    return groebner_basis([(g,) for g in gens], 1, variables, order)


# -- membership ------------------------------------------------------------


def _monomial_column(col: Sequence[Polynomial]) -> bool:
    return sum(len(f.terms) for f in col) == 1


def membership(column: Sequence[Polynomial], generators: Sequence[Sequence[Polynomial]],
               rank: int, variables: Sequence[str]) -> bool:
    """Does the vector lie in the submodule spanned by the generators?

    Monomial generating sets get the divisibility fast path; everything
    else goes through a Groebner normal form.
    """
    gens = [tuple(c) for c in generators if any(not f.is_zero for f in c)]
    if all(_monomial_column(c) for c in gens):
        lead = []
        for col in gens:
            for pos, f in enumerate(col):
                if not f.is_zero:
                    exps, _ = f.leading()
                    lead.append((pos, exps))
        for pos, f in enumerate(column):
            for exps in f.terms:
                if not any(p == pos and _divides(g, exps) for p, g in lead):
                    return False
        return True
    gb = groebner_basis(gens, rank, variables)
    return gb.contains(column)


def module_equal(cols_a: Sequence[Sequence[Polynomial]], cols_b: Sequence[Sequence[Polynomial]],
                 rank: int, variables: Sequence[str]) -> bool:
    """Semantic submodule equality via reduced-basis comparison."""
    ga = groebner_basis(cols_a, rank, variables)
    gb = groebner_basis(cols_b, rank, variables)
    return ga.vectors == gb.vectors


def submodule_contains(outer: Sequence[Sequence[Polynomial]], inner: Sequence[Sequence[Polynomial]],
                       rank: int, variables: Sequence[str]) -> bool:
    gb = groebner_basis(outer, rank, variables)
    return all(gb.contains(col) for col in inner)


# -- syzygies ----------------------------------------------------------------


def syzygy_kernel(columns: Sequence[Sequence[Polynomial]], rank: int,
                  variables: Sequence[str]) -> list[Column]:
    """Generators of {v in R^m : A v = 0} for the matrix with the given columns.

    Standard tag construction: append unit tags to each column, compute a
    basis under an order where the genuine components dominate the tags,
    and read the syzygies off the elements with vanishing genuine part.
    """
    variables = tuple(variables)
    m = len(columns)
    zero = Polynomial.zero(variables)
    one = Polynomial.constant(variables, 1)
    tagged = []
    for j, col in enumerate(columns):
        tags = [zero] * m
        tags[j] = one
        tagged.append(tuple(col) + tuple(tags))
    keyf = POT_ORDER.term_key
    reduced = _buchberger([column_to_vec(c) for c in tagged], keyf)
    kernel: list[Column] = []
    for vec in reduced:
        if all(pos >= rank for pos, _ in vec):
            shifted = {(pos - rank, exps): c for (pos, exps), c in vec.items()}
            kernel.append(vec_to_column(shifted, m, variables))
    if not kernel:
        return []
    return groebner_basis(kernel, m, variables).columns()


# -- intersection, quotient, saturation --------------------------------------


def intersect_modules(cols_a: Sequence[Sequence[Polynomial]], cols_b: Sequence[Sequence[Polynomial]],
                      rank: int, variables: Sequence[str]) -> list[Column]:
    """Intersection of two submodules via the t*A + (1-t)*B elimination trick."""
    variables = tuple(variables)
    tname = "_t"
    while tname in variables:
        tname += "_"
    evars = (tname,) + variables
    t = Polynomial.variable(evars, tname)
    one_minus_t = Polynomial.constant(evars, 1) - t

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(evars, {(0,) + e: c for e, c in f.terms.items()})

    gens = []
    for col in cols_a:
        gens.append(tuple(t * lift(f) for f in col))
    for col in cols_b:
        gens.append(tuple(one_minus_t * lift(f) for f in col))
    order = ModuleOrder(elim_vars=1)
    gb = groebner_basis(gens, rank, evars, order)
    result: list[Column] = []
    for vec in gb.vectors:
        if all(exps[0] == 0 for _, exps in vec):
            dropped = {(pos, exps[1:]): c for (pos, exps), c in vec.items()}
            result.append(vec_to_column(dropped, rank, variables))
    if not result:
        return []
    return groebner_basis(result, rank, variables).columns()


def ideal_quotient(gens: Sequence[Polynomial], f: Polynomial) -> list[Polynomial]:
    """Colon ideal (I : f), computed as (I cap (f))/f."""
    if f.is_zero:
        raise ZeroDivisionError("colon by the zero polynomial")
    variables = f.vars
    meet = intersect_modules([(g,) for g in gens], [(f,)], 1, variables)
    return [col[0].exact_div(f) for col in meet]


def saturate(gens: Sequence[Polynomial], f: Polynomial) -> list[Polynomial]:
    """Saturation (I : f^infinity) by iterating colon ideals to a fixpoint."""
    current = [g for g in gens if not g.is_zero]
    while True:
        nxt = ideal_quotient(current, f)
        if module_equal([(g,) for g in nxt], [(g,) for g in current], 1, f.vars):
            return [c[0] for c in groebner_basis([(g,) for g in current], 1, f.vars).columns()]
        current = nxt


def contains_unit(gens: Sequence[Polynomial], variables: Sequence[str]) -> bool:
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return False
    one = Polynomial.constant(variables, 1)
    return membership((one,), [(g,) for g in gens], 1, variables)


# -- colength ----------------------------------------------------------------


def _staircase_count(exponents: list[Exponent], nvars: int):
    """Lattice points outside the monomial staircase; INFINITE when unbounded."""
    mins: list[Exponent] = []
    for e in sorted(exponents, key=sum):
        if not any(_divides(g, e) for g in mins):
            mins.append(e)
    if not mins:
        return INFINITE
    if any(sum(e) == 0 for e in mins):
        return 0
    bounds = []
    for axis in range(nvars):
        pure = [e[axis] for e in mins if all(x == 0 for i, x in enumerate(e) if i != axis)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    if nvars == 1:
        return bounds[0]
    count = 0
    for prefix in itertools.product(*(range(b) for b in bounds[:-1])):
        cap = bounds[-1]
        for e in mins:
            if all(e[i] <= prefix[i] for i in range(nvars - 1)):
                cap = min(cap, e[-1])
        count += cap
    return count


def colength(columns: Sequence[Sequence[Polynomial]], rank: int, variables: Sequence[str]):
    """Vector-space dimension of R^rank modulo the submodule (or INFINITE).

    Counts the standard (monomial, position) pairs under the staircase of
    the leading-term module.
    """
    gb = groebner_basis(columns, rank, variables)
    return colength_of(gb)


def colength_of(gb: GroebnerBasis):
    per_pos: dict[int, list[Exponent]] = {p: [] for p in range(gb.rank)}
    for pos, exps in gb.leading_terms():
        per_pos[pos].append(exps)
    total = 0
    for pos in range(gb.rank):
        c = _staircase_count(per_pos[pos], len(gb.vars))
        if c is INFINITE:
            return INFINITE
        total += c
    return total


def _power_columns(rank: int, variables: tuple[str, ...], k: int) -> list[Column]:
    """Generators of m^k R^rank for the maximal ideal at the origin."""
    n = len(variables)
    zero = Polynomial.zero(variables)
    cols = []
    for exps in itertools.product(*(range(k + 1) for _ in range(n))):
        if sum(exps) != k:
            continue
        for pos in range(rank):
            col = [zero] * rank
            col[pos] = Polynomial.monomial(variables, exps)
            cols.append(tuple(col))
    return cols


def local_colength(columns: Sequence[Sequence[Polynomial]], rank: int,
                   variables: Sequence[str], cap: int = 50) -> int:
    """Length of the quotient localized at the origin, by truncation.

    Computes colength(N + m^k R^rank) for growing k until two consecutive
    values agree; the stabilized value is the local length whenever that
    is finite.  Exceeding ``cap`` raises TruncationCapError, which signals
    an infinite local length or a cap that is too small.
    """
    variables = tuple(variables)
    columns = [tuple(c) for c in columns if any(not f.is_zero for f in c)]
    maxdeg = 0
    for col in columns:
        for f in col:
            maxdeg = max(maxdeg, f.total_degree())
    k = maxdeg + 1
    previous = None
    while k <= cap:
        value = colength(list(columns) + _power_columns(rank, variables, k), rank, variables)
        if previous is not None and value == previous:
            return int(value)
        previous = value
        k += 1
    raise TruncationCapError(
        f"no stabilization below cap {cap}: infinite local length or cap too small")
