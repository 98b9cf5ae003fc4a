"""Matrix-level calculus for submodules of free modules over Q[x_1..x_n].

A submodule of R^p is identified with a p x m matrix whose columns generate
it.  Row indices are 0-based throughout the API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import grobner, polyhedra
from .poly import Polynomial, RingMismatchError, parse_poly


@dataclass(frozen=True)
class Submodule:
    """Submodule of R^rank spanned by the columns of a polynomial matrix."""

    vars: tuple[str, ...]
    rank: int  # ambient free rank p
    columns: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        for col in self.columns:
            if len(col) != self.rank:
                raise RingMismatchError(
                    f"column of length {len(col)} in ambient rank {self.rank}")
            for f in col:
                if f.vars != self.vars:
                    raise RingMismatchError(f"mixed rings {f.vars} and {self.vars}")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, variables: Sequence[str], rows: Sequence[Sequence[Polynomial]]) -> "Submodule":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("a submodule needs at least one ambient component")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged generator matrix")
        cols = tuple(tuple(rows[i][j] for i in range(len(rows))) for j in range(width))
        return cls(tuple(variables), len(rows), cols)

    @classmethod
    def from_strings(cls, variables: Sequence[str], rows: Sequence[Sequence[str]]) -> "Submodule":
        variables = tuple(variables)
        return cls.from_rows(variables, [[parse_poly(s, variables) for s in row] for row in rows])

    # -- views ------------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.columns)

    def rows(self) -> list[tuple[Polynomial, ...]]:
        return [tuple(col[i] for col in self.columns) for i in range(self.rank)]

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def to_strings(self) -> list[list[str]]:
        return [[str(f) for f in row] for row in self.rows()]

    def row_ideal(self, i: int) -> "Submodule":
        if not 0 <= i < self.rank:
            raise IndexError(f"row {i} out of range for rank {self.rank}")
        return Submodule(self.vars, 1, tuple((f,) for f in self.rows()[i]))

    def project_rows(self, selection: Sequence[int]) -> "Submodule":
        selection = tuple(selection)
        if not selection:
            raise ValueError("empty row selection")
        if any(not 0 <= i < self.rank for i in selection):
            raise IndexError(f"row selection {selection} out of range")
        cols = tuple(tuple(col[i] for i in selection) for col in self.columns)
        return Submodule(self.vars, len(selection), cols)

    def with_column(self, column: Sequence[Polynomial]) -> "Submodule":
        column = tuple(column)
        return Submodule(self.vars, self.rank, self.columns + (column,))

    def gens(self) -> list[Polynomial]:
        """Generators of a p = 1 submodule, as plain polynomials."""
        if self.rank != 1:
            raise ValueError("gens() is for ideals (ambient rank 1)")
        return [col[0] for col in self.columns]

    def nonzero_columns(self) -> "Submodule":
        cols = tuple(c for c in self.columns if any(not f.is_zero for f in c))
        return Submodule(self.vars, self.rank, cols)


def ideal(variables: Sequence[str], gens: Iterable[Polynomial | str]) -> Submodule:
    """Ideal of R as a rank-1 submodule."""
    variables = tuple(variables)
    cols = []
    for g in gens:
        f = parse_poly(g, variables) if isinstance(g, str) else g
        cols.append((f,))
    return Submodule(variables, 1, tuple(cols))


def transpose(M: Submodule) -> Submodule:
    return Submodule(M.vars, M.ngens, tuple(tuple(r) for r in M.rows()))


def reduced(M: Submodule) -> Submodule:
    """Canonical generator matrix: columns of the reduced Groebner basis."""
    gb = grobner.groebner_basis(M.columns, M.rank, M.vars)
    return Submodule(M.vars, M.rank, tuple(gb.columns()))


def module_equal(A: Submodule, B: Submodule) -> bool:
    if A.vars != B.vars or A.rank != B.rank:
        raise RingMismatchError("comparing submodules of different ambient modules")
    return grobner.module_equal(A.columns, B.columns, A.rank, A.vars)


def contains(A: Submodule, B: Submodule) -> bool:
    """Is B a subset of A?"""
    if A.vars != B.vars or A.rank != B.rank:
        raise RingMismatchError("comparing submodules of different ambient modules")
    return grobner.submodule_contains(A.columns, B.columns, A.rank, A.vars)


def member(column: Sequence[Polynomial], M: Submodule) -> bool:
    return grobner.membership(tuple(column), M.columns, M.rank, M.vars)


def intersect(A: Submodule, B: Submodule) -> Submodule:
    if A.vars != B.vars or A.rank != B.rank:
        raise RingMismatchError("intersecting submodules of different ambient modules")
    cols = grobner.intersect_modules(A.columns, B.columns, A.rank, A.vars)
    return Submodule(A.vars, A.rank, tuple(cols))


def local_member(column: Sequence[Polynomial], M: Submodule) -> bool:
    """Membership after localizing at the origin.

    h lies in M R_m exactly when the colon ideal {r : r h in M} is not
    contained in the maximal ideal, i.e. some generator of it has a nonzero
    constant term.  The colon ideal is the first-coordinate projection of
    the syzygies of [h | M].
    """
    column = tuple(column)
    if all(f.is_zero for f in column):
        return True
    cols = [column] + list(M.columns)
    kernel = grobner.syzygy_kernel(cols, M.rank, M.vars)
    return any(col[0].constant_term() != 0 for col in kernel)


def local_contains(A: Submodule, B: Submodule) -> bool:
    """Is B inside A after localizing at the origin?

    Global containment is tried first; it implies local containment.
    """
    if contains(A, B):
        return True
    return all(local_member(col, A) for col in B.columns)


def local_module_equal(A: Submodule, B: Submodule) -> bool:
    return local_contains(A, B) and local_contains(B, A)


# -- rank and minors ---------------------------------------------------------


def rank(M: Submodule) -> int:
    """Rank over the fraction field, by fraction-free Bareiss elimination.

    Pivots are chosen among the nonzero entries of lowest total degree to
    keep intermediate minors small.
    """
    grid = [list(row) for row in M.rows()]
    p = len(grid)
    m = M.ngens
    if m == 0:
        return 0
    prev = Polynomial.constant(M.vars, 1)
    r = 0
    while r < min(p, m):
        pivot = None
        for i in range(r, p):
            for j in range(r, m):
                f = grid[i][j]
                if not f.is_zero and (pivot is None or f.total_degree() < pivot[2]):
                    pivot = (i, j, f.total_degree())
        if pivot is None:
            break
        pi, pj, _ = pivot
        if pi != r:
            grid[pi], grid[r] = grid[r], grid[pi]
        if pj != r:
            for row in grid:
                row[pj], row[r] = row[r], row[pj]
        for i in range(r + 1, p):
            for j in range(r + 1, m):
                grid[i][j] = (grid[r][r] * grid[i][j] - grid[i][r] * grid[r][j]).exact_div(prev)
            grid[i][r] = Polynomial.zero(M.vars)
        prev = grid[r][r]
        r += 1
    return r


def _minor(grid: list[list[Polynomial]], rows: tuple[int, ...], cols: tuple[int, ...],
           memo: dict) -> Polynomial:
    key = (rows, cols)
    if key in memo:
        return memo[key]
    if len(rows) == 1:
        det = grid[rows[0]][cols[0]]
    else:
        variables = grid[0][0].vars
        det = Polynomial.zero(variables)
        i = rows[0]
        rest = rows[1:]
        for t, j in enumerate(cols):
            entry = grid[i][j]
            if entry.is_zero:
                continue
            sub = _minor(grid, rest, cols[:t] + cols[t + 1:], memo)
            piece = entry * sub
            det = det + piece if t % 2 == 0 else det - piece
    memo[key] = det
    return det


def all_minors(M: Submodule, size: int) -> list[Polynomial]:
    """All size x size minors of the generator matrix (with repetitions removed)."""
    if size <= 0:
        raise ValueError("minor size must be positive")
    if size > M.rank or size > M.ngens:
        return []
    grid = [list(r) for r in M.rows()]
    memo: dict = {}
    out = []
    for rows in itertools.combinations(range(M.rank), size):
        for cols in itertools.combinations(range(M.ngens), size):
            out.append(_minor(grid, rows, cols, memo))
    return out


def fitting_ideal(M: Submodule, size: int) -> Submodule:
    """Ideal of size x size minors; the zero ideal when no such minors exist."""
    minors = [f for f in all_minors(M, size) if not f.is_zero]
    return Submodule(M.vars, 1, tuple((f,) for f in minors))


def lambda_set(M: Submodule) -> tuple[tuple[int, ...], ...]:
    """Row selections of size rank(M) carrying a nonzero maximal minor."""
    r = rank(M)
    if r == 0:
        return ()
    out = []
    for rows in itertools.combinations(range(M.rank), r):
        if rank(M.project_rows(rows)) == r:
            out.append(rows)
    return tuple(out)


# -- rank-preserving vectors -------------------------------------------------


def rank_preserving_module(M: Submodule) -> Submodule:
    """Vectors h with rank([M|h]) = rank(M), as a double syzygy kernel.

    Over a domain this is ker((ker(M^T))^T); when the module already has
    maximal rank the answer is all of R^p.
    """
    p = M.rank
    if rank(M) == p:
        cols = []
        zero = Polynomial.zero(M.vars)
        one = Polynomial.constant(M.vars, 1)
        for i in range(p):
            col = [zero] * p
            col[i] = one
            cols.append(tuple(col))
        return Submodule(M.vars, p, tuple(cols))
    left_kernel = grobner.syzygy_kernel(M.rows(), M.ngens, M.vars)
    if not left_kernel:
        raise RuntimeError("left kernel unexpectedly empty for a rank-deficient matrix")
    W = Submodule(M.vars, p, tuple(left_kernel))
    kernel = grobner.syzygy_kernel(W.rows(), W.ngens, M.vars)
    return reduced(Submodule(M.vars, p, tuple(kernel)))


def syzygy_module(M: Submodule) -> Submodule:
    """Kernel of the matrix as a map R^m -> R^p (first syzygies of the columns)."""
    kernel = grobner.syzygy_kernel(M.columns, M.rank, M.vars)
    return Submodule(M.vars, M.ngens, tuple(kernel))


# -- ideal arithmetic ---------------------------------------------------------


def ideal_sum(*ideals: Submodule) -> Submodule:
    variables = ideals[0].vars
    cols = []
    for I in ideals:
        if I.rank != 1 or I.vars != variables:
            raise RingMismatchError("ideal_sum needs rank-1 submodules over one ring")
        cols.extend(I.columns)
    return Submodule(variables, 1, tuple(cols))


def ideal_product(A: Submodule, B: Submodule) -> Submodule:
    if A.rank != 1 or B.rank != 1:
        raise ValueError("ideal_product is for ideals")
    gens = [(f * g,) for (f,) in A.columns for (g,) in B.columns]
    gens = [c for c in gens if not c[0].is_zero]
    prod = Submodule(A.vars, 1, tuple(gens))
    return reduced(prod) if len(gens) > 6 else prod


def ideal_power(A: Submodule, k: int) -> Submodule:
    if k < 0:
        raise ValueError("negative ideal power")
    result = ideal(A.vars, [Polynomial.constant(A.vars, 1)])
    for _ in range(k):
        result = ideal_product(result, A)
    return result


def is_monomial_ideal(I: Submodule) -> bool:
    return I.rank == 1 and all(f.is_monomial for (f,) in I.columns)


def to_monomial_ideal(I: Submodule) -> polyhedra.MonomialIdeal:
    if not is_monomial_ideal(I):
        raise ValueError("not a monomial ideal")
    exps = [f.leading()[0] for (f,) in I.columns]
    return polyhedra.monomial_ideal(exps, len(I.vars))


def from_monomial_ideal(I: polyhedra.MonomialIdeal, variables: Sequence[str]) -> Submodule:
    variables = tuple(variables)
    if len(variables) != I.dim:
        raise RingMismatchError("variable count does not match the monomial ideal")
    return ideal(variables, [Polynomial.monomial(variables, g) for g in I.gens])


# -- reduction constructors ---------------------------------------------------


def reduction_matrix(elements: Sequence[Polynomial], p: int) -> Submodule:
    """Banded p x (s+p-1) matrix whose row i carries the elements shifted i slots.

    Its columns generate a minimal reduction of the p-fold direct sum of the
    ideal the elements generate, whenever those elements are a reduction.
    """
    elements = list(elements)
    s = len(elements)
    if s == 0:
        raise ValueError("need at least one element")
    if p < 1:
        raise ValueError("p must be positive")
    variables = elements[0].vars
    zero = Polynomial.zero(variables)
    rows = []
    for i in range(p):
        row = [zero] * (s + p - 1)
        for t, a in enumerate(elements):
            row[i + t] = a
        rows.append(row)
    return Submodule.from_rows(variables, rows)


def vertex_alternation_reduction(I: polyhedra.MonomialIdeal,
                                 variables: Sequence[str]) -> tuple[Polynomial, Polynomial]:
    """Two-generator reduction of a plane monomial ideal.

    The vertices of the Newton polyhedron, ordered by increasing first
    coordinate, are split alternately into two polynomials; the pair
    generates a reduction of the ideal.
    """
    if I.dim != 2:
        raise ValueError("vertex alternation works in two variables")
    P = polyhedra.newton_polyhedron(I.gens)
    verts = sorted(P.vertices)
    if len(verts) < 2:
        raise ValueError("polyhedron has fewer than two vertices; no two-generator reduction")
    variables = tuple(variables)
    g1 = Polynomial.zero(variables)
    g2 = Polynomial.zero(variables)
    for idx, v in enumerate(verts):
        mono = Polynomial.monomial(variables, v)
        if idx % 2 == 0:
            g1 = g1 + mono
        else:
            g2 = g2 + mono
    return g1, g2
