"""Exact Newton polyhedra in up to three variables.

A Newton polyhedron is the convex hull of a finite support set plus the
nonnegative orthant.  We store its vertices, its facet inequalities
(primitive integer inner normals), and every compact face together with a
strictly positive integer witness weight selecting exactly that face.
All arithmetic is integer/rational, never floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Exponent, Polynomial

INFINITE = math.inf


class UnsupportedDimensionError(ValueError):
    """Polyhedral operations are implemented for 1, 2 or 3 variables."""


@dataclass(frozen=True)
class Face:
    """Compact face: its vertex corners, dimension, and a witness weight.

    The witness has all entries positive and the face is exactly the
    subset of the polyhedron where <witness, .> is minimal.
    """

    vertices: tuple[Exponent, ...]
    dim: int
    weight: tuple[int, ...]


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    vertices: tuple[Exponent, ...]
    facets: tuple[tuple[tuple[int, ...], int], ...]  # (inner normal, offset)
    faces: tuple[Face, ...]

    def max_face_dim(self) -> int:
        return max(f.dim for f in self.faces)

    def min_weighted_value(self, w: Sequence[int]) -> int:
        return min(sum(a * b for a, b in zip(w, v)) for v in self.vertices)


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal monomial generators (an antichain under divisibility)."""

    dim: int
    gens: tuple[Exponent, ...]

    def contains_exponent(self, exps: Exponent) -> bool:
        return any(all(g <= e for g, e in zip(gen, exps)) for gen in self.gens)

    def to_polynomials(self, variables: Sequence[str]) -> list[Polynomial]:
        return [Polynomial.monomial(variables, g) for g in self.gens]


def _pareto_min(points: Iterable[Exponent]) -> list[Exponent]:
    """Points not coordinatewise dominated by another point."""
    mins: list[Exponent] = []
    for p in sorted(set(points), key=sum):
        if not any(all(q[i] <= p[i] for i in range(len(p))) for q in mins):
            mins.append(p)
    return mins


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def monomial_ideal(exponents: Iterable[Exponent], dim: int) -> MonomialIdeal:
    pts = _pareto_min(exponents)
    return MonomialIdeal(dim, tuple(sorted(pts)))


# -- construction ----------------------------------------------------------


def newton_polyhedron(support: Iterable[Exponent]) -> NewtonPolyhedron:
    """Newton polyhedron of a support set (dimension at most 3)."""
    pts = [tuple(int(e) for e in p) for p in support]
    if not pts:
        raise ValueError("empty support has no Newton polyhedron")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("support points of mixed dimensions")
    if dim == 1:
        return _build_1d(pts)
    if dim == 2:
        return _build_2d(pts)
    if dim == 3:
        return _build_3d(pts)
    raise UnsupportedDimensionError(f"dimension {dim} not supported (max 3)")


def newton_polyhedron_of(polys: Sequence[Polynomial]) -> NewtonPolyhedron:
    """Polyhedron of the union of the supports of the given polynomials."""
    support: set[Exponent] = set()
    for f in polys:
        support |= f.support()
    if not support:
        raise ValueError("all polynomials are zero")
    return newton_polyhedron(support)


def _build_1d(pts: list[Exponent]) -> NewtonPolyhedron:
    a = min(p[0] for p in pts)
    v = (a,)
    return NewtonPolyhedron(
        dim=1,
        vertices=(v,),
        facets=(((1,), a),),
        faces=(Face((v,), 0, (1,)),),
    )


def _build_2d(pts: list[Exponent]) -> NewtonPolyhedron:
    mins = _pareto_min(pts)
    mins.sort()  # ascending x; pareto-minimality makes y strictly descending
    hull: list[Exponent] = []
    for p in mins:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (p[0] - a[0]) * (b[1] - a[1]) - (b[0] - a[0]) * (p[1] - a[1])
            if cross >= 0:  # b on or above chord a-p: not a lower vertex
                hull.pop()
            else:
                break
        hull.append(p)
    verts = tuple(hull)
    edge_normals: list[tuple[int, ...]] = []
    facets: list[tuple[tuple[int, ...], int]] = []
    facets.append(((1, 0), verts[0][0]))
    facets.append(((0, 1), verts[-1][1]))
    for a, b in zip(verts, verts[1:]):
        normal = _primitive((a[1] - b[1], b[0] - a[0]))
        edge_normals.append(normal)
        facets.append((normal, normal[0] * a[0] + normal[1] * a[1]))
    faces: list[Face] = []
    for i, v in enumerate(verts):
        left = (1, 0) if i == 0 else edge_normals[i - 1]
        right = (0, 1) if i == len(verts) - 1 else edge_normals[i]
        witness = _primitive((left[0] + right[0], left[1] + right[1]))
        faces.append(Face((v,), 0, witness))
    for (a, b), normal in zip(zip(verts, verts[1:]), edge_normals):
        faces.append(Face((a, b), 1, normal))
    return NewtonPolyhedron(2, verts, tuple(facets), tuple(faces))


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _hull_facets_3d(points: list[Exponent]) -> set[tuple[tuple[int, ...], int]]:
    """Supporting planes spanned by point triples with all points on one side."""
    facets: set[tuple[tuple[int, ...], int]] = set()
    for a, b, c in itertools.combinations(points, 3):
        normal = _cross3(tuple(x - y for x, y in zip(b, a)), tuple(x - y for x, y in zip(c, a)))
        if normal == (0, 0, 0):
            continue
        normal = _primitive(normal)
        offset = _dot(normal, a)
        lo = any(_dot(normal, p) < offset for p in points)
        hi = any(_dot(normal, p) > offset for p in points)
        if lo and hi:
            continue
        if lo:  # flip to make it an inner normal
            normal = tuple(-x for x in normal)
            offset = -offset
        facets.add((normal, offset))
    return facets


def _build_3d(pts: list[Exponent]) -> NewtonPolyhedron:
    base = _pareto_min(pts)
    big = max(max(p) for p in base) + 2
    extended = set(base)
    for p in base:
        for axis in range(3):
            q = list(p)
            q[axis] += big
            extended.add(tuple(q))
    all_facets = _hull_facets_3d(sorted(extended))
    facets = sorted((n, c) for n, c in all_facets if all(x >= 0 for x in n))

    def incident(v: Exponent) -> list[tuple[tuple[int, ...], int]]:
        return [(n, c) for n, c in facets if _dot(n, v) == c]

    vertices: list[Exponent] = []
    for v in base:
        sigma = [0, 0, 0]
        for n, _ in incident(v):
            sigma = [s + x for s, x in zip(sigma, n)]
        if not all(s > 0 for s in sigma):
            continue
        best = min(_dot(sigma, p) for p in base)
        if _dot(sigma, v) == best and sum(1 for p in base if _dot(sigma, p) == best) == 1:
            vertices.append(v)
    vertices.sort()

    faces: list[Face] = []
    for v in vertices:
        sigma = [0, 0, 0]
        for n, _ in incident(v):
            sigma = [s + x for s, x in zip(sigma, n)]
        faces.append(Face((v,), 0, _primitive(sigma)))

    seen_edges: set[frozenset[Exponent]] = set()
    for (n1, c1), (n2, c2) in itertools.combinations(facets, 2):
        shared = [v for v in vertices if _dot(n1, v) == c1 and _dot(n2, v) == c2]
        if len(shared) != 2:
            continue
        key = frozenset(shared)
        if key in seen_edges:
            continue
        seen_edges.add(key)
        total = [0, 0, 0]
        for n, c in facets:
            if all(_dot(n, v) == c for v in shared):
                total = [s + x for s, x in zip(total, n)]
        if all(s > 0 for s in total):
            faces.append(Face(tuple(sorted(shared)), 1, _primitive(total)))

    for n, c in facets:
        if not all(x > 0 for x in n):
            continue
        corners = tuple(sorted(v for v in vertices if _dot(n, v) == c))
        if len(corners) >= 3:
            faces.append(Face(corners, 2, n))

    return NewtonPolyhedron(3, tuple(vertices), tuple(facets), tuple(faces))


# -- queries ----------------------------------------------------------------


def contains_point(P: NewtonPolyhedron, point: Exponent) -> bool:
    """Membership of a lattice point, via the facet inequalities."""
    point = tuple(int(e) for e in point)
    if len(point) != P.dim:
        raise ValueError(f"point of dimension {len(point)} in a {P.dim}-dim polyhedron")
    if any(e < 0 for e in point):
        return False
    return all(_dot(n, point) >= c for n, c in P.facets)


def polyhedra_equal(P: NewtonPolyhedron, Q: NewtonPolyhedron) -> bool:
    if P.dim != Q.dim:
        raise ValueError("polyhedra of different dimensions")
    return set(P.vertices) == set(Q.vertices)


def minkowski_sum(P: NewtonPolyhedron, Q: NewtonPolyhedron) -> NewtonPolyhedron:
    """Polyhedron of all pairwise vertex sums."""
    if P.dim != Q.dim:
        raise ValueError("polyhedra of different dimensions")
    sums = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return newton_polyhedron(sums)


def minkowski_sum_all(polyhedra: Sequence[NewtonPolyhedron]) -> NewtonPolyhedron:
    if not polyhedra:
        raise ValueError("empty Minkowski sum")
    acc = polyhedra[0]
    for P in polyhedra[1:]:
        acc = minkowski_sum(acc, P)
    return acc


def term_ideal(P: NewtonPolyhedron) -> MonomialIdeal:
    """Monomial ideal of all lattice points of P (minimal generators).

    Minimal generators are bounded by the coordinatewise maximum of the
    vertices, so a box scan suffices.
    """
    bounds = [max(v[i] for v in P.vertices) for i in range(P.dim)]
    inside = [
        point
        for point in itertools.product(*(range(b + 1) for b in bounds))
        if contains_point(P, point)
    ]
    return monomial_ideal(inside, P.dim)


def compact_faces_max_dim(P: NewtonPolyhedron) -> int:
    return P.max_face_dim()


def _touches_all_axes(P: NewtonPolyhedron) -> bool:
    for axis in range(P.dim):
        if not any(all(v[i] == 0 for i in range(P.dim) if i != axis) for v in P.vertices):
            return False
    return True


def _polygon_cycle(corners: list[Exponent], normal: tuple[int, ...]) -> list[Exponent]:
    """Order coplanar corners along their convex cycle, exactly."""
    drop = max(range(3), key=lambda i: abs(normal[i]))
    flat = [tuple(c[i] for i in range(3) if i != drop) for c in corners]
    order = sorted(range(len(corners)), key=lambda i: flat[i])

    def cross(o, a, b):
        return ((flat[a][0] - flat[o][0]) * (flat[b][1] - flat[o][1])
                - (flat[b][0] - flat[o][0]) * (flat[a][1] - flat[o][1]))

    upper: list[int] = []
    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    cycle = lower[:-1] + upper[:-1]
    return [corners[i] for i in cycle]


def covolume(P: NewtonPolyhedron):
    """Volume of the region of the nonnegative orthant outside P.

    Finite exactly when P meets every coordinate axis; computed by coning
    the compact facets off the origin, so the result is exact rational.
    """
    if not _touches_all_axes(P):
        return INFINITE
    if P.dim == 1:
        return Fraction(P.vertices[0][0])
    if P.dim == 2:
        total = Fraction(0)
        for face in P.faces:
            if face.dim != 1:
                continue
            (x1, y1), (x2, y2) = face.vertices
            total += Fraction(abs(x1 * y2 - x2 * y1), 2)
        return total
    total = Fraction(0)
    for face in P.faces:
        if face.dim != 2:
            continue
        cycle = _polygon_cycle(list(face.vertices), face.weight)
        anchor = cycle[0]
        for b, c in zip(cycle[1:], cycle[2:]):
            det = _dot(anchor, _cross3(b, c))
            total += Fraction(abs(det), 6)
    return total
