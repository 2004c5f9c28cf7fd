"""Radial Newton polyhedron: support points, faces and the dual diagram.

The polyhedron ``conv(support) + R_+^n`` is never built explicitly.  For a
nonnegative weight ``P`` every query reduces to minimising ``P . x`` over the
finite support set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (EmptyPolynomial, NegativeEntry, NotConvenient,
                     UnsupportedDimension, ZeroVector)
from .lattice import affine_dimension, det2, dot, primitive
from .mixed_poly import MixedPolynomial, MixedTerm, is_convenient


@dataclass(frozen=True, order=True)
class WeightVector:
    """Primitive nonnegative integer weight vector ``P``.

    The constructor divides out the gcd, so ``WeightVector((4, 6)).p == (2, 3)``.
    """

    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        if any(x < 0 for x in p):
            raise NegativeEntry(f"weight vector {p} has a negative entry")
        if not any(p):
            raise ZeroVector("weight vector must be nonzero")
        object.__setattr__(self, "p", primitive(p))

    @classmethod
    def of(cls, value) -> "WeightVector":
        return value if isinstance(value, WeightVector) else cls(tuple(value))

    @classmethod
    def unit(cls, n: int, j: int) -> "WeightVector":
        """The axis vector ``E_j`` (1-based)."""
        return cls(tuple(int(i == j - 1) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def strictly_positive(self) -> bool:
        return all(x > 0 for x in self.p)

    @property
    def zero_set(self) -> frozenset[int]:
        """1-based indices ``j`` with ``p_j = 0``."""
        return frozenset(j + 1 for j, x in enumerate(self.p) if x == 0)

    def __call__(self, x: Sequence[int]) -> int:
        return dot(self.p, x)

    def __iter__(self):
        return iter(self.p)

    def __getitem__(self, i):
        return self.p[i]

    def __len__(self):
        return len(self.p)

    def __str__(self):
        return "(" + ",".join(map(str, self.p)) + ")"


def _raw(P) -> tuple[int, ...]:
    """Weight entries without gcd normalisation (used for d(kP))."""
    if isinstance(P, WeightVector):
        return P.p
    p = tuple(int(x) for x in P)
    if any(x < 0 for x in p):
        raise NegativeEntry(f"weight vector {p} has a negative entry")
    if not any(p):
        raise ZeroVector("weight vector must be nonzero")
    return p


@dataclass(frozen=True)
class SupportPoint:
    point: tuple[int, ...]
    terms: tuple[MixedTerm, ...]


@dataclass(frozen=True)
class Face:
    """The face ``Delta(P)``: support points where ``P`` attains its minimum."""

    weight: WeightVector
    d: int
    points: frozenset
    dim: int
    recession: frozenset

    @property
    def compact(self) -> bool:
        return not self.recession

    def sorted_points(self) -> list[tuple[int, ...]]:
        return sorted(self.points, reverse=True)


def support(f: MixedPolynomial) -> list[SupportPoint]:
    """Radial support points ``nu + mu`` with the terms landing on each.

    Sorted lexicographically, descending (so the ``z1`` axis point comes first
    for a two-variable staircase).
    """
    if not f:
        raise EmptyPolynomial("the zero polynomial has no Newton polyhedron")
    groups: dict[tuple[int, ...], list[MixedTerm]] = {}
    for t in f.terms:
        groups.setdefault(t.exps.radial, []).append(t)
    return [SupportPoint(pt, tuple(groups[pt])) for pt in sorted(groups, reverse=True)]


def support_points(f: MixedPolynomial) -> list[tuple[int, ...]]:
    return [s.point for s in support(f)]


def weight_min(f: MixedPolynomial, P) -> int:
    """``d(P)``, the minimum of ``P . (nu + mu)`` over the terms of ``f``.

    The weight is used as given (not normalised), so ``d(kP) = k d(P)``.
    """
    p = _raw(P)
    pts = support_points(f)
    if len(p) != f.n:
        raise ValueError(f"weight has {len(p)} entries, expected {f.n}")
    return min(dot(p, x) for x in pts)


def face(f: MixedPolynomial, P) -> Face:
    """``Delta(P)``; the weight is normalised, so ``face(f, kP) == face(f, P)``."""
    w = WeightVector(_raw(P))
    d = weight_min(f, w)
    pts = frozenset(x for x in support_points(f) if w(x) == d)
    return Face(w, d, pts, affine_dimension(sorted(pts)), w.zero_set)


# --------------------------------------------------------------------------
# two variables

@dataclass(frozen=True)
class Edge:
    start: tuple[int, int]
    end: tuple[int, int]
    normal: WeightVector
    points: tuple  # all support points on the edge, x-descending


@dataclass(frozen=True)
class Staircase:
    """Lower convex chain of a convenient two-variable support set.

    ``vertices`` run from the ``z1`` axis point to the ``z2`` axis point
    (first coordinate descending); ``edges[i]`` joins ``vertices[i]`` and
    ``vertices[i+1]``.
    """

    vertices: tuple
    edges: tuple
    interior: tuple  # support points strictly inside the polyhedron

    @property
    def normals(self) -> list[WeightVector]:
        return [e.normal for e in self.edges]


def _require_plane(f: MixedPolynomial):
    if f.n != 2:
        raise UnsupportedDimension(f"this construction needs n = 2, got n = {f.n}")
    if not f:
        raise EmptyPolynomial("the zero polynomial has no Newton polyhedron")
    rep = is_convenient(f)
    if not rep:
        raise NotConvenient(f"f has no term on the z{rep.first_missing} axis")


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    # monotone chain on x ascending; keeps strictly convex turns only
    pts = sorted(set(points))
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_boundary(f: MixedPolynomial) -> Staircase:
    """Compact faces of the radial Newton polyhedron for ``n = 2``."""
    _require_plane(f)
    pts = support_points(f)
    ymin_at_x = {}
    for x, y in pts:
        ymin_at_x[x] = min(y, ymin_at_x.get(x, y))
    hull = _lower_hull(list(ymin_at_x.items()))
    # keep only the decreasing part: from the z2 axis point down to the z1 axis point
    chain = [hull[0]]
    for p in hull[1:]:
        if p[1] < chain[-1][1]:
            chain.append(p)
        else:
            break
    chain = chain[::-1]
    edges = []
    for a, b in zip(chain, chain[1:]):
        normal = WeightVector(primitive((b[1] - a[1], a[0] - b[0])))
        d = normal(a)
        on = tuple(sorted((x for x in pts if normal(x) == d), reverse=True))
        edges.append(Edge(a, b, normal, on))
    boundary = {x for e in edges for x in e.points} | set(chain)
    interior = tuple(x for x in pts if x not in boundary)
    return Staircase(tuple(chain), tuple(edges), interior)


@dataclass(frozen=True)
class DualDiagram2D:
    """Dual Newton diagram of a convenient two-variable germ.

    ``rays`` is ``E_1``, the edge normals by increasing slope ``p2/p1``, then
    ``E_2``.  ``classes`` lists the equivalence classes of weight vectors in
    angular order: each ray alone, then the open sector up to the next ray.
    """

    boundary_vertices: tuple
    edge_normals: tuple
    rays: tuple
    classes: tuple = field(default=())

    def strict_classes(self) -> tuple:
        """Classes that contain strictly positive weights (``2k + 1`` for ``k`` edges)."""
        return tuple(c for c in self.classes
                     if c[0] == "sector" or c[1].strictly_positive)


def slope_key(P) -> Fraction | float:
    p = _raw(P)
    return Fraction(p[1], p[0]) if p[0] else float("inf")


def dual_diagram(f: MixedPolynomial) -> DualDiagram2D:
    st = newton_boundary(f)
    normals = tuple(sorted(st.normals, key=slope_key))
    rays = (WeightVector((1, 0)),) + normals + (WeightVector((0, 1)),)
    classes = []
    for i, r in enumerate(rays):
        classes.append(("ray", r))
        if i + 1 < len(rays):
            classes.append(("sector", r, rays[i + 1]))
    return DualDiagram2D(st.vertices, normals, rays, tuple(classes))


def strictly_between(a, b, x) -> bool:
    """True when ray ``x`` lies strictly inside the planar cone spanned by ``a, b``."""
    a, b, x = _raw(a), _raw(b), _raw(x)
    if det2(a, b) < 0:
        a, b = b, a
    return det2(a, x) > 0 and det2(x, b) > 0


def face_class(diagram: DualDiagram2D, P) -> tuple:
    """The class of ``diagram`` that contains the ray through ``P``."""
    p = WeightVector.of(P)
    for r in diagram.rays:
        if r == p:
            return ("ray", r)
    for i in range(len(diagram.rays) - 1):
        if strictly_between(diagram.rays[i], diagram.rays[i + 1], p):
            return ("sector", diagram.rays[i], diagram.rays[i + 1])
    raise AssertionError("weight not covered by the dual diagram")


def weights_of(vectors: Iterable) -> list[WeightVector]:
    return [WeightVector.of(v) for v in vectors]
