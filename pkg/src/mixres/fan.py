"""Simplicial lattice cones and regular subdivisions of the weight orthant."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (DependentVertices, NegativeEntry, NotConvenient,
                     UnsupportedDimension, ZeroVector)
from .lattice import det, det2, maximal_minors_gcd, rank
from .mixed_poly import MixedPolynomial, is_convenient, restrict
from .newton import (WeightVector, dual_diagram, face, slope_key,
                     strictly_between)


class SimplicialCone:
    """Cone spanned by linearly independent primitive weight vectors.

    The vertex order given at construction is kept (it fixes chart
    coordinates); equality and hashing ignore it.
    """

    __slots__ = ("vertices", "n", "_key")

    def __init__(self, vertices: Sequence[WeightVector]):
        self.vertices = tuple(vertices)
        self.n = self.vertices[0].n
        self._key = frozenset(self.vertices)

    @property
    def dim(self) -> int:
        return len(self.vertices)

    @property
    def interior_point(self) -> tuple[int, ...]:
        """``P_1 + ... + P_k`` (not normalised)."""
        return tuple(sum(col) for col in zip(*self.vertices))

    def matrix(self) -> list[list[int]]:
        """``n x k`` integer matrix, one column per vertex."""
        return [[v[i] for v in self.vertices] for i in range(self.n)]

    @property
    def strictly_positive(self) -> bool:
        return all(v.strictly_positive for v in self.vertices)

    def chart_order(self) -> "SimplicialCone":
        """Same cone with strictly positive vertices first (stable)."""
        pos = [v for v in self.vertices if v.strictly_positive]
        rest = [v for v in self.vertices if not v.strictly_positive]
        return SimplicialCone(pos + rest)

    def faces(self) -> list["SimplicialCone"]:
        """All nonempty faces, including the cone itself."""
        out = []
        for k in range(1, self.dim + 1):
            for vs in combinations(self.vertices, k):
                out.append(SimplicialCone(vs))
        return out

    def contains_face(self, other: "SimplicialCone") -> bool:
        return other._key <= self._key

    def __eq__(self, other):
        return isinstance(other, SimplicialCone) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "Cone(" + ", ".join(str(v) for v in self.vertices) + ")"

    def __str__(self):
        return repr(self)


def make_cone(vs: Iterable[Sequence[int]], n: int | None = None) -> SimplicialCone:
    vs = [tuple(int(x) for x in v) for v in vs]
    if not vs:
        raise DependentVertices("a cone needs at least one vertex")
    n = n or len(vs[0])
    for v in vs:
        if len(v) != n:
            raise ValueError(f"vertex {v} does not have {n} entries")
        if not any(v):
            raise ZeroVector("cone vertex must be nonzero")
        if any(x < 0 for x in v):
            raise NegativeEntry(f"cone vertex {v} has a negative entry")
    if len(vs) > n:
        raise DependentVertices(f"{len(vs)} vertices in dimension {n} are dependent")
    if rank(vs) < len(vs):
        raise DependentVertices(f"vertices {vs} are linearly dependent")
    return SimplicialCone([WeightVector(v) for v in vs])


def is_regular(c: SimplicialCone) -> bool:
    """Vertices extend to a basis of ``Z^n``."""
    if c.dim == c.n:
        return abs(det(c.matrix())) == 1
    return maximal_minors_gcd([v.p for v in c.vertices]) == 1


def insert_between(a: WeightVector, b: WeightVector) -> WeightVector:
    """Minimal lattice vector strictly inside ``Cone(a, b)`` with ``det(a, c) = 1``.

    Requires ``det(a, b) > 1``.  The result satisfies
    ``1 <= det(c, b) < det(a, b)``.
    """
    d = det2(a, b)
    if d <= 1:
        raise ValueError("cone is already regular")
    # c0 with a0*c1 - a1*c0 = 1
    g, x, y = _ext_gcd(a[0], a[1])
    assert g == 1
    # a0*x + a1*y = 1  =>  c0 = -y, c1 = x
    c0 = (-y, x)
    t = -(det2(c0, b) // d)  # ceil(-det(c0, b) / d)
    c = (c0[0] + t * a[0], c0[1] + t * a[1])
    assert det2(a, c) == 1 and 1 <= det2(c, b) < d
    return WeightVector(c)


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def regularize(rays: Sequence[WeightVector]) -> list[WeightVector]:
    """Refine a slope-ordered ray sequence until adjacent pairs are unimodular."""
    out = [rays[0]]
    stack = list(reversed(rays[1:]))
    while stack:
        b = stack[-1]
        a = out[-1]
        if det2(a, b) > 1:
            stack.append(insert_between(a, b))
        else:
            out.append(stack.pop())
    return out


class ConeSubdivision:
    """A fan of ``n``-dimensional simplicial cones and all their faces."""

    def __init__(self, n: int, max_cones: Sequence[SimplicialCone], rays=None):
        self.n = n
        self.max_cones = tuple(max_cones)
        self._rays = tuple(rays) if rays is not None else None

    @cached_property
    def vertices(self) -> tuple[WeightVector, ...]:
        if self._rays is not None:
            return self._rays
        seen = []
        for c in self.max_cones:
            for v in c.vertices:
                if v not in seen:
                    seen.append(v)
        return tuple(sorted(seen, key=slope_key)) if self.n == 2 else tuple(seen)

    @property
    def strictly_positive_vertices(self) -> tuple[WeightVector, ...]:
        return tuple(v for v in self.vertices if v.strictly_positive)

    @cached_property
    def cones(self) -> tuple[SimplicialCone, ...]:
        """All cones of the fan: rays first, then higher dimensions."""
        seen: dict[SimplicialCone, None] = {}
        for k in range(1, self.n + 1):
            for c in self.max_cones:
                for vs in combinations(c.vertices, k):
                    seen.setdefault(SimplicialCone(vs))
        return tuple(seen)

    def contains(self, cone: SimplicialCone) -> bool:
        return any(c.contains_face(cone) for c in self.max_cones)

    def charts_containing(self, cone: SimplicialCone) -> list[SimplicialCone]:
        return [c for c in self.max_cones if c.contains_face(cone)]

    @property
    def regular(self) -> bool:
        return all(is_regular(c) for c in self.max_cones)

    def covers_orthant(self) -> bool:
        """For ``n = 2``: consecutive cones share rays from ``E_1`` to ``E_2``."""
        if self.n != 2:
            raise UnsupportedDimension("coverage check implemented for n = 2")
        cones = sorted(self.max_cones, key=lambda c: min(slope_key(v) for v in c.vertices))
        cur = WeightVector((1, 0))
        for c in cones:
            lo, hi = sorted(c.vertices, key=slope_key)
            if lo != cur:
                return False
            cur = hi
        return cur == WeightVector((0, 1))

    def to_dict(self) -> dict:
        return {
            "vertices": [list(v.p) for v in self.vertices],
            "cones": [c.matrix() for c in self.max_cones],
        }


def _pairs(rays):
    return [SimplicialCone((a, b)) for a, b in zip(rays, rays[1:])]


def canonical_subdivision(f: MixedPolynomial) -> ConeSubdivision:
    """Regular refinement of the dual diagram of a convenient two-variable germ.

    Each non-unimodular adjacent pair ``(A, B)`` receives the unique ray
    ``C`` in between with ``det(A, C) = 1`` and ``det(C, B)`` smallest
    (Hirzebruch-Jung continued fraction), repeated until every pair is
    unimodular.
    """
    dd = dual_diagram(f)
    rays = regularize(dd.rays)
    return ConeSubdivision(2, _pairs(rays), rays)


def subdivision_from_rays(rays: Sequence[Sequence[int]]) -> ConeSubdivision:
    ws = sorted((WeightVector(tuple(r)) for r in rays), key=slope_key)
    return ConeSubdivision(2, _pairs(ws), ws)


def is_admissible(c: SimplicialCone, f: MixedPolynomial) -> bool:
    """No ray of the dual diagram of ``f`` lies strictly inside ``c``."""
    if c.n != 2 or f.n != 2:
        raise UnsupportedDimension("admissibility is decided for n = 2 only")
    if c.dim == 1:
        return True
    a, b = c.vertices
    return not any(strictly_between(a, b, r) for r in dual_diagram(f).rays)


def face_intersection_holds(c: SimplicialCone, f: MixedPolynomial) -> bool:
    """``Delta(P_tau)`` equals the intersection of the vertex faces."""
    inter = None
    for v in c.vertices:
        pts = face(f, v).points
        inter = pts if inter is None else inter & pts
    return face(f, c.interior_point).points == inter


def is_convenient_subdivision(s: ConeSubdivision, f: MixedPolynomial) -> bool:
    """Every coordinate cone ``Cone(E_j : j not in I)`` with ``f^I != 0`` is in ``s``."""
    rep = is_convenient(f)
    if not rep:
        raise NotConvenient(f"f has no term on the z{rep.first_missing} axis")
    n = s.n
    for k in range(1, n):
        for index_set in combinations(range(1, n + 1), k):
            if not restrict(f, index_set):
                continue
            comp = [j for j in range(1, n + 1) if j not in index_set]
            cone = SimplicialCone([WeightVector.unit(n, j) for j in comp])
            if not s.contains(cone):
                return False
    return True
