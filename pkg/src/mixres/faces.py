"""Face functions, radial/polar degrees and face-type classification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonCompactFace, PreconditionNotVerified, UnsupportedDimension
from .mixed_poly import MixedPolynomial, MixedTerm
from .newton import WeightVector, face, newton_boundary, dual_diagram

STRONGLY_POLAR_POSITIVE = "StronglyPolarPositive"
STRONGLY_POLAR_NON_NEGATIVE = "StronglyPolarNonNegative"
NOT_OF_TYPE = "NotOfType"


def _compact_weight(f: MixedPolynomial, P) -> WeightVector:
    w = WeightVector.of(P)
    if w.n != f.n:
        raise ValueError(f"weight has {w.n} entries, expected {f.n}")
    if not w.strictly_positive:
        raise NonCompactFace(f"face of weight {w} is not compact (zero entries at {sorted(w.zero_set)})")
    return w


def face_function(f: MixedPolynomial, P) -> MixedPolynomial:
    """Sub-sum of ``f`` over the terms whose support point lies on ``Delta(P)``."""
    w = _compact_weight(f, P)
    pts = face(f, w).points
    return MixedPolynomial(f.n, [t for t in f.terms if t.exps.radial in pts])


@dataclass(frozen=True)
class TermContribution:
    """Per-term data of a face table: ``(nu_j + mu_j, nu_j - mu_j)`` per coordinate."""

    term: MixedTerm
    coords: tuple  # ((nu_j + mu_j, nu_j - mu_j) for j)
    radial: int
    polar: int


@dataclass(frozen=True)
class FaceDegreeRecord:
    """Radial degree ``rdeg`` and, when defined, polar degree ``pdeg`` of a face function.

    ``pdeg`` is ``None`` when the face terms disagree on ``P(nu - mu)``; the
    record is then not polar weighted homogeneous and ``polar_sign`` is
    ``"mixed"``.
    """

    weight: WeightVector
    rdeg: int
    pdeg: int | None
    points: tuple
    dim: int
    contributions: tuple = field(default=())

    @property
    def strongly_mixed(self) -> bool:
        return self.pdeg is not None

    @property
    def polar_sign(self) -> str:
        if self.pdeg is None:
            return "mixed"
        return "positive" if self.pdeg > 0 else ("zero" if self.pdeg == 0 else "negative")

    @property
    def half_degrees(self) -> tuple[int, int] | None:
        """``((rdeg + pdeg)/2, (rdeg - pdeg)/2)`` when both are integers."""
        if self.pdeg is None or (self.rdeg + self.pdeg) % 2:
            return None
        return ((self.rdeg + self.pdeg) // 2, (self.rdeg - self.pdeg) // 2)


def degrees(f: MixedPolynomial, P) -> FaceDegreeRecord:
    w = _compact_weight(f, P)
    fc = face(f, w)
    contribs = []
    for t in f.terms:
        if t.exps.radial not in fc.points:
            continue
        coords = tuple((a + b, a - b) for a, b in zip(t.nu, t.mu))
        contribs.append(TermContribution(t, coords, w(t.exps.radial), w(t.exps.polar)))
    polars = {c.polar for c in contribs}
    pdeg = polars.pop() if len(polars) == 1 else None
    return FaceDegreeRecord(w, fc.d, pdeg, tuple(fc.sorted_points()), fc.dim, tuple(contribs))


@dataclass(frozen=True)
class FaceEntry:
    """One compact face with every weight used to test it."""

    points: tuple
    dim: int
    records: tuple  # FaceDegreeRecord per candidate weight

    @property
    def sign_disagreement(self) -> bool:
        return len({r.polar_sign for r in self.records}) > 1


@dataclass(frozen=True)
class FaceTypeVerdict:
    verdict: str
    faces: tuple  # FaceEntry per compact face, staircase order
    offending_face: WeightVector | None = None

    @property
    def table(self) -> list[FaceDegreeRecord]:
        return [r for e in self.faces for r in e.records]

    @property
    def flags(self) -> list[str]:
        return [f"sign disagreement on face {e.points}" for e in self.faces
                if e.sign_disagreement]

    @property
    def non_negative(self) -> bool:
        return self.verdict in (STRONGLY_POLAR_POSITIVE, STRONGLY_POLAR_NON_NEGATIVE)


def vertex_candidates(f: MixedPolynomial) -> dict:
    """Strictly positive weights supporting each vertex of the staircase.

    For every vertex: the sum of its two adjacent dual rays, plus each
    strictly positive ray of the canonical subdivision whose face is exactly
    that vertex.  Returned in increasing slope order.
    """
    from .fan import canonical_subdivision
    from .newton import slope_key

    dd = dual_diagram(f)
    rays = dd.rays
    out: dict = {}
    for a, b in zip(rays, rays[1:]):
        s = WeightVector(tuple(x + y for x, y in zip(a, b)))
        pts = face(f, s).points
        assert len(pts) == 1
        out.setdefault(next(iter(pts)), set()).add(s)
    for v in canonical_subdivision(f).strictly_positive_vertices:
        pts = face(f, v).points
        if len(pts) == 1:
            out.setdefault(next(iter(pts)), set()).add(v)
    return {k: sorted(v, key=slope_key) for k, v in out.items()}


def classify_face_type(f: MixedPolynomial) -> FaceTypeVerdict:
    """Decide the face type over every compact face (two variables only).

    Edges are tested with their normal.  Vertices are tested with every
    candidate from :func:`vertex_candidates`; all of them must pass, and any
    disagreement in sign between candidates is reported in ``flags``.
    """
    if f.n != 2:
        raise UnsupportedDimension(f"face enumeration needs n = 2, got n = {f.n}")
    st = newton_boundary(f)
    cands = vertex_candidates(f)
    entries = []
    for i, v in enumerate(st.vertices):
        recs = tuple(degrees(f, w) for w in cands[v])
        entries.append(FaceEntry((v,), 0, recs))
        if i < len(st.edges):
            e = st.edges[i]
            entries.append(FaceEntry(e.points, 1, (degrees(f, e.normal),)))
    verdict = STRONGLY_POLAR_POSITIVE
    offending = None
    for e in entries:
        for r in e.records:
            if r.pdeg is None or r.pdeg < 0:
                verdict, offending = NOT_OF_TYPE, r.weight
                break
            if r.pdeg == 0 and verdict == STRONGLY_POLAR_POSITIVE:
                verdict = STRONGLY_POLAR_NON_NEGATIVE
        if verdict == NOT_OF_TYPE:
            break
    return FaceTypeVerdict(verdict, tuple(entries), offending)


@dataclass(frozen=True)
class WeightTransferReport:
    trials: int
    seed: int
    passed: int
    counterexample: WeightVector | None
    pdeg_values: tuple

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def random_positive_weights(rng: np.random.Generator, n: int, count: int, bound: int = 50):
    out = []
    while len(out) < count:
        p = tuple(int(x) for x in rng.integers(1, bound + 1, size=n))
        w = WeightVector(p)
        out.append(w)
    return out


def check_weight_transfer(f: MixedPolynomial, trials: int = 500, seed: int = 0) -> WeightTransferReport:
    """Sample strictly positive weights and check ``pdeg`` exists and is ``>= 0``.

    Requires a germ of strongly polar non-negative face type; a failure here
    points at an implementation bug.
    """
    verdict = classify_face_type(f)
    if not verdict.non_negative:
        raise PreconditionNotVerified(
            f"face type is {verdict.verdict} (offending weight {verdict.offending_face})")
    rng = np.random.default_rng(seed)
    passed, bad, values = 0, None, []
    for w in random_positive_weights(rng, f.n, trials):
        rec = degrees(f, w)
        values.append(rec.pdeg)
        if rec.pdeg is None or rec.pdeg < 0:
            bad = bad or w
        else:
            passed += 1
    return WeightTransferReport(trials, seed, passed, bad, tuple(values))


def transfer_exhaustive(f: MixedPolynomial, bound: int = 50):
    """Every primitive strictly positive weight with entries ``<= bound`` (n = 2)."""
    from math import gcd

    for p1 in range(1, bound + 1):
        for p2 in range(1, bound + 1):
            if gcd(p1, p2) == 1:
                yield degrees(f, (p1, p2))


__all__ = ["face_function", "degrees", "classify_face_type", "check_weight_transfer",
           "FaceDegreeRecord", "FaceTypeVerdict"]
