from fractions import Fraction

import numpy as np
import pytest

from mixres import WeightVector, dual_diagram, face, newton_boundary, parse, support, weight_min
from mixres.errors import (EmptyPolynomial, NegativeEntry, NotConvenient, UnsupportedDimension,
                           ZeroVector)
from mixres.mixed_poly import MixedPolynomial
from mixres.newton import face_class, support_points

from conftest import AB_PAIRS, E1, E2, P, Q, R, S, f_ab
from strategies import random_convenient


def test_weight_vector_normalises_and_validates():
    assert WeightVector((6, 4)).p == (3, 2)
    assert WeightVector((0, 5)).p == (0, 1)
    with pytest.raises(NegativeEntry):
        WeightVector((-1, 2))
    with pytest.raises(ZeroVector):
        WeightVector((0, 0))


@pytest.mark.parametrize("a, b", AB_PAIRS)
def test_support_of_family(a, b):
    sp = support(f_ab(a, b))
    assert [s.point for s in sp] == [(6, 0), (4, 3), (2, 3), (0, 6)]
    assert all(len(s.terms) == 1 for s in sp)


def test_support_collision_and_one_variable():
    sp = support(parse("z1^2*zb2 + z1*zb1*z2", 2))
    assert len(sp) == 1 and sp[0].point == (2, 1) and len(sp[0].terms) == 2
    assert support_points(parse("z1*zb1", 1)) == [(2,)]
    with pytest.raises(EmptyPolynomial):
        support(MixedPolynomial(2))


def test_weight_min_examples(example):
    assert weight_min(example, P) == 12
    assert weight_min(example, S) == 5
    assert weight_min(example, E1) == 0
    assert weight_min(example, (6, 4)) == 24


def test_face_examples(example):
    fq = face(example, Q)
    assert fq.points == {(6, 0), (2, 3)} and fq.dim == 1 and fq.compact
    fr = face(example, R)
    assert fr.points == {(0, 6)} and fr.dim == 0
    fe = face(example, E1)
    assert fe.points == {(0, 6)} and fe.recession == {2} and not fe.compact
    assert face(example, (6, 8)) == fq


def test_newton_boundary_examples(example):
    st = newton_boundary(example)
    assert st.vertices == ((6, 0), (2, 3), (0, 6))
    assert [e.normal.p for e in st.edges] == [(3, 4), (3, 2)]
    assert (4, 3) in st.interior
    st2 = newton_boundary(parse("z1^2*zb1 + z2^3", 2))
    assert st2.vertices == ((3, 0), (0, 3)) and st2.edges[0].normal.p == (1, 1)


def test_newton_boundary_errors():
    with pytest.raises(UnsupportedDimension):
        newton_boundary(parse("z1 + z2 + z3", 3))
    with pytest.raises(NotConvenient):
        newton_boundary(parse("z1*zb2 + z1^3", 2))


def test_dual_diagram_examples(example):
    dd = dual_diagram(example)
    assert [r.p for r in dd.rays] == [E1, P, Q, E2]
    assert [r.p for r in dual_diagram(parse("z1^2*zb1 + z2^3", 2)).rays] == [E1, (1, 1), E2]
    g = parse("z1^3 + z1*z2 + z2^3", 2)
    dd = dual_diagram(g)
    assert len(dd.edge_normals) == 2 and len(dd.classes) == 2 * 2 + 3
    assert len(dd.strict_classes()) == 2 * 2 + 1


def test_face_class(example):
    dd = dual_diagram(example)
    assert face_class(dd, P) == ("ray", WeightVector(P))
    assert face_class(dd, S)[0] == "sector"
    assert face_class(dd, R)[1:] == (WeightVector(E1), WeightVector(P))


def _check_face_invariants(f, w):
    fc = face(f, w)
    d = weight_min(f, w)
    for x in support_points(f):
        if x in fc.points:
            assert w(x) == d
        else:
            assert w(x) > d


def test_face_attains_minimum_random():
    rng = np.random.default_rng(11)
    for _ in range(100):
        f = random_convenient(rng)
        raw = tuple(int(v) for v in rng.integers(0, 20, size=2))
        w = WeightVector(raw if any(raw) else (1, 1))
        _check_face_invariants(f, w)
        k = int(rng.integers(2, 6))
        assert face(f, tuple(k * c for c in w.p)).points == face(f, w).points
        assert weight_min(f, tuple(k * c for c in w.p)) == k * weight_min(f, w)


def test_axis_weights_random_convenient():
    rng = np.random.default_rng(7)
    for trial in range(200):
        n = 2 if trial % 2 == 0 else 3
        f = random_convenient(rng, n=n)
        for j in range(n):
            e = WeightVector.unit(n, j + 1)
            assert weight_min(f, e) == 0
            pts = face(f, e).points
            for t in f.terms:
                if t.exps.radial in pts:
                    assert t.nu[j] == 0 and t.mu[j] == 0


def test_staircase_walk_random():
    rng = np.random.default_rng(5)
    for _ in range(200):
        f = random_convenient(rng)
        st = newton_boundary(f)
        # edges run from the z1 axis, so slopes increase walking from the z2 axis
        slopes = [Fraction(e.normal[1], e.normal[0]) for e in reversed(st.edges)]
        assert all(a < b for a, b in zip(slopes, slopes[1:]))
        for i in range(1, len(st.vertices) - 1):
            n1, n2 = st.edges[i - 1].normal, st.edges[i].normal
            s = tuple(x + y for x, y in zip(n1, n2))
            assert face(f, s).points == {st.vertices[i]}
        for r in dual_diagram(f).rays[1:-1]:
            assert r.strictly_positive
