from collections import Counter

import numpy as np
import pytest

from mixres import (WeightVector, canonical_subdivision, dual_diagram, face, is_admissible,
                    is_convenient_subdivision, is_regular, make_cone, parse, weight_min)
from mixres.errors import DependentVertices, NegativeEntry, NotConvenient, ZeroVector
from mixres.fan import (ConeSubdivision, face_intersection_holds, insert_between,
                        subdivision_from_rays)
from mixres.lattice import det2

from conftest import AB_PAIRS, E1, E2, P, Q, R, S, T, U, f_ab
from strategies import random_convenient

MATRICES = [
    [[1, 2], [0, 1]],
    [[2, 3], [1, 2]],
    [[3, 1], [2, 1]],
    [[1, 3], [1, 4]],
    [[3, 2], [4, 3]],
    [[2, 1], [3, 2]],
    [[1, 0], [2, 1]],
]


def test_make_cone_validation():
    with pytest.raises(DependentVertices):
        make_cone([(1, 2), (2, 4)])
    with pytest.raises(DependentVertices):
        make_cone([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(ZeroVector):
        make_cone([(0, 0)])
    with pytest.raises(NegativeEntry):
        make_cone([(1, -1)])


def test_regularity_examples():
    assert is_regular(make_cone([R, P]))
    assert not is_regular(make_cone([E1, P]))
    assert is_regular(make_cone([(2, 3)]))
    assert is_regular(make_cone([(2, 0, 2)]))  # normalised to (1, 0, 1)
    assert not is_regular(make_cone([(2, 1, 0), (0, 1, 2)]))


def test_cone_faces_and_order():
    c = make_cone([E1, R])
    assert c.matrix() == [[1, 2], [0, 1]]
    assert c.chart_order().vertices == (WeightVector(R), WeightVector(E1))
    assert c == make_cone([R, E1])
    assert len(c.faces()) == 3
    assert c.interior_point == (3, 1)


def test_insert_between_is_minimal():
    c = insert_between(WeightVector(E1), WeightVector(P))
    assert c.p == R
    assert insert_between(WeightVector(P), WeightVector(Q)).p == S
    assert insert_between(WeightVector(Q), WeightVector(E2)).p == T
    with pytest.raises(ValueError):
        insert_between(WeightVector(R), WeightVector(P))


@pytest.mark.parametrize("a, b", AB_PAIRS)
def test_canonical_subdivision_family(a, b):
    s = canonical_subdivision(f_ab(a, b))
    assert [v.p for v in s.vertices] == [E1, R, P, S, Q, T, U, E2]
    assert [c.matrix() for c in s.max_cones] == MATRICES
    assert s.regular and s.covers_orthant()
    assert all(is_admissible(c, f_ab(a, b)) for c in s.cones)
    assert is_convenient_subdivision(s, f_ab(a, b))


def test_canonical_subdivision_trivial():
    s = canonical_subdivision(parse("z1^2*zb1 + z2^3", 2))
    assert [v.p for v in s.vertices] == [E1, (1, 1), E2] and len(s.max_cones) == 2


def test_admissibility_examples(example):
    assert is_admissible(make_cone([R, P]), example)
    assert not is_admissible(make_cone([E1, Q]), example)
    assert is_admissible(make_cone([P]), example)


def test_convenient_subdivision_examples(example):
    s = canonical_subdivision(example)
    dropped = ConeSubdivision(2, s.max_cones[1:])
    assert not is_convenient_subdivision(dropped, example)
    with pytest.raises(NotConvenient):
        is_convenient_subdivision(s, parse("z1*zb2 + z2^2", 2))


def test_cones_listing(example):
    s = canonical_subdivision(example)
    assert len(s.cones) == 8 + 7
    assert [c.dim for c in s.cones[:8]] == [1] * 8
    assert len(s.charts_containing(make_cone([P]))) == 2
    assert len(s.charts_containing(make_cone([E1]))) == 1
    assert subdivision_from_rays([E2, P, E1, R, S, Q, T, U]).to_dict() == s.to_dict()


def _check_cone_identities(f, s):
    for c in s.cones:
        d_sum = sum(weight_min(f, v) for v in c.vertices)
        assert weight_min(f, c.interior_point) == d_sum
        assert face_intersection_holds(c, f)
        inner = face(f, c.interior_point).points
        assert all(inner <= face(f, v).points for v in c.vertices)


@pytest.mark.parametrize("a, b", AB_PAIRS)
def test_additivity_family(a, b):
    f = f_ab(a, b)
    _check_cone_identities(f, canonical_subdivision(f))


def test_additivity_random_staircases():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        f = random_convenient(rng)
        s = canonical_subdivision(f)
        assert s.regular and s.covers_orthant()
        assert {r for r in dual_diagram(f).rays} <= set(s.vertices)
        assert all(v.strictly_positive for v in s.vertices[1:-1])
        _check_cone_identities(f, s)


def test_insertion_terminates_with_decreasing_determinants():
    rng = np.random.default_rng(99)
    for _ in range(200):
        f = random_convenient(rng)
        rays = list(dual_diagram(f).rays)
        dets = Counter(det2(a, b) for a, b in zip(rays, rays[1:]))
        steps = 0
        while True:
            i = next((i for i in range(len(rays) - 1) if det2(rays[i], rays[i + 1]) > 1), None)
            if i is None:
                break
            a, b = rays[i], rays[i + 1]
            c = insert_between(a, b)
            rays.insert(i + 1, c)
            new = dets.copy()
            new[det2(a, b)] -= 1
            new[det2(a, c)] += 1
            new[det2(c, b)] += 1
            # one entry replaced by two strictly smaller ones
            assert det2(a, c) < det2(a, b) and det2(c, b) < det2(a, b)
            dets = +new
            steps += 1
            assert steps < 10_000
        assert [v.p for v in rays] == [v.p for v in canonical_subdivision(f).vertices]
