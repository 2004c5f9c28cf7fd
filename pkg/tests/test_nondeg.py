from fractions import Fraction

import numpy as np
import pytest

from mixres import GaussianRational, criticality_residual, parse, sample_nondegeneracy, vertex_rule
from mixres.errors import NonCompactFace, NotASingleMonomialVertex
from mixres.faces import vertex_candidates
from mixres.mixed_poly import evaluate, wirtinger
from mixres.nondeg import (ND_EXACT, NO_VIOLATION_FOUND, STRONGLY_ND_EXACT, VIOLATION,
                           gradients)

from conftest import E1, P, Q, R, S, T, U, f_ab

F_P = parse("zb1^2*z2^3 + z2^3*zb2^3", 2)


def random_torus(rng, n):
    return np.exp(rng.uniform(-1, 1, n)) * np.exp(1j * rng.uniform(-np.pi, np.pi, n))


def test_residual_examples():
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert criticality_residual(F_P, random_torus(rng, 2)) > 0
    assert criticality_residual(parse("z1*zb1", 1), [1]) == pytest.approx(0, abs=1e-15)


def test_residual_holomorphic_is_gradient_norm():
    rng = np.random.default_rng(1)
    h = parse("z1^3 + 2*z1*z2 - i*z2^2 + z1^2*z2", 2)
    for _ in range(50):
        z = random_torus(rng, 2)
        grad = [evaluate(wirtinger(h, j, "dz"), z) for j in (1, 2)]
        norm2 = sum(abs(g) ** 2 for g in grad)
        assert abs(criticality_residual(h, z) - norm2) <= 1e-12 * max(1.0, norm2)


def test_residual_phase_invariant():
    # rational points on the unit circle give exact global phases
    rng = np.random.default_rng(2)
    f = f_ab(2, 1) + parse("i*z1*zb2^2", 2)
    phases = [GaussianRational(Fraction(a, c), Fraction(b, c))
              for a, b, c in [(3, 4, 5), (-5, 12, 13), (8, -15, 17), (0, 1, 1)]]
    for alpha in phases:
        g = f.scale(alpha)
        for _ in range(25):
            z = random_torus(rng, 2)
            base = criticality_residual(f, z)
            assert abs(criticality_residual(g, z) - base) <= 1e-12 * max(1.0, base)


@pytest.mark.parametrize("w, verdict", [(U, STRONGLY_ND_EXACT), (T, STRONGLY_ND_EXACT),
                                        (S, STRONGLY_ND_EXACT), (R, ND_EXACT)])
def test_vertex_rule_family(w, verdict):
    for a in range(5):
        for b in range(4):
            assert vertex_rule(f_ab(a, b), w) == verdict


def test_vertex_rule_rejects_edges(example):
    with pytest.raises(NotASingleMonomialVertex):
        vertex_rule(example, P)


def test_sampling_agrees_with_vertex_rule(example):
    for pt, ws in vertex_candidates(example).items():
        for w in ws:
            rep = sample_nondegeneracy(example, w, samples=64, seed=1)
            assert rep.verdict == NO_VIOLATION_FOUND


def test_sampling_edges(example):
    for w in (P, Q):
        rep = sample_nondegeneracy(example, w, samples=512, seed=0)
        assert rep.verdict == NO_VIOLATION_FOUND and rep.min_residual > 0


def test_sampling_finds_degenerate_face():
    g = parse("z1^2 - 2*z1*z2 + z2^2", 2)
    rep = sample_nondegeneracy(g, (1, 1), samples=128, seed=0)
    assert rep.verdict == VIOLATION
    z = rep.point
    assert abs(evaluate(g, z)) < 1e-10 and criticality_residual(g, z) < 1e-10
    assert abs(z[0] - z[1]) < 1e-5 * abs(z[0])
    assert criticality_residual(g, [1, 1]) == 0 and evaluate(g, [1, 1]) == 0


def test_sampling_is_deterministic(example):
    a = sample_nondegeneracy(example, Q, samples=64, seed=42)
    b = sample_nondegeneracy(example, Q, samples=64, seed=42)
    assert a == b


def test_sampling_rejects_non_compact(example):
    with pytest.raises(NonCompactFace):
        sample_nondegeneracy(example, E1)
