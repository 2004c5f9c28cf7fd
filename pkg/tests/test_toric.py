import numpy as np
import pytest

from mixres import (canonical_subdivision, certify, chart_map, evaluate, factorize,
                    lambda_of_cone, make_cone, parse, pullback, strict_transform_probe)
from mixres.errors import (NonStrictVertex, NotFullDimensional, NotRegular,
                           NotStronglyMixedHomogeneous, PreconditionNotVerified)
from mixres.toric import EMPTY, NONEMPTY, evaluate_chart, sum_text

from conftest import AB_PAIRS, E1, E2, P, Q, R, S, T, U, f_ab


def torus_points(rng, count, n=2):
    mod = np.exp(rng.uniform(-0.7, 0.7, size=(count, n)))
    return mod * np.exp(1j * rng.uniform(-np.pi, np.pi, size=(count, n)))


def test_chart_map_examples():
    assert chart_map(make_cone([R, P])).text() == "(u1^2*u2^3, u1*u2^2)"
    assert chart_map(make_cone([S, Q])).text() == "(u1*u2^3, u1*u2^4)"
    ident = chart_map(make_cone([E1, E2]))
    assert ident([2j, 3]) == [2j, 3]
    with pytest.raises(NotRegular):
        chart_map(make_cone([E1, P]))
    with pytest.raises(NotFullDimensional):
        chart_map(make_cone([P]))


def test_pullback_collisions_are_merged():
    g = parse("z1*zb2 + z2*zb1", 2)
    monos = pullback(g, make_cone([E1, E2]))
    assert len(monos) == 2
    monos = pullback(parse("z1*zb1 + 2*z1*zb1", 2), make_cone([S, Q]))
    assert len(monos) == 1 and str(monos[0].coeff) == "3"


@pytest.mark.parametrize("a, b", AB_PAIRS)
def test_factorization_identity_all_charts(a, b):
    f = f_ab(a, b)
    rng = np.random.default_rng(100 + 4 * a + b)
    for chart in canonical_subdivision(f).max_cones:
        sigma = chart.chart_order()
        k = sum(v.strictly_positive for v in sigma.vertices)
        fac = factorize(f, sigma, k)
        monos = pullback(f, sigma)
        cm = chart_map(sigma)
        # exact term-by-term identity: factor exponents plus inner exponents
        inner = list(fac.f_tilde_delta) + [r.monomial for r in fac.R_tilde]
        shifted = sorted(
            (tuple(m.u_exps[j] + (fac.monomial_factor[j][0] if j < k else 0) for j in range(2)),
             tuple(m.ubar_exps[j] + (fac.monomial_factor[j][1] if j < k else 0) for j in range(2)),
             m.coeff) for m in inner)
        assert shifted == sorted((m.u_exps, m.ubar_exps, m.coeff) for m in monos)
        for u in torus_points(rng, 50):
            direct = evaluate(f, cm(u))
            pulled = evaluate_chart(monos, u)
            factored = fac.factored_value(u)
            scale = max(abs(direct), 1e-300)
            assert abs(pulled - direct) <= 1e-9 * scale
            assert abs(factored - direct) <= 1e-9 * scale


def test_zero_set_decomposition():
    # pull-back vanishes on the torus exactly where the strict transform does
    f = f_ab(2, 1)
    fac = factorize(f, make_cone([S, Q]), 2)
    rng = np.random.default_rng(4)
    for u in torus_points(rng, 50):
        assert abs(fac.factor_value(u)) > 0
        val, ft = fac.factored_value(u), fac.f_tilde(u)
        assert (abs(val) < 1e-12) == (abs(ft) < 1e-12 / abs(fac.factor_value(u)))
    # one-vertex chart with a zero of f~ on the torus
    fq = factorize(f, make_cone([Q, S]), 1)
    w = strict_transform_probe(f, make_cone([Q, S]), 1).witness
    u = [1e-3 + 0j, w[0]]
    assert abs(fq.f_tilde([0, w[0]])) < 1e-10
    assert abs(evaluate_chart(pullback(f, make_cone([Q, S])), u)) <= 1e-9 * abs(fq.factor_value(u))


def test_clamp_sets_negative_terms_to_zero():
    f = f_ab(0, 0)
    fac = factorize(f, make_cone([R, P]), 2)
    neg = [r for r in fac.R_tilde if min(r.monomial.u_exps + r.monomial.ubar_exps) < 0]
    assert neg
    assert fac.f_tilde([0, 0]) == complex(fac.corner_value())
    # on u1 = 0 only f~_Delta = 1 survives; on u2 = 0 the ub1 term does too
    assert fac.f_tilde([0, 0.5]) == 1
    assert fac.f_tilde([0.5, 0]) == 1.5


def test_factorize_tau2_display():
    fac = factorize(f_ab(4, 0), make_cone([R, P]), 2)
    assert fac.render() == "u1^3*ub1^3*u2^6*ub2^6*(u1^5*u2^6*ub1 + u1^5*u2^6 + ub1 + 1)"
    assert fac.monomial_factor == ((3, 3), (6, 6))
    assert sum_text(fac.f_tilde_delta) == "1"


def test_factorize_one_vertex_chart():
    f = f_ab(1, 1)
    fac = factorize(f, make_cone([R, E1]), 1)
    assert fac.f_tilde([0, 0.3 + 0.1j]) == 1


def test_factorize_errors():
    f = f_ab(1, 1)
    with pytest.raises(NonStrictVertex):
        factorize(f, make_cone([E1, R]), 1)
    g = parse("z1^2 + z1*zb1 + z2^2", 2)
    with pytest.raises(NotStronglyMixedHomogeneous) as info:
        factorize(g, make_cone([(1, 1), (1, 2)]), 1)
    assert info.value.index == 1


def test_lambda_examples():
    f = f_ab(2, 2)
    assert lambda_of_cone(f, make_cone([Q])) == 6
    assert lambda_of_cone(f, make_cone([S, Q])) == 1
    assert lambda_of_cone(parse("z1^2*zb1 + z1*z2*zb2 + z2^2*zb2", 2), make_cone([(1, 1)])) is None
    with pytest.raises(NonStrictVertex):
        lambda_of_cone(f, make_cone([E1]))


@pytest.mark.parametrize("a, b", AB_PAIRS)
def test_exponent_and_lambda_invariants(a, b):
    f = f_ab(a, b)
    s = canonical_subdivision(f)
    for chart in s.max_cones:
        sigma = chart.chart_order()
        k = sum(v.strictly_positive for v in sigma.vertices)
        fac = factorize(f, sigma, k)
        for m in fac.f_tilde_delta:
            assert not any(m.u_exps[:k]) and not any(m.ubar_exps[:k])
        for rt in fac.R_tilde:
            assert rt.lam >= 1
            for j in range(k):
                aj, bj = rt.monomial.u_exps[j], rt.monomial.ubar_exps[j]
                if aj < 0 or bj < 0:
                    assert aj + bj >= 1
            c = rt.refined_class
            assert c is None or c >= rt.lam - 1
        if fac.R_tilde:
            assert fac.lambda_tau == min(r.lam for r in fac.R_tilde)
            assert fac.lambda_tau == lambda_of_cone(f, fac.tau)


def test_probe_examples():
    f = f_ab(3, 2)
    for chart in ([R, P], [R, E1]):
        cone = make_cone(chart)
        assert strict_transform_probe(f, cone, 1).status == EMPTY
    for chart in ([U, T], [U, E2]):
        assert strict_transform_probe(f, make_cone(chart), 1).status == EMPTY
    hit = strict_transform_probe(f, make_cone([Q, S]), 1, seed=3)
    assert hit.status == NONEMPTY and hit.residual < 1e-10
    fac = factorize(f, make_cone([Q, S]), 1)
    assert abs(fac.f_tilde([0, hit.witness[0]])) < 1e-10


def test_probe_is_seed_deterministic():
    f = f_ab(1, 3)
    a = strict_transform_probe(f, make_cone([P, S]), 1, seed=5)
    b = strict_transform_probe(f, make_cone([P, S]), 1, seed=5)
    assert a == b


def test_certificate_example():
    f = f_ab(2, 1)
    cert = certify(f, canonical_subdivision(f))
    status = {tuple(v.p for v in r.tau.vertices): (r.lambda_tau, r.status) for r in cert.per_cone}
    assert status[(R,)] == (1, EMPTY) and status[(U,)] == (2, EMPTY)
    assert status[(P,)] == (6, NONEMPTY) and status[(Q,)] == (6, NONEMPTY)
    assert cert.L_set_conservative == {6} and cert.smoothness_class == "C^5"
    assert cert.lambda_optimistic >= cert.lambda_conservative
    assert cert.assumption_star == "HOLDS" and cert.c1_lower_bound_satisfied
    assert len(cert.per_cone) == 6 + 5


def test_certificate_real_analytic():
    g = parse("z1^2*zb1 + z2^2*zb2", 2)
    cert = certify(g, canonical_subdivision(g))
    assert cert.L_set_conservative == frozenset() and cert.smoothness_class == "real-analytic"


def test_certificate_parallel_matches_serial():
    from concurrent.futures import ThreadPoolExecutor

    f = f_ab(0, 3)
    s = canonical_subdivision(f)
    with ThreadPoolExecutor(4) as ex:
        par = certify(f, s, seed=9, executor=ex)
    assert par == certify(f, s, seed=9)


def test_certify_rejects_wrong_face_type():
    g = parse("zb1^3 + zb2^3", 2)
    with pytest.raises(PreconditionNotVerified):
        certify(g, canonical_subdivision(g))
