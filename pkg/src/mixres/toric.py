"""Toric charts, pull-backs, the factored strict transform and the certificate.

On the chart of a regular ``n``-cone ``sigma = Cone(P_1, ..., P_n)`` the
coordinates are ``z_i = prod_j u_j^{p_ij}``.  With the first ``k`` vertices
strictly positive, the pull-back of ``f`` factors as

    prod_{j<=k} u_j^{(r_j+p_j)/2} ubar_j^{(r_j-p_j)/2} * (f~_Delta + R~)

where ``r_j, p_j`` are the radial and polar degrees of the face function of
``P_j``; ``f~_Delta`` gathers the terms on ``Delta = cap Delta(P_j)`` and is
free of ``u_1, ..., u_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import numeric
from .errors import (NonIntegerHalfDegrees, NonStrictVertex, NotAdmissible,
                     NotConvenient, NotConvenientSubdivision, NotFullDimensional,
                     NotRegular, NotStronglyMixedHomogeneous, PreconditionNotVerified,
                     UnsupportedDimension)
from .faces import classify_face_type, degrees
from .fan import (ConeSubdivision, SimplicialCone, is_admissible,
                  is_convenient_subdivision, is_regular, make_cone)
from .mixed_poly import GaussianRational, MixedPolynomial, ZERO, is_convenient
from .newton import WeightVector, face

EMPTY = "EMPTY"
NONEMPTY = "NONEMPTY"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ChartMonomial:
    """``coeff * prod u_j^{u_exps[j]} ubar_j^{ubar_exps[j]}``; exponents may be negative."""

    coeff: GaussianRational
    u_exps: tuple[int, ...]
    ubar_exps: tuple[int, ...]

    def value(self, u: Sequence[complex]) -> complex:
        v = complex(self.coeff)
        for x, a, b in zip(u, self.u_exps, self.ubar_exps):
            v *= x ** a * np.conj(x) ** b
        return v

    def text(self) -> str:
        return _monomial_text(self.coeff, self.u_exps, self.ubar_exps)


def _power(name: str, j: int, e: int) -> str:
    if e == 1:
        return f"{name}{j}"
    return f"{name}{j}^{e}" if e > 0 else f"{name}{j}^({e})"


def _monomial_text(c, ue, be) -> str:
    parts = []
    for j, e in enumerate(ue, 1):
        if e:
            parts.append(_power("u", j, e))
    for j, e in enumerate(be, 1):
        if e:
            parts.append(_power("ub", j, e))
    mono = "*".join(parts)
    cs = str(c)
    if not mono:
        return cs
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{cs}*{mono}"


def sum_text(monos: Sequence[ChartMonomial]) -> str:
    if not monos:
        return "0"
    out = []
    for i, m in enumerate(monos):
        t = m.text()
        if i and t.startswith("-"):
            out.append(" - " + t[1:])
        else:
            out.append((" + " if i else "") + t)
    return "".join(out)


def _merge(n: int, items) -> list[ChartMonomial]:
    acc: dict = {}
    for c, ue, be in items:
        key = (tuple(ue), tuple(be))
        acc[key] = acc.get(key, ZERO) + c
    # descending total degree in u_1 first, matching the usual display order
    keys = sorted((k for k, c in acc.items() if c),
                  key=lambda k: tuple(-(a + b) for a, b in zip(*k)) + k[0])
    return [ChartMonomial(acc[k], k[0], k[1]) for k in keys]


# --------------------------------------------------------------------------
# charts

@dataclass(frozen=True)
class ChartMap:
    """``z_i = prod_j u_j^{rows[i][j]}`` for the chart of ``sigma``."""

    sigma: SimplicialCone
    rows: tuple

    def __call__(self, u: Sequence[complex]) -> list[complex]:
        out = []
        for row in self.rows:
            v = 1 + 0j
            for x, e in zip(u, row):
                v *= x ** e
            out.append(v)
        return out

    def text(self) -> str:
        comps = []
        for row in self.rows:
            parts = [_power("u", j, e) for j, e in enumerate(row, 1) if e]
            comps.append("*".join(parts) or "1")
        return "(" + ", ".join(comps) + ")"


def _cone(sigma) -> SimplicialCone:
    if isinstance(sigma, SimplicialCone):
        return sigma
    return make_cone(sigma)


def chart_map(sigma) -> ChartMap:
    sigma = _cone(sigma)
    if sigma.dim != sigma.n:
        raise NotFullDimensional(f"{sigma} has dimension {sigma.dim} < {sigma.n}")
    if not is_regular(sigma):
        raise NotRegular(f"{sigma} is not unimodular")
    return ChartMap(sigma, tuple(tuple(r) for r in sigma.matrix()))


def pullback(f: MixedPolynomial, sigma) -> list[ChartMonomial]:
    """Monomials ``c prod u_j^{P_j(nu)} ubar_j^{P_j(mu)}``."""
    cm = chart_map(sigma)
    vs = cm.sigma.vertices
    if cm.sigma.n != f.n:
        raise ValueError("chart and polynomial dimensions differ")
    items = [(t.coeff, [v(t.nu) for v in vs], [v(t.mu) for v in vs]) for t in f.terms]
    return _merge(f.n, items)


def evaluate_chart(monos: Sequence[ChartMonomial], u: Sequence[complex]) -> complex:
    return sum((m.value(u) for m in monos), 0j)


# --------------------------------------------------------------------------
# factorisation

@dataclass(frozen=True)
class RTerm:
    """One term of ``R~`` with its per-vertex bookkeeping."""

    monomial: ChartMonomial
    off_face: tuple[int, ...]       # 1-based j <= k with nu+mu not on Delta(P_j)
    lam: int                         # min over off_face of P_j(nu+mu) - r_j
    source: tuple                    # (nu, mu) of the originating term

    @property
    def refined_class(self) -> int | None:
        """Smoothness class of this term from the monomial rule; ``None`` = analytic.

        ``u^a ubar^b`` with ``a + b = s >= 1`` and one negative exponent is
        exactly ``C^{s-1}``; nonnegative exponents give a polynomial.
        """
        cls = None
        for a, b in zip(self.monomial.u_exps, self.monomial.ubar_exps):
            if a < 0 or b < 0:
                c = a + b - 1
                cls = c if cls is None else min(cls, c)
        return cls


@dataclass(frozen=True)
class ChartFactorization:
    sigma: SimplicialCone
    k: int
    monomial_factor: tuple            # ((r_j+p_j)/2, (r_j-p_j)/2) for j <= k
    f_tilde_delta: tuple              # ChartMonomial, free of u_1..u_k
    R_tilde: tuple                    # RTerm
    lambda_tau: int | None
    delta_points: frozenset
    degrees: tuple                    # (r_j, p_j) for j <= k

    @property
    def n(self) -> int:
        return self.sigma.n

    @property
    def tau(self) -> SimplicialCone:
        return SimplicialCone(self.sigma.vertices[: self.k])

    def factor_value(self, u) -> complex:
        v = 1 + 0j
        for x, (a, b) in zip(u, self.monomial_factor):
            v *= x ** a * np.conj(x) ** b
        return v

    def f_tilde(self, u: Sequence[complex]) -> complex:
        """``f~_Delta + R~`` with ``R~`` terms set to 0 where some ``u_j = 0`` (``j <= k``)
        carries a nonzero exponent pair."""
        total = evaluate_chart(self.f_tilde_delta, u)
        for rt in self.R_tilde:
            m = rt.monomial
            if any(u[j] == 0 and (m.u_exps[j] or m.ubar_exps[j]) for j in range(self.n)):
                continue
            total += m.value(u)
        return total

    def factored_value(self, u) -> complex:
        return self.factor_value(u) * self.f_tilde(u)

    def corner_value(self) -> GaussianRational:
        """Exact ``f~(0, ..., 0)``: the constant term of ``f~_Delta``."""
        total = ZERO
        for m in self.f_tilde_delta:
            if not any(m.u_exps) and not any(m.ubar_exps):
                total = total + m.coeff
        return total

    @property
    def delta_monomial_arrays(self) -> numeric.MonomialArrays:
        """``f~_Delta`` in the variables ``u_{k+1}, ..., u_n``."""
        k, n = self.k, self.n
        return numeric.MonomialArrays.build(
            [complex(m.coeff) for m in self.f_tilde_delta],
            [m.u_exps[k:] for m in self.f_tilde_delta],
            [m.ubar_exps[k:] for m in self.f_tilde_delta], n - k)

    def exponent_sums(self) -> list[tuple[int, ...]]:
        """``a_j + b_j`` for every ``R~`` term and every ``j``."""
        return [tuple(a + b for a, b in zip(rt.monomial.u_exps, rt.monomial.ubar_exps))
                for rt in self.R_tilde]

    def render(self) -> str:
        fac = []
        for j, (a, b) in enumerate(self.monomial_factor, 1):
            if a:
                fac.append(_power("u", j, a))
            if b:
                fac.append(_power("ub", j, b))
        inner = list(r.monomial for r in self.R_tilde) + list(self.f_tilde_delta)
        body = sum_text(inner)
        head = "*".join(fac)
        return f"{head}*({body})" if head else f"({body})"


def _vertex_degrees(f: MixedPolynomial, P: WeightVector, j: int):
    if not P.strictly_positive:
        raise NonStrictVertex(f"vertex {j} = {P} is not strictly positive")
    rec = degrees(f, P)
    if rec.pdeg is None:
        raise NotStronglyMixedHomogeneous(
            f"face function of vertex {j} = {P} has no polar degree", index=j)
    r, p = rec.rdeg, rec.pdeg
    if (r + p) % 2:
        raise NonIntegerHalfDegrees(f"vertex {j} = {P}: r + p = {r + p} is odd")
    return r, p


def factorize(f: MixedPolynomial, sigma, k: int) -> ChartFactorization:
    sigma = chart_map(sigma).sigma
    n = sigma.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    vs = sigma.vertices
    degs = [_vertex_degrees(f, vs[j], j + 1) for j in range(k)]
    faces = [face(f, vs[j]).points for j in range(k)]
    delta = frozenset.intersection(*faces)
    half = [((r + p) // 2, (r - p) // 2) for r, p in degs]
    delta_terms, rest = [], []
    for t in f.terms:
        x = t.exps.radial
        ue = [v(t.nu) for v in vs]
        be = [v(t.mu) for v in vs]
        for j in range(k):
            ue[j] -= half[j][0]
            be[j] -= half[j][1]
        mono = ChartMonomial(t.coeff, tuple(ue), tuple(be))
        if x in delta:
            delta_terms.append(mono)
            continue
        off = tuple(j + 1 for j in range(k) if x not in faces[j])
        lam = min(vs[j - 1](x) - degs[j - 1][0] for j in off)
        rest.append(RTerm(mono, off, lam, (t.nu, t.mu)))
    ftd = _merge(n, [(m.coeff, m.u_exps, m.ubar_exps) for m in delta_terms])
    rest.sort(key=lambda r: tuple(-(a + b) for a, b in zip(r.monomial.u_exps, r.monomial.ubar_exps))
              + r.monomial.u_exps)
    lam_tau = min((r.lam for r in rest), default=None)
    return ChartFactorization(sigma, k, tuple(half), tuple(ftd), tuple(rest), lam_tau,
                              delta, tuple(degs))


def lambda_of_cone(f: MixedPolynomial, tau) -> int | None:
    """``min P_j(nu+mu) - r_j`` over terms off ``Delta(P_j)``; ``None`` if there are none."""
    tau = _cone(tau)
    vals = []
    for j, P in enumerate(tau.vertices, 1):
        if not P.strictly_positive:
            raise NonStrictVertex(f"vertex {j} = {P} is not strictly positive")
        fc = face(f, P)
        vals.extend(P(x) - fc.d for x in {t.exps.radial for t in f.terms} if x not in fc.points)
    return min(vals, default=None)


# --------------------------------------------------------------------------
# strict transform probes

@dataclass(frozen=True)
class ProbeResult:
    status: str
    method: str
    witness: tuple | None = None
    residual: float | None = None
    chart: SimplicialCone | None = None


def _seed_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def strict_transform_probe(f: MixedPolynomial, sigma, k: int, seed=0,
                           starts: int = numeric.STARTS) -> ProbeResult:
    """Is ``{f~_Delta = 0}`` nonempty on the torus of ``u_{k+1}, ..., u_n``?

    Exact cases first: a nonzero constant or a single monomial never
    vanishes there.  Otherwise a seeded numeric search runs; the random
    generator is only created in that branch.
    """
    fac = factorize(f, sigma, k)
    return probe_factorization(fac, seed, starts)


def probe_factorization(fac: ChartFactorization, seed=0, starts: int = numeric.STARTS) -> ProbeResult:
    terms = fac.f_tilde_delta
    if not terms:
        return ProbeResult(NONEMPTY, "zero", None, 0.0, fac.sigma)
    if fac.k == fac.n:
        return ProbeResult(EMPTY, "constant", None, None, fac.sigma)
    if len(terms) == 1:
        return ProbeResult(EMPTY, "monomial", None, None, fac.sigma)
    search = numeric.find_torus_zero(fac.delta_monomial_arrays, _seed_rng(seed), starts)
    if search.found:
        return ProbeResult(NONEMPTY, "numeric", search.point, search.residual, fac.sigma)
    return ProbeResult(UNKNOWN, "numeric", None, search.residual, fac.sigma)


# --------------------------------------------------------------------------
# certificate

@dataclass(frozen=True)
class ConeRecord:
    tau: SimplicialCone
    lambda_tau: int | None
    status: str
    probes: tuple  # ProbeResult per chart

    @property
    def witness(self):
        for p in self.probes:
            if p.status == NONEMPTY:
                return p
        return None


@dataclass(frozen=True)
class CornerCheck:
    chart: SimplicialCone
    value: GaussianRational

    @property
    def ok(self) -> bool:
        return bool(self.value)


@dataclass(frozen=True)
class SmoothnessCertificate:
    per_cone: tuple
    L_set_conservative: frozenset
    L_set_optimistic: frozenset
    corners: tuple
    refined_min_class: int | None = None

    @property
    def lambda_conservative(self) -> int | None:
        return min(self.L_set_conservative, default=None)

    @property
    def lambda_optimistic(self) -> int | None:
        return min(self.L_set_optimistic, default=None)

    Lambda = lambda_conservative

    @property
    def smoothness_class(self) -> str:
        lam = self.lambda_conservative
        return "real-analytic" if lam is None else f"C^{lam - 1}"

    @property
    def class_order(self) -> float:
        lam = self.lambda_conservative
        return float("inf") if lam is None else lam - 1

    @property
    def assumption_star(self) -> str:
        bad = [c for c in self.corners if not c.ok]
        if bad:
            return f"VIOLATED({bad[0].chart})"
        return "HOLDS"

    @property
    def c1_lower_bound_satisfied(self) -> bool:
        """The certified class is at least ``C^1``."""
        return self.class_order >= 1


def _check_certify_preconditions(f: MixedPolynomial, s: ConeSubdivision):
    if f.n != 2 or s.n != 2:
        raise UnsupportedDimension(f"certification is implemented for n = 2, got n = {f.n}")
    rep = is_convenient(f)
    if not rep:
        raise NotConvenient(f"f has no term on the z{rep.first_missing} axis")
    verdict = classify_face_type(f)
    if not verdict.non_negative:
        raise PreconditionNotVerified(
            f"face type is {verdict.verdict} (offending weight {verdict.offending_face})")
    for c in s.max_cones:
        if not is_regular(c):
            raise NotRegular(f"{c} is not unimodular")
        if not is_admissible(c, f):
            raise NotAdmissible(f"{c} is not admissible for f")
    if not is_convenient_subdivision(s, f):
        raise NotConvenientSubdivision("an axis cone is missing from the subdivision")


def _cone_job(args):
    f, s, tau, idx, seed, starts = args
    lam = lambda_of_cone(f, tau)
    probes = []
    if tau.dim == s.n:
        fac = factorize(f, tau.chart_order(), tau.dim)
        probes.append(probe_factorization(fac))
    else:
        ss = np.random.SeedSequence([seed, idx])
        for chart in s.charts_containing(tau):
            rest = [v for v in chart.vertices if v not in tau.vertices]
            ordered = SimplicialCone(list(tau.vertices) + rest)
            fac = factorize(f, ordered, tau.dim)
            probes.append(probe_factorization(fac, ss, starts))
    statuses = {p.status for p in probes}
    status = NONEMPTY if NONEMPTY in statuses else (UNKNOWN if UNKNOWN in statuses else EMPTY)
    return ConeRecord(tau, lam, status, tuple(probes))


def certify(f: MixedPolynomial, s: ConeSubdivision, seed: int = 0,
            starts: int = numeric.STARTS, executor=None) -> SmoothnessCertificate:
    """Smoothness certificate for the strict transform over the chosen fan.

    Every cone whose vertices are all strictly positive gets ``Lambda(tau)``
    and an emptiness status for ``{f~_Delta = 0}``.  Cones with UNKNOWN
    status enter the conservative set only.  ``executor`` (anything with a
    ``map`` method) may run the per-cone jobs in parallel; the result does
    not depend on scheduling.
    """
    _check_certify_preconditions(f, s)
    cones = [c for c in s.cones if c.strictly_positive]
    jobs = [(f, s, tau, i, seed, starts) for i, tau in enumerate(cones)]
    mapper = executor.map if executor is not None else map
    records = tuple(mapper(_cone_job, jobs))
    cons = frozenset(r.lambda_tau for r in records
                     if r.lambda_tau is not None and r.status in (NONEMPTY, UNKNOWN))
    opt = frozenset(r.lambda_tau for r in records
                    if r.lambda_tau is not None and r.status == NONEMPTY)
    corners = []
    for chart in s.max_cones:
        ordered = chart.chart_order()
        k = sum(v.strictly_positive for v in ordered.vertices)
        if 0 < k < s.n:
            corners.append(CornerCheck(ordered, factorize(f, ordered, k).corner_value()))
    refined = None
    for r in records:
        if r.status == EMPTY or r.lambda_tau is None:
            continue
        for chart in s.charts_containing(r.tau):
            rest = [v for v in chart.vertices if v not in r.tau.vertices]
            fac = factorize(f, SimplicialCone(list(r.tau.vertices) + rest), r.tau.dim)
            for rt in fac.R_tilde:
                c = rt.refined_class
                if c is not None:
                    refined = c if refined is None else min(refined, c)
    return SmoothnessCertificate(records, cons, opt, tuple(corners), refined)
