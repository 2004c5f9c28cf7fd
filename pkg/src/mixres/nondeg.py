"""Mixed critical points and Newton non-degeneracy probes for face functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import numeric
from .errors import NotASingleMonomialVertex
from .faces import face_function
from .mixed_poly import MixedPolynomial, evaluate, term_arrays, wirtinger
from .newton import WeightVector, face

STRONGLY_ND_EXACT = "STRONGLY_ND_EXACT"
ND_EXACT = "ND_EXACT"
NO_VIOLATION_FOUND = "NO_VIOLATION_FOUND"
VIOLATION = "VIOLATION"

ZERO_TOL = 1e-10


def gradients(f: MixedPolynomial, z: Sequence[complex]):
    """``(df/dz_j, df/dzbar_j)`` for all ``j`` at the point ``z``."""
    dz = np.array([evaluate(wirtinger(f, j, "dz"), z) for j in range(1, f.n + 1)])
    dzb = np.array([evaluate(wirtinger(f, j, "dzbar"), z) for j in range(1, f.n + 1)])
    return dz, dzb


def criticality_residual(f: MixedPolynomial, z: Sequence[complex]) -> float:
    """``min over |alpha| = 1`` of ``|conj(df) - alpha dbar f|^2``.

    Equals ``|v|^2 + |w|^2 - 2 |<v, w>|`` with ``v = conj(df)`` and
    ``w = dbar f``; it vanishes exactly at mixed critical points.
    """
    dz, dzb = gradients(f, z)
    v, w = np.conj(dz), dzb
    r = float(np.vdot(v, v).real + np.vdot(w, w).real - 2 * abs(np.vdot(w, v)))
    return max(r, 0.0)


def vertex_rule(f: MixedPolynomial, P) -> str:
    """Exact non-degeneracy verdict for a vertex face carrying one monomial.

    ``nu != mu`` makes ``|df/dz_j| != |df/dzbar_j|`` on the torus for some
    ``j``, so there is no mixed critical point at all.  ``nu == mu`` gives a
    positive real function: every point is critical but 0 is never a value.
    """
    w = WeightVector.of(P)
    fd = face_function(f, w)
    fc = face(f, w)
    if fc.dim != 0 or len(fd) != 1:
        raise NotASingleMonomialVertex(
            f"face of {w} has dimension {fc.dim} and {len(fd)} terms")
    t = fd.terms[0]
    return STRONGLY_ND_EXACT if t.nu != t.mu else ND_EXACT


@dataclass(frozen=True)
class CriticalityReport:
    face_weight: WeightVector
    verdict: str
    min_residual: float
    samples: int
    seed: int
    point: tuple | None = None

    @property
    def violation(self) -> bool:
        return self.verdict == VIOLATION


def _arrays(fd: MixedPolynomial) -> numeric.MonomialArrays:
    c, nu, mu = term_arrays(fd)
    return numeric.MonomialArrays.build(c, nu, mu, fd.n)


def sample_nondegeneracy(f: MixedPolynomial, P, samples: int = 512, seed: int = 0,
                         max_iter: int = numeric.MAX_ITER) -> CriticalityReport:
    """Search the torus for a point where ``f_P`` vanishes and is mixed critical.

    A hit is rescaled along the weight ``P`` to unit size and accepted only
    if ``|f_P| < 1e-10`` and the criticality residual is below ``1e-10``
    there.  Finding nothing proves nothing.
    """
    w = WeightVector.of(P)
    fd = face_function(f, w)
    rng = np.random.default_rng(seed)
    point, obj = numeric.find_critical_zero(_arrays(fd), rng, samples, max_iter)
    z = _normalise(fd, w, point)
    if abs(evaluate(fd, z)) < ZERO_TOL and criticality_residual(fd, z) < ZERO_TOL:
        return CriticalityReport(w, VIOLATION, obj, samples, seed, tuple(z))
    return CriticalityReport(w, NO_VIOLATION_FOUND, obj, samples, seed)


def _normalise(fd: MixedPolynomial, w: WeightVector, z):
    """Move ``z`` along ``t -> t^P . z`` so that ``sum |c_t m_t(z)| = 1``."""
    d = min(w(t.exps.radial) for t in fd.terms)
    S = sum(abs(complex(t.coeff)) * np.prod([abs(x) ** e for x, e in zip(z, t.exps.radial)])
            for t in fd.terms)
    if not np.isfinite(S) or S <= 0:
        return list(z)
    lam = S ** (-1.0 / d)
    return [x * lam ** p for x, p in zip(z, w.p)]
