"""Numerical checks of the differentiability of ``xi(u) = u^(r+s) / ubar^r``.

``xi`` extends by 0 at the origin and is expected to be ``C^(s-1)`` there but
not ``C^s``.  The probe below is a falsification test, not a proof.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

RAYS = 8
RADII = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
TOL = 1e-4


@dataclass(frozen=True)
class FractionalMonomial:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError("r and s must be integers >= 1")

    @property
    def u_exp(self) -> int:
        return self.r + self.s

    @property
    def ubar_exp(self) -> int:
        return -self.r


def xi_eval(m: FractionalMonomial, u: complex) -> complex:
    u = complex(u)
    if u == 0:
        return 0j
    return u ** m.u_exp * u.conjugate() ** m.ubar_exp


def xi_conj_eval(m: FractionalMonomial, u: complex) -> complex:
    """``ubar^(r+s) / u^r``, the conjugate function."""
    u = complex(u)
    if u == 0:
        return 0j
    return u.conjugate() ** m.u_exp * u ** m.ubar_exp


def xi_real_form(m: FractionalMonomial, x: float, y: float) -> complex:
    """``(x + iy)^(2r+s) / (x^2 + y^2)^r``."""
    if x == 0 and y == 0:
        return 0j
    return complex(x, y) ** (2 * m.r + m.s) / (x * x + y * y) ** m.r


def _falling(e: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= e - i
    return out


def wirtinger_orders(m: FractionalMonomial, u: complex, a: int, b: int) -> complex:
    """``d^a/du^a d^b/dubar^b xi`` at ``u != 0``."""
    u = complex(u)
    if u == 0:
        raise DomainError("Wirtinger derivatives of xi are evaluated off the origin")
    p, q = m.u_exp, m.ubar_exp
    c = _falling(p, a) * _falling(q, b)
    if c == 0:
        return 0j
    return c * u ** (p - a) * u.conjugate() ** (q - b)


def real_partial(m: FractionalMonomial, u: complex, i: int, j: int) -> complex:
    """``d^i/dx^i d^j/dy^j xi`` through ``d/dx = d + dbar`` and ``d/dy = i(d - dbar)``."""
    total = 0j
    for a1 in range(i + 1):
        for a2 in range(j + 1):
            coeff = math.comb(i, a1) * math.comb(j, a2) * (-1) ** (j - a2)
            total += coeff * wirtinger_orders(m, u, a1 + a2, i + j - a1 - a2)
    return (1j ** j) * total


def _lower_over_h(m, i, j, h):
    """Difference quotient at 0 of the next-lower partial, whose value at 0 is 0."""
    if i > 0:
        point, lo = complex(h), (i - 1, j)
    else:
        point, lo = 1j * h, (i, j - 1)
    lower = real_partial(m, point, *lo) if sum(lo) else xi_eval(m, point)
    return lower / h


def extrapolate(v1, v2, v3):
    """Limit of ``v(r) = L + c r^alpha`` sampled at three radii in geometric ratio.

    Returns ``None`` when the samples move away from each other (no limit).
    Works elementwise on arrays.
    """
    v1, v2, v3 = (np.asarray(v, dtype=complex) for v in (v1, v2, v3))
    d1, d2 = v2 - v1, v3 - v2
    small = np.abs(d1) <= 1e-300
    ratio = np.where(small, 0.0, d2 / np.where(small, 1.0, d1))
    if np.any(np.abs(ratio) >= 1.0) and np.any(np.abs(d2) > TOL):
        return None
    ratio = np.where(np.abs(ratio) >= 1.0, 0.0, ratio)
    return v3 + d2 * ratio / (1.0 - ratio)


@dataclass(frozen=True)
class SweepRow:
    order: int
    partial: tuple          # (i, j): order in x and in y
    radius: float
    spread: float           # max distance between ray values at this radius
    max_modulus: float


@dataclass(frozen=True)
class ProbeResult:
    observed_class: int
    rows: tuple
    failures: tuple         # (order, partial, reason)

    def table(self) -> str:
        lines = [f"{'order':>5} {'partial':>8} {'radius':>8} {'spread':>12} {'max|D|':>12}"]
        for r in self.rows:
            lines.append(f"{r.order:>5} {'x^%d y^%d' % r.partial:>8} {r.radius:>8.0e} "
                         f"{r.spread:>12.4e} {r.max_modulus:>12.4e}")
        lines.append(f"observed class: C^{self.observed_class}")
        return "\n".join(lines)


def class_probe(m: FractionalMonomial, max_order: int | None = None) -> ProbeResult:
    """Largest order ``k`` such that all partials of order ``<= k`` look continuous at 0."""
    if max_order is None:
        max_order = m.s + 1
    if max_order < m.s:
        raise ValueError("max_order must be at least s")
    angles = 2 * np.pi * np.arange(RAYS) / RAYS + 0.1
    dirs = [cmath.exp(1j * a) for a in angles]
    rows, failures = [], []
    observed = max_order
    for k in range(1, max_order + 1):
        ok = True
        for i in range(k, -1, -1):
            j = k - i
            series = []
            for rad in RADII:
                vals = np.array([real_partial(m, rad * d, i, j) for d in dirs])
                spread = float(np.max(np.abs(vals[:, None] - vals[None, :])))
                rows.append(SweepRow(k, (i, j), rad, spread, float(np.max(np.abs(vals)))))
                series.append(vals)
            limits = extrapolate(*series[-3:])
            if limits is None:
                ok = False
                failures.append((k, (i, j), "no limit along some ray"))
                continue
            if float(np.max(np.abs(limits[:, None] - limits[None, :]))) > TOL:
                ok = False
                failures.append((k, (i, j), "ray limits differ"))
                continue
            at0 = extrapolate(*[_lower_over_h(m, i, j, h) for h in RADII[-3:]])
            if at0 is None or float(np.max(np.abs(limits - at0))) > TOL:
                ok = False
                failures.append((k, (i, j), "limit differs from derivative at 0"))
        if not ok:
            observed = k - 1
            break
    return ProbeResult(observed, tuple(rows), tuple(failures))


def sweep_table(r: int, s: int, max_order: int | None = None) -> str:
    return class_probe(FractionalMonomial(r, s), max_order).table()
