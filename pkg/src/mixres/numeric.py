"""Batched damped least squares for zero searches on the complex torus.

Points of ``(C*)^m`` are parametrised by ``u_j = exp(s_j + i t_j)``.  A mixed
monomial ``c u^a ubar^b`` then reads ``c exp(s.(a+b) + i t.(a-b))``, which
keeps derivatives polynomial in the exponents and lets the search approach
0 or infinity without leaving the chart.  Residuals are divided by
``S = sum |c| exp(s.(a+b))`` so that shrinking every monomial towards 0 does
not count as a zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

STARTS = 256
MAX_ITER = 200
SUCCESS = 1e-10
GIVE_UP = 1e-4
S_BOUND = 30.0


@dataclass(frozen=True)
class MonomialArrays:
    """``sum_t c_t u^{a_t} ubar^{b_t}`` as arrays: ``c`` (T,), ``a``, ``b`` (T, m)."""

    c: np.ndarray
    a: np.ndarray
    b: np.ndarray

    @property
    def m(self) -> int:
        return self.a.shape[1]

    @classmethod
    def build(cls, coeffs, a, b, m: int) -> "MonomialArrays":
        return cls(np.asarray(coeffs, dtype=complex),
                   np.asarray(a, dtype=float).reshape(-1, m),
                   np.asarray(b, dtype=float).reshape(-1, m))

    def monomials(self, s: np.ndarray, t: np.ndarray):
        """Monomial values (B, T) and moduli (B, T), all rows rescaled by a common
        positive factor so that the largest modulus is ``O(1)``.

        Residuals built from these are ratios ``G / S`` of the same degree, so
        the rescaling cancels.
        """
        rad = s @ (self.a + self.b).T
        rad = rad - (rad + np.log(np.abs(self.c))[None, :]).max(axis=1, keepdims=True)
        ang = t @ (self.a - self.b).T
        mod = np.abs(self.c)[None, :] * np.exp(rad)
        return self.c[None, :] * np.exp(rad + 1j * ang), mod


@dataclass
class DescentResult:
    x: np.ndarray          # (B, p) final parameters
    objective: np.ndarray  # (B,) final residual norm
    iterations: int

    def best(self) -> int:
        return int(np.argmin(self.objective))


def levenberg_marquardt(fun: Callable, x0: np.ndarray, max_iter: int = MAX_ITER,
                        tol: float = SUCCESS, clamp: Callable | None = None) -> DescentResult:
    """Minimise ``|F(x)|`` independently for each row of ``x0``.

    ``fun(x)`` returns the real residual ``F`` of shape (B, M) and its
    Jacobian of shape (B, M, p).
    """
    x = np.array(x0, dtype=float)
    B, p = x.shape
    lam = np.full(B, 1e-3)
    F, J = fun(x)
    obj = np.linalg.norm(F, axis=1)
    eye = np.eye(p)
    it = 0
    for it in range(1, max_iter + 1):
        active = obj >= tol
        if not active.any():
            break
        JT = np.swapaxes(J, 1, 2)
        A = JT @ J
        g = (JT @ F[..., None])[..., 0]
        diag = np.einsum("bii->bi", A)
        scale = np.maximum(diag, 1e-12)
        H = A + lam[:, None, None] * scale[:, :, None] * eye[None]
        try:
            step = -np.linalg.solve(H, g[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = -g / (lam[:, None] * scale + 1e-12)
        step[~active] = 0.0
        xn = x + step
        if clamp is not None:
            xn = clamp(xn)
        Fn, Jn = fun(xn)
        on = np.linalg.norm(Fn, axis=1)
        better = (on < obj) & active
        x[better], F[better], J[better], obj[better] = xn[better], Fn[better], Jn[better], on[better]
        lam = np.where(better, np.maximum(lam / 3.0, 1e-12), np.minimum(lam * 4.0, 1e12))
    return DescentResult(x, obj, it)


def _clamp_log(m: int):
    def clamp(x):
        x = x.copy()
        x[:, :m] = np.clip(x[:, :m], -S_BOUND, S_BOUND)
        return x
    return clamp


def zero_residual(poly: MonomialArrays):
    """Residual ``g / S`` (as two real components) and its Jacobian in ``(s, t)``."""
    m = poly.m
    apb = poly.a + poly.b
    amb = poly.a - poly.b

    def fun(x):
        s, t = x[:, :m], x[:, m:2 * m]
        mono, mod = poly.monomials(s, t)
        g = mono.sum(axis=1)
        S = mod.sum(axis=1)
        dg = np.concatenate([mono @ apb, 1j * (mono @ amb)], axis=1)
        dS = np.concatenate([mod @ apb, np.zeros_like(s)], axis=1)
        r = g / S
        dr = dg / S[:, None] - (g / S ** 2)[:, None] * dS
        F = np.stack([r.real, r.imag], axis=1)
        J = np.stack([dr.real, dr.imag], axis=1)
        return F, J

    return fun


def random_log_starts(rng: np.random.Generator, batch: int, m: int, extra: int = 0):
    s = rng.uniform(np.log(0.5), np.log(2.0), size=(batch, m))
    t = rng.uniform(-np.pi, np.pi, size=(batch, m))
    parts = [s, t]
    if extra:
        parts.append(rng.uniform(-np.pi, np.pi, size=(batch, extra)))
    return np.concatenate(parts, axis=1)


@dataclass(frozen=True)
class ZeroSearch:
    found: bool
    point: tuple | None      # complex coordinates of the best start
    residual: float          # normalised residual at that point
    inconclusive: bool       # True when the best residual is above the give-up level


def find_torus_zero(poly: MonomialArrays, rng: np.random.Generator,
                    starts: int = STARTS, max_iter: int = MAX_ITER) -> ZeroSearch:
    """Search ``(C*)^m`` for a zero of a mixed polynomial."""
    m = poly.m
    x0 = random_log_starts(rng, starts, m)
    res = levenberg_marquardt(zero_residual(poly), x0, max_iter, clamp=_clamp_log(m))
    i = res.best()
    s, t = res.x[i, :m], res.x[i, m:]
    point = tuple(complex(z) for z in np.exp(s + 1j * t))
    r = float(res.objective[i])
    return ZeroSearch(r < SUCCESS, point, r, r >= GIVE_UP)


def critical_zero_residual(poly: MonomialArrays):
    """Residual for a simultaneous zero and mixed critical point.

    Unknowns are ``(s, t, theta)``; components are ``g / S`` and, per
    variable, ``(conj(D_j) - e^{i theta} Dbar_j) / S`` where
    ``D_j = sum a_j m`` and ``Dbar_j = sum b_j m``.  Since
    ``z_j df/dz_j = D_j`` and ``zbar_j df/dzbar_j = Dbar_j`` the common
    factor ``zbar_j`` cancels from the criticality condition.
    """
    m = poly.m
    apb = poly.a + poly.b
    amb = poly.a - poly.b

    def fun(x):
        B = x.shape[0]
        s, t, th = x[:, :m], x[:, m:2 * m], x[:, 2 * m]
        mono, mod = poly.monomials(s, t)
        S = mod.sum(axis=1)
        # derivative factors of each monomial w.r.t. (s, t): (T, 2m)
        fac = np.concatenate([apb, 1j * amb], axis=1)
        dmono = mono[:, :, None] * fac[None]                     # (B, T, 2m)
        g = mono.sum(axis=1)
        dg = dmono.sum(axis=1)
        D = mono @ poly.a                                          # (B, m)
        Db = mono @ poly.b
        dD = np.einsum("btp,tj->bjp", dmono, poly.a)               # (B, m, 2m)
        dDb = np.einsum("btp,tj->bjp", dmono, poly.b)
        e = np.exp(1j * th)[:, None]
        G = np.concatenate([g[:, None], np.conj(D) - e * Db], axis=1)          # (B, 1+m)
        dG = np.zeros((B, 1 + m, 2 * m + 1), dtype=complex)
        dG[:, 0, :2 * m] = dg
        dG[:, 1:, :2 * m] = np.conj(dD) - e[:, :, None] * dDb
        dG[:, 1:, 2 * m] = -1j * e * Db
        dS = np.zeros((B, 2 * m + 1))
        dS[:, :m] = mod @ apb
        Fc = G / S[:, None]
        dF = dG / S[:, None, None] - (G / S[:, None] ** 2)[:, :, None] * dS[:, None, :]
        F = np.concatenate([Fc.real, Fc.imag], axis=1)
        J = np.concatenate([dF.real, dF.imag], axis=1)
        return F, J

    return fun


def find_critical_zero(poly: MonomialArrays, rng: np.random.Generator,
                       starts: int, max_iter: int = MAX_ITER):
    m = poly.m
    x0 = random_log_starts(rng, starts, m, extra=1)
    res = levenberg_marquardt(critical_zero_residual(poly), x0, max_iter, clamp=_clamp_log(m))
    i = res.best()
    s, t = res.x[i, :m], res.x[i, m:2 * m]
    point = tuple(complex(z) for z in np.exp(s + 1j * t))
    return point, float(res.objective[i])
