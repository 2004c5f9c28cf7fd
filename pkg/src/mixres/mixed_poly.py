"""Mixed polynomials in z_1..z_n and their conjugates.

A mixed polynomial is a finite sum ``c * z^nu * zbar^mu`` with exact Gaussian
rational coefficients.  Variables are indexed from 1, matching the expression
syntax ``z1``, ``zb1``.

>>> f = parse("(z1^4 + z2^3)*conj(z1^2 + z2^3)", 2)
>>> len(f)
4
>>> render(conjugate(parse("z1^4*zb2^3", 2)))
'z2^3*zb1^4'
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import IndexOutOfRange, NotAGerm


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (Rational, int)):
            return cls(Fraction(value))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value))
        raise TypeError(f"cannot convert {value!r} to a Gaussian rational")

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return _coeff_text(self)


ONE = GaussianRational(1)
ZERO = GaussianRational(0)


@dataclass(frozen=True, order=True)
class ExponentPair:
    """Exponents of ``z`` (``nu``) and of ``zbar`` (``mu``)."""

    nu: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        nu, mu = tuple(int(x) for x in self.nu), tuple(int(x) for x in self.mu)
        if len(nu) != len(mu):
            raise ValueError("nu and mu must have the same length")
        if any(x < 0 for x in nu + mu):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return len(self.nu)

    @property
    def radial(self) -> tuple[int, ...]:
        """Support point ``nu + mu``."""
        return tuple(a + b for a, b in zip(self.nu, self.mu))

    @property
    def polar(self) -> tuple[int, ...]:
        """Polar vector ``nu - mu``."""
        return tuple(a - b for a, b in zip(self.nu, self.mu))

    def swapped(self) -> "ExponentPair":
        return ExponentPair(self.mu, self.nu)

    def sort_key(self):
        return self.nu + self.mu


@dataclass(frozen=True)
class MixedTerm:
    coeff: GaussianRational
    exps: ExponentPair

    @property
    def nu(self):
        return self.exps.nu

    @property
    def mu(self):
        return self.exps.mu


class MixedPolynomial:
    """Immutable sum of mixed monomials in ``n`` variables.

    Terms are merged on construction, zero coefficients dropped, and the
    remaining terms kept in lexicographic order of ``nu + mu`` (tuple
    concatenation), so ``==`` is structural.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Iterable = ()):
        if n < 1:
            raise ValueError("a mixed polynomial needs at least one variable")
        acc: dict[ExponentPair, GaussianRational] = {}
        for t in terms:
            if isinstance(t, MixedTerm):
                c, e = t.coeff, t.exps
            else:
                c, e = t
                c = GaussianRational.of(c)
                if not isinstance(e, ExponentPair):
                    e = ExponentPair(*e)
            if e.n != n:
                raise ValueError(f"term has {e.n} variables, expected {n}")
            acc[e] = acc.get(e, ZERO) + c
        ordered = sorted((e for e, c in acc.items() if c), key=ExponentPair.sort_key)
        self.n = n
        self.terms = tuple(MixedTerm(acc[e], e) for e in ordered)
        self._hash = None

    @classmethod
    def constant(cls, n: int, c) -> "MixedPolynomial":
        zero = (0,) * n
        return cls(n, [(c, ExponentPair(zero, zero))])

    @classmethod
    def variable(cls, n: int, j: int, conj: bool = False) -> "MixedPolynomial":
        if not 1 <= j <= n:
            raise IndexOutOfRange(f"variable index {j} outside 1..{n}")
        e = tuple(int(i == j - 1) for i in range(n))
        zero = (0,) * n
        pair = ExponentPair(zero, e) if conj else ExponentPair(e, zero)
        return cls(n, [(ONE, pair)])

    @classmethod
    def from_dict(cls, n: int, data: Mapping) -> "MixedPolynomial":
        """Build from ``{(nu, mu): coeff}``."""
        return cls(n, [(c, ExponentPair(nu, mu)) for (nu, mu), c in data.items()])

    def __iter__(self) -> Iterator[MixedTerm]:
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.terms))
        return self._hash

    def __repr__(self):
        return f"MixedPolynomial({self.n}, {render(self)!r})"

    def __str__(self):
        return render(self)

    def _coerce(self, other) -> "MixedPolynomial":
        if isinstance(other, MixedPolynomial):
            if other.n != self.n:
                raise ValueError("variable counts differ")
            return other
        return MixedPolynomial.constant(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        return MixedPolynomial(self.n, self.terms + o.terms)

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial(self.n, [MixedTerm(-t.coeff, t.exps) for t in self.terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        out = []
        for s in self.terms:
            for t in o.terms:
                nu = tuple(a + b for a, b in zip(s.nu, t.nu))
                mu = tuple(a + b for a, b in zip(s.mu, t.mu))
                out.append((s.coeff * t.coeff, ExponentPair(nu, mu)))
        return MixedPolynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = MixedPolynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "MixedPolynomial":
        c = GaussianRational.of(c)
        return MixedPolynomial(self.n, [MixedTerm(c * t.coeff, t.exps) for t in self.terms])

    def is_germ(self) -> bool:
        """True when there is no constant term, i.e. f(0) = 0."""
        zero = (0,) * self.n
        return all(t.nu != zero or t.mu != zero for t in self.terms)

    def is_holomorphic(self) -> bool:
        return all(not any(t.mu) for t in self.terms)

    def max_degree(self) -> int:
        return max((sum(t.exps.radial) for t in self.terms), default=0)


# --------------------------------------------------------------------------
# text form

def parse(text: str, n: int | None = None) -> MixedPolynomial:
    """Parse an expression such as ``"(z1^4 + z2^3)*conj(z1^2 + z2^3)"``.

    When ``n`` is omitted it is taken to be the largest variable index that
    occurs (at least 1).
    """
    from .parser import parse_expression

    return parse_expression(text, n)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _imag_text(q: Fraction) -> str:
    num = q.numerator
    head = "i" if num == 1 else ("-i" if num == -1 else f"{num}i")
    return head if q.denominator == 1 else f"{head}/{q.denominator}"


def _coeff_text(c: GaussianRational) -> str:
    if c.im == 0:
        return _frac_text(c.re)
    if c.re == 0:
        return _imag_text(c.im)
    im = _imag_text(abs(c.im))
    sign = "-" if c.im < 0 else "+"
    return f"({_frac_text(c.re)} {sign} {im})"


def monomial_text(exps: ExponentPair, names=("z", "zb")) -> str:
    parts = []
    for j, e in enumerate(exps.nu, start=1):
        if e:
            parts.append(f"{names[0]}{j}" + (f"^{e}" if e > 1 else ""))
    for j, e in enumerate(exps.mu, start=1):
        if e:
            parts.append(f"{names[1]}{j}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


def render(f: MixedPolynomial) -> str:
    """Canonical text; ``parse(render(f), f.n) == f``."""
    if not f.terms:
        return "0"
    out = []
    for idx, t in enumerate(f.terms):
        c = t.coeff
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        if negative:
            c = -c
        mono = monomial_text(t.exps)
        if not mono:
            body = _coeff_text(c)
        elif c == ONE:
            body = mono
        else:
            body = f"{_coeff_text(c)}*{mono}"
        if idx == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


# --------------------------------------------------------------------------
# evaluation and calculus

def _monomial_value(t: MixedTerm, z: Sequence[complex], zc: Sequence[complex]):
    v = complex(t.coeff)
    for a, b, x, xc in zip(t.nu, t.mu, z, zc):
        if a:
            v *= x ** a
        if b:
            v *= xc ** b
    return v


def evaluate(f: MixedPolynomial, z: Sequence, precision: str = "double"):
    """Evaluate ``f`` at the point ``z``.

    ``precision="double"`` uses Python complex floats.  ``precision="exact"``
    expects Gaussian rational (or rational) coordinates and returns a
    :class:`GaussianRational`.
    """
    if len(z) != f.n:
        raise ValueError(f"point has {len(z)} coordinates, expected {f.n}")
    if precision == "exact":
        zz = [GaussianRational.of(x) for x in z]
        zc = [x.conjugate() for x in zz]
        total = ZERO
        for t in f.terms:
            v = t.coeff
            for a, b, x, xc in zip(t.nu, t.mu, zz, zc):
                v = v * (x ** a) * (xc ** b)
            total = total + v
        return total
    if precision != "double":
        raise ValueError(f"unknown precision mode {precision!r}")
    zz = [complex(x) for x in z]
    zc = [x.conjugate() for x in zz]
    return sum((_monomial_value(t, zz, zc) for t in f.terms), 0j)


def term_arrays(f: MixedPolynomial):
    """Coefficients and exponent matrices as numpy arrays (for batch evaluation)."""
    coeffs = np.array([complex(t.coeff) for t in f.terms], dtype=complex)
    nu = np.array([t.nu for t in f.terms], dtype=np.int64).reshape(len(f), f.n)
    mu = np.array([t.mu for t in f.terms], dtype=np.int64).reshape(len(f), f.n)
    return coeffs, nu, mu


def evaluate_many(f: MixedPolynomial, points) -> np.ndarray:
    """Evaluate at each row of a ``(B, n)`` complex array."""
    pts = np.asarray(points, dtype=complex).reshape(-1, f.n)
    coeffs, nu, mu = term_arrays(f)
    if not len(f):
        return np.zeros(len(pts), dtype=complex)
    zc = np.conj(pts)
    mono = np.prod(pts[:, None, :] ** nu[None] * zc[:, None, :] ** mu[None], axis=2)
    return mono @ coeffs


def wirtinger(f: MixedPolynomial, j: int, kind: str = "dz") -> MixedPolynomial:
    """Formal derivative in ``z_j`` (``kind="dz"``) or ``zbar_j`` (``"dzbar"``).

    ``z`` and ``zbar`` are treated as independent variables.
    """
    if not 1 <= j <= f.n:
        raise IndexOutOfRange(f"variable index {j} outside 1..{f.n}")
    if kind not in ("dz", "dzbar"):
        raise ValueError("kind must be 'dz' or 'dzbar'")
    i = j - 1
    out = []
    for t in f.terms:
        nu, mu = list(t.nu), list(t.mu)
        target = nu if kind == "dz" else mu
        e = target[i]
        if e == 0:
            continue
        target[i] = e - 1
        out.append((t.coeff * e, ExponentPair(nu, mu)))
    return MixedPolynomial(f.n, out)


def conjugate(f: MixedPolynomial) -> MixedPolynomial:
    """``c z^nu zbar^mu  ->  conj(c) z^mu zbar^nu`` termwise."""
    return MixedPolynomial(f.n, [(t.coeff.conjugate(), t.exps.swapped()) for t in f.terms])


def restrict(f: MixedPolynomial, index_set: Iterable[int]) -> MixedPolynomial:
    """Restriction to the coordinate subspace spanned by ``index_set`` (1-based)."""
    keep = set(index_set)
    if not keep:
        raise ValueError("index set must be nonempty")
    if not keep <= set(range(1, f.n + 1)):
        raise IndexOutOfRange(f"index set {sorted(keep)} not inside 1..{f.n}")
    drop = [i for i in range(f.n) if i + 1 not in keep]
    return MixedPolynomial(
        f.n, [t for t in f.terms if all(t.nu[i] == 0 and t.mu[i] == 0 for i in drop)])


@dataclass(frozen=True)
class ConvenienceReport:
    convenient: bool
    axis_terms: tuple  # per axis: a witnessing MixedTerm, or None
    missing_axes: tuple[int, ...]

    def __bool__(self):
        return self.convenient

    @property
    def first_missing(self):
        return self.missing_axes[0] if self.missing_axes else None


def is_convenient(f: MixedPolynomial) -> ConvenienceReport:
    """Check that every coordinate axis carries a pure term ``c z_i^a zbar_i^b``."""
    if not f.is_germ():
        raise NotAGerm("f(0) != 0: the input is not a germ at the origin")
    witnesses = []
    for i in range(f.n):
        hit = None
        for t in f.terms:
            if all((t.nu[k] == 0 and t.mu[k] == 0) for k in range(f.n) if k != i):
                hit = t
                break
        witnesses.append(hit)
    missing = tuple(i + 1 for i, w in enumerate(witnesses) if w is None)
    return ConvenienceReport(not missing, tuple(witnesses), missing)


def torus_point(rng: np.random.Generator, n: int, lo=0.5, hi=2.0) -> np.ndarray:
    """Random point of the complex torus with moduli in ``[lo, hi]``."""
    r = rng.uniform(lo, hi, size=n)
    th = rng.uniform(-np.pi, np.pi, size=n)
    return r * np.exp(1j * th)


def polar_point(moduli, angles):
    return [m * cmath.exp(1j * a) for m, a in zip(moduli, angles)]
