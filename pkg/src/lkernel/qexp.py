"""Exact q-expansions of level-one modular forms and Petersson norms.

Arithmetic on q-expansions is exact end to end: coefficients are
`fractions.Fraction` and products are plain Cauchy convolutions truncated
to the shorter operand.  The only numerics in this module are in the
Petersson norm, which integrates |f|^2 y^k over the standard fundamental
domain with the hyperbolic measure dx dy / y^2.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError
from .special import bernoulli, binom_general

__all__ = [
    "QExpansion",
    "Eigenform",
    "FundamentalDomain",
    "STANDARD_DOMAIN",
    "eisenstein_q",
    "delta_q",
    "eigenform",
    "EIGENFORM_WEIGHTS",
    "rankin_cohen",
    "petersson_norm_numeric",
]


@dataclass(frozen=True)
class QExpansion:
    """Truncated q-expansion sum_{n=0}^{N} a(n) q^n with exact coefficients.

    `weight` is bookkeeping for the bracket and product rules; coefficients
    are stored for 0 <= n <= N with N >= 1.
    """

    weight: int
    coeffs: tuple

    def __post_init__(self):
        if self.weight < 4 or self.weight % 2:
            raise ValueError("weight must be an even integer >= 4")
        if len(self.coeffs) < 2:
            raise ValueError("need coefficients through q^1 at least")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def n_terms(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_cusp(self) -> bool:
        return self.coeffs[0] == 0

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ValueError("cannot add expansions of different weights")
        n = min(self.n_terms, other.n_terms)
        return QExpansion(
            self.weight,
            tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])),
        )

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.n_terms, other.n_terms)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return QExpansion(self.weight + other.weight, tuple(out))

    def scale(self, c) -> "QExpansion":
        c = Fraction(c)
        return QExpansion(self.weight, tuple(c * a for a in self.coeffs))

    def derivative(self) -> "QExpansion":
        """q d/dq: a(n) -> n a(n), weight bookkeeping k -> k + 2."""
        return QExpansion(
            self.weight + 2, tuple(n * a for n, a in enumerate(self.coeffs))
        )


@dataclass(frozen=True)
class Eigenform:
    """Normalised eigenform: coefficients a(1) = 1, a(2), ..., a(N), exact."""

    weight: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("eigenform must be normalised: a(1) = 1")

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)

    def a(self, n: int) -> Fraction:
        return self.coeffs[n - 1]

    @property
    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=np.float64)

    def as_qexpansion(self) -> QExpansion:
        return QExpansion(self.weight, (Fraction(0),) + self.coeffs)


def _sigma_sieve(power: int, n_max: int) -> list:
    """[sigma_power(n)]_{n=0..n_max} with sigma(0) slot unused (exact ints)."""
    out = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dp = d**power
        for mult in range(d, n_max + 1, d):
            out[mult] += dp
    return out


def eisenstein_q(weight: int, n_terms: int) -> QExpansion:
    """Eisenstein series E_2m normalised to leading divisor-sum coefficient 1:

        E_2m = -B_2m/(4m) + sum_{n>=1} sigma_{2m-1}(n) q^n.
    """
    if weight < 4 or weight % 2:
        raise ValueError("Eisenstein weight must be an even integer >= 4")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    m = weight // 2
    sig = _sigma_sieve(weight - 1, n_terms)
    coeffs = (-bernoulli(weight) / (4 * m),) + tuple(sig[1:])
    return QExpansion(weight, coeffs)


def _eta24_coeffs(n_max: int) -> list:
    """Coefficients of prod_{n>=1} (1 - q^n)^24 through q^n_max (exact ints)."""
    euler = [0] * (n_max + 1)
    euler[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n_max and g2 > n_max:
            break
        sign = -1 if k % 2 else 1
        if g1 <= n_max:
            euler[g1] += sign
        if g2 <= n_max:
            euler[g2] += sign
        k += 1

    def conv(a, b):
        out = [0] * (n_max + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(n_max + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return out

    result = [1] + [0] * n_max
    base = euler
    e = 24
    while e:
        if e & 1:
            result = conv(result, base)
        e >>= 1
        if e:
            base = conv(base, base)
    return result


def delta_q(n_terms: int) -> Eigenform:
    """The discriminant cusp form Delta = q prod (1-q^n)^24, a(1..n_terms)."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    e24 = _eta24_coeffs(n_terms - 1)
    return Eigenform(12, tuple(Fraction(c) for c in e24))


EIGENFORM_WEIGHTS = (12, 16, 18, 20, 22, 26)

# weights whose cusp space is one-dimensional: Delta times Eisenstein factors
_EIGENFORM_FACTORS = {12: (), 16: (4,), 18: (6,), 20: (4, 4), 22: (4, 6), 26: (4, 4, 6)}


def eigenform(weight: int, n_terms: int = 80) -> Eigenform:
    """The unique normalised cusp eigenform of the given one-dimensional weight."""
    if weight not in _EIGENFORM_FACTORS:
        raise ValueError(f"weight must be one of {EIGENFORM_WEIGHTS}")
    prod = delta_q(n_terms).as_qexpansion()
    for w in _EIGENFORM_FACTORS[weight]:
        prod = prod * eisenstein_q(w, n_terms)
    a1 = prod.coeffs[1]
    return Eigenform(weight, tuple(c / a1 for c in prod.coeffs[1:]))


def rankin_cohen(f: QExpansion, g: QExpansion, n: int) -> QExpansion:
    """Rankin-Cohen bracket

        [f, g]_n = sum_{r=0}^{n} (-1)^r C(k1+n-1, n-r) C(k2+n-1, r)
                   D^r f * D^{n-r} g,

    with D = q d/dq.  Exact; result has weight k1 + k2 + 2n.
    """
    if n < 0:
        raise ValueError("bracket order must be >= 0")
    k1, k2 = f.weight, g.weight
    n_max = min(f.n_terms, g.n_terms)
    out = [Fraction(0)] * (n_max + 1)
    for r in range(n + 1):
        c = (-1) ** r * binom_general(k1 + n - 1, n - r) * binom_general(k2 + n - 1, r)
        if c == 0:
            continue
        fr = [m**r * a for m, a in enumerate(f.coeffs[: n_max + 1])]
        gs = [m ** (n - r) * a for m, a in enumerate(g.coeffs[: n_max + 1])]
        for i, ai in enumerate(fr):
            if ai == 0:
                continue
            for j in range(n_max + 1 - i):
                if gs[j] != 0:
                    out[i + j] += c * ai * gs[j]
    return QExpansion(k1 + k2 + 2 * n, tuple(out))


# ----------------------------------------------------------------------
# Petersson norm
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FundamentalDomain:
    """The standard fundamental domain |x| <= 1/2, x^2 + y^2 >= 1.

    Integration measure is hyperbolic, dx dy / y^2; the lowest point is the
    corner at y = sqrt(3)/2.
    """

    x_half: float = 0.5
    y_corner: float = math.sqrt(3.0) / 2.0

    def y_floor(self, x: float) -> float:
        if abs(x) > self.x_half:
            raise ValueError("x outside the strip")
        return math.sqrt(1.0 - x * x)

    def contains(self, x: float, y: float, slack: float = 1e-12) -> bool:
        return abs(x) <= self.x_half + slack and x * x + y * y >= 1.0 - slack


STANDARD_DOMAIN = FundamentalDomain()


def _upper_gamma_int(k: int, x: float) -> float:
    """Gamma(k, x) = (k-1)! e^{-x} sum_{m<k} x^m/m! for integer k >= 1."""
    ex = math.exp(-x) if x < 700 else 0.0
    if ex == 0.0:
        return 0.0
    term = 1.0
    acc = [1.0]
    for m in range(1, k):
        term *= x / m
        acc.append(term)
    return math.factorial(k - 1) * ex * math.fsum(acc)


def _eval_qexp_grid(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """sum_{n>=1} a(n) q^n on a grid of points z (coeffs start at a(1))."""
    q = np.exp(2j * np.pi * z)
    val = np.zeros_like(q)
    for c in coeffs[::-1]:
        val = val * q + c
    return val * q


def _lower_quadrature(k: int, coeffs: np.ndarray, y_split: float, order: int) -> float:
    xn, xw = np.polynomial.legendre.leggauss(order)
    x = 0.5 * xn
    y_lo = np.sqrt(1.0 - x * x)
    yn, yw = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (y_split - y_lo)
    mid = 0.5 * (y_split + y_lo)
    yy = mid[None, :] + half[None, :] * yn[:, None]
    xx = np.broadcast_to(x[None, :], yy.shape)
    fv = np.abs(_eval_qexp_grid(coeffs, xx + 1j * yy)) ** 2 * yy ** (k - 2)
    per_x = (yw[:, None] * fv).sum(axis=0) * half
    return float((0.5 * xw * per_x).sum())


@lru_cache(maxsize=32)
def petersson_norm_numeric(f: Eigenform, tol: float = 1e-5, y_split: float = 2.0) -> float:
    """Petersson norm <f, f> = int_F |f|^2 y^k dx dy / y^2, numerically.

    The domain is split at y = y_split: below, tensor Gauss-Legendre panels
    refined until successive orders agree within tol; above, the x-integral
    is Parseval-exact and the y-integral reduces to incomplete gamma values,

        int_{y_split}^inf = sum_n |a(n)|^2 Gamma(k-1, 4 pi n y_split)
                            / (4 pi n)^(k-1).
    """
    if f.n_terms < 50:
        raise ValueError("need at least 50 coefficients")
    if tol < 1e-6:
        raise ValueError("tol below the supported floor 1e-6")
    return _petersson_raw(f.weight, f.float_coeffs, tol=tol, y_split=y_split)


def _petersson_raw(weight: int, coeffs, tol: float = 1e-5, y_split: float = 2.0) -> float:
    coeffs = np.asarray(coeffs, dtype=np.float64)
    k = weight
    upper_terms = []
    for n, c in enumerate(coeffs, start=1):
        if c == 0.0:
            continue
        g = _upper_gamma_int(k - 1, 4 * math.pi * n * y_split)
        if g == 0.0:
            break
        upper_terms.append(c * c * g / (4 * math.pi * n) ** (k - 1))
    upper = math.fsum(upper_terms)
    prev = None
    for order in (16, 24, 32, 48, 64, 96, 128):
        low = _lower_quadrature(k, coeffs, y_split, order)
        if prev is not None and abs(low - prev) <= 0.25 * tol * abs(low + upper):
            return low + upper
        prev = low
    raise ConvergenceError("Petersson quadrature did not settle at the requested tol")
