"""Completed L-functions of eigenforms as entire incomplete-gamma sums.

For a weight-k eigenform f the completed L-function is evaluated as

    Lstar_f(s) = sum_{n>=1} a(n) [ (2 pi n)^{-s} Gamma(s, 2 pi n)
                 + i^k (2 pi n)^{s-k} Gamma(k-s, 2 pi n) ],

which is entire in s and manifestly satisfies Lstar(s) = i^k Lstar(k-s).
The series converges faster than geometrically; truncation is certified by
the Deligne-style bound |a(n)| <= d(n) n^{(k-1)/2} <= n^{(k+1)/2} combined
with |Gamma(s, x)| <= Gamma(Re s, x).
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import rgamma as _rgamma

from .errors import TailBoundError
from .qexp import Eigenform
from .summation import Neumaier
from .special import upper_incomplete_gamma

__all__ = ["LQuery", "completed_l", "l_value"]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LQuery:
    """A single L-value request: which form, where, and how many terms."""

    form: Eigenform
    s: complex
    n_terms: Optional[int] = None

    def completed(self, rel_tol: float = 1e-14) -> complex:
        return completed_l(self.form, self.s, rel_tol=rel_tol, n_terms=self.n_terms)

    def value(self, rel_tol: float = 1e-14) -> complex:
        return l_value(self.form, self.s, rel_tol=rel_tol, n_terms=self.n_terms)


def _term_envelope(k: int, sigma: float, n: int) -> float:
    """Upper bound for |a(n)| times the incomplete-gamma weights at index n."""
    x = _TWO_PI * n
    g1 = abs(upper_incomplete_gamma(sigma, x))
    g2 = abs(upper_incomplete_gamma(k - sigma, x))
    return n ** ((k + 1) / 2) * (x**-sigma * g1 + x ** (sigma - k) * g2)


def completed_l(
    f: Eigenform,
    s: complex,
    rel_tol: float = 1e-14,
    n_terms: Optional[int] = None,
) -> complex:
    """Entire completed L-function Lstar_f(s), certified to rel_tol.

    Raises TailBoundError if the available coefficients run out before the
    tail certificate drops below rel_tol * max(1, |partial sum|).
    """
    s = complex(s)
    k = f.weight
    ik = -1 if (k // 2) % 2 else 1
    n_stop = f.n_terms if n_terms is None else min(n_terms, f.n_terms)
    acc = Neumaier()
    for n in range(1, n_stop + 1):
        x = _TWO_PI * n
        xs = cmath.exp(-s * math.log(x))
        term = xs * upper_incomplete_gamma(s, x)
        term += ik / (xs * x**k) * upper_incomplete_gamma(k - s, x)
        acc.add(float(f.coeffs[n - 1]) * term)
        if n >= 2:
            head = _term_envelope(k, s.real, n + 1)
            ratio = _term_envelope(k, s.real, n + 2) / head if head > 0 else 0.0
            if ratio <= 0.5 and 2.0 * head <= rel_tol * max(1.0, abs(acc.total)):
                return acc.total
    raise TailBoundError(
        f"completed L tail not certified below {rel_tol:g} with {n_stop} coefficients"
    )


def l_value(
    f: Eigenform,
    s: complex,
    rel_tol: float = 1e-14,
    n_terms: Optional[int] = None,
) -> complex:
    """Analytically continued Dirichlet-series value L_f(s) = (2 pi)^s
    Lstar_f(s) / Gamma(s), via the reciprocal gamma (entire, so no poles)."""
    s = complex(s)
    lstar = completed_l(f, s, rel_tol=rel_tol, n_terms=n_terms)
    return cmath.exp(s * math.log(_TWO_PI)) * complex(_rgamma(s)) * lstar
