"""Compensated accumulation helpers.

Long sums in this package are evaluated in a fixed ascending index order with
error-tracking accumulation, so results are reproducible bit-for-bit across
runs and independent of any worker-thread count:

* pure-Python loops use a Neumaier (improved Kahan) accumulator;
* numpy array reductions sum fixed-size blocks with numpy's deterministic
  pairwise reduction and combine the block partials exactly with math.fsum.
"""

import math

import numpy as np

_BLOCK = 1 << 16


class Neumaier:
    """Compensated accumulator for complex terms, added in caller's order."""

    __slots__ = ("_sr", "_cr", "_si", "_ci")

    def __init__(self):
        self._sr = self._cr = 0.0
        self._si = self._ci = 0.0

    def add(self, z):
        z = complex(z)
        for part, s_name, c_name in ((z.real, "_sr", "_cr"), (z.imag, "_si", "_ci")):
            s = getattr(self, s_name)
            t = s + part
            if abs(s) >= abs(part):
                setattr(self, c_name, getattr(self, c_name) + (s - t) + part)
            else:
                setattr(self, c_name, getattr(self, c_name) + (part - t) + s)
            setattr(self, s_name, t)

    @property
    def total(self) -> complex:
        return complex(self._sr + self._cr, self._si + self._ci)


def comp_sum(terms) -> complex:
    """Compensated sum of an iterable of complex terms, in iteration order."""
    acc = Neumaier()
    for t in terms:
        acc.add(t)
    return acc.total


def array_sum(a) -> complex:
    """Deterministic compensated sum of a 1-d numpy array in ascending order."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0 + 0.0j
    re_parts = []
    im_parts = []
    for lo in range(0, a.size, _BLOCK):
        blk = a[lo : lo + _BLOCK]
        s = complex(blk.sum())
        re_parts.append(s.real)
        im_parts.append(s.imag)
    return complex(math.fsum(re_parts), math.fsum(im_parts))
