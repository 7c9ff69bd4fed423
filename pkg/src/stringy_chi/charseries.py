"""The normalized Hirzebruch series and the Hirzebruch class of an unspecified base.

``hirzebruch_Q`` is the characteristic series

    Q(z) = z(1+y) / (1 - exp(-z(1+y))) - y z,

which specializes to 1+z at y=-1, to the Todd series at y=0 and to z/tanh(z)
at y=1.  The class of a base of dimension d is the product of Q over its Chern
roots; it is assembled from R = log Q and the Newton power sums of the roots,
using that sum_i R(l_i t) pairs coefficient-wise with -tC'(t)/C(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .coeff import YPoly, YRational
from .graded import CharSeries, GradedPoly, GradedRing, exp_series, graded_scale, invert

__all__ = [
    "HirzebruchSeries",
    "todd_numbers",
    "hirzebruch_Q",
    "hirzebruch_R",
    "hirzebruch_series",
    "power_sum_series",
    "base_hirzebruch_class",
]


@lru_cache(maxsize=None)
def todd_numbers(order: int) -> tuple[Fraction, ...]:
    """Coefficients of x/(1-exp(-x)) through x^order."""
    # (1 - exp(-x))/x = sum_k (-1)^k x^k / (k+1)!
    den = [Fraction((-1) ** k, factorial(k + 1)) for k in range(order + 1)]
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(-sum(den[i] * out[k - i] for i in range(1, k + 1)))
    return tuple(out)


@lru_cache(maxsize=None)
def hirzebruch_Q(order: int) -> CharSeries:
    if order < 0:
        raise ValueError("order must be non-negative")
    b = todd_numbers(order)
    one_plus_y = YPoly((1, 1))
    coeffs = []
    power = YPoly((1,))
    for k in range(order + 1):
        c = power.scale(b[k])
        if k == 1:
            c = c - YPoly.y()
        coeffs.append(YRational(c))
        power = power * one_plus_y
    return CharSeries(coeffs)


@lru_cache(maxsize=None)
def hirzebruch_R(order: int) -> CharSeries:
    return hirzebruch_Q(order).log()


@dataclass(frozen=True)
class HirzebruchSeries:
    Q: CharSeries
    R: CharSeries
    order: int


def hirzebruch_series(order: int) -> HirzebruchSeries:
    return HirzebruchSeries(hirzebruch_Q(order), hirzebruch_R(order), order)


def _chern_ring(n_chern: int) -> GradedRing:
    return GradedRing.standard((), n_chern)


def _chern_polynomial(ring: GradedRing, cap: int, n_chern: int, derivative: bool) -> GradedPoly:
    # C = sum (-1)^i c_i t^i with t implicit; tC' multiplies the c_i term by i
    out = ring.zero(cap) if derivative else ring.one(cap)
    for i in range(1, n_chern + 1):
        if i > cap:
            break
        k = (-1) ** i * (i if derivative else 1)
        out = out + ring.var(f"c{i}", cap).scale(k)
    return out


def power_sum_series(cap: int, n_chern: int, ring: GradedRing | None = None) -> GradedPoly:
    """Newton power sums p_1 + p_2 + ... of the Chern roots, p_d in degree d."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    ring = ring or _chern_ring(n_chern)
    C = _chern_polynomial(ring, cap, n_chern, derivative=False)
    tdC = _chern_polynomial(ring, cap, n_chern, derivative=True)
    return -(tdC * invert(C))


def base_hirzebruch_class(cap: int, n_chern: int, ring: GradedRing | None = None) -> GradedPoly:
    """T_y of a base with Chern classes c_1..c_n, as exp(R (.) p)."""
    ring = ring or _chern_ring(n_chern)
    if cap == 0:
        return ring.one(0)
    p = power_sum_series(cap, n_chern, ring)
    return exp_series(graded_scale(p, hirzebruch_R(cap)))
