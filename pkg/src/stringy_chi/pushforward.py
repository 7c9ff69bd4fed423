"""Pushforwards along a blowup and along the ambient P^2-bundle.

Blowup along a complete intersection cut out by divisor classes U_1..U_d:

    p_* E^k = sum_i prod_{j != i} U_j / (U_j - U_i) * U_i^k

The right side is the value at x = 0 of the remainder of x^k modulo
prod_j (x - U_j), so it obeys the linear recurrence with that characteristic
polynomial:  s_0 = 1, s_1 = ... = s_{d-1} = 0,
s_k = e_1 s_{k-1} - e_2 s_{k-2} + ... + (-1)^(d+1) e_d s_{k-d},
with e_j the elementary symmetric polynomials of the U's.  No division by
U_j - U_i is ever needed.

For P(O + L^2 + L^3) with hyperplane class H, pi_* H^k is the degree k-2
Segre class 1/((1+2L)(1+3L)) of the bundle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graded import GradedPoly, GradedRing, RingMismatch, invert

__all__ = [
    "BlowupCenter",
    "BundleData",
    "elementary_symmetric",
    "exceptional_pushforwards",
    "blowdown",
    "weierstrass_bundle",
    "projective_pushforward",
]


@dataclass(frozen=True)
class BlowupCenter:
    classes: tuple[GradedPoly, ...]
    exceptional: str

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if not self.classes:
            raise ValueError("a blowup center needs at least one class")
        ring, cap = self.classes[0].ring, self.classes[0].cap
        for U in self.classes:
            if U.ring != ring or U.cap != cap:
                raise RingMismatch("center classes must share one ring and cap")
            if U.constant_term():
                raise ValueError("center classes must have zero constant term")
            if U.involves(self.exceptional):
                raise ValueError(f"center class {U} involves its own exceptional divisor")

    @property
    def codim(self) -> int:
        return len(self.classes)

    @property
    def ring(self) -> GradedRing:
        return self.classes[0].ring


def elementary_symmetric(classes, j: int) -> GradedPoly:
    ring, cap = classes[0].ring, classes[0].cap
    out = ring.zero(cap)
    for combo in combinations(classes, j):
        term = ring.one(cap)
        for U in combo:
            term = term * U
        out = out + term
    return out


def exceptional_pushforwards(center: BlowupCenter, kmax: int) -> list[GradedPoly]:
    """[p_* E^0, ..., p_* E^kmax] by the remainder recurrence."""
    ring, cap, d = center.ring, center.classes[0].cap, center.codim
    e = [None] + [elementary_symmetric(center.classes, j) for j in range(1, d + 1)]
    s = [ring.one(cap)] + [ring.zero(cap)] * (d - 1)
    for k in range(d, kmax + 1):
        acc = ring.zero(cap)
        for j in range(1, d + 1):
            t = e[j] * s[k - j]
            acc = acc + (t if j % 2 else -t)
        s.append(acc)
    return s[: kmax + 1]


def blowdown(expr: GradedPoly, center: BlowupCenter) -> GradedPoly:
    """Push a class forward along the blowup; the exceptional variable disappears."""
    if expr.ring != center.ring or expr.cap != center.classes[0].cap:
        raise RingMismatch("expression and center live in different rings")
    parts = expr.coefficient_in(center.exceptional)
    kmax = max(parts, default=0)
    s = exceptional_pushforwards(center, kmax)
    out = expr.ring.zero(expr.cap)
    for k, a in parts.items():
        if k == 0:
            out = out + a
        elif not s[k].is_zero():
            out = out + a * s[k]
    return out


@dataclass(frozen=True)
class BundleData:
    """P^2-bundle data: total Segre class in the base variables and the hyperplane variable."""

    segre: GradedPoly
    hyperplane: str = "H"
    fiber_dim: int = 2


def weierstrass_bundle(ring: GradedRing, cap: int, L: str = "L", H: str = "H") -> BundleData:
    """Segre class of O + L^2 + L^3."""
    Lc = ring.var(L, cap)
    one = ring.one(cap)
    return BundleData(invert((one + Lc.scale(2)) * (one + Lc.scale(3))), hyperplane=H)


def projective_pushforward(expr: GradedPoly, bundle: BundleData) -> GradedPoly:
    """pi_*: H^k -> s_{k-2}, with cap lowered by the fiber dimension."""
    fd = bundle.fiber_dim
    cap = expr.cap - fd
    if cap < 0:
        return expr.ring.zero(0)
    seg_parts = bundle.segre.parts()
    out = expr.ring.zero(expr.cap)
    for k, a in expr.coefficient_in(bundle.hyperplane).items():
        if k < fd:
            continue
        s = seg_parts.get(k - fd)
        if s is not None:
            out = out + a * s
    return out.truncate(cap)
