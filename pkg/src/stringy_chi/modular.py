"""Vectorized evaluation of the pushforward pipeline modulo word-sized primes.

The exact engine manipulates dictionaries of Q(y) coefficients; at ambient
degree 8 with eleven variables that is tens of thousands of monomials per
product and far too slow in pure Python.  Here the same steps run on dense
numpy arrays: every monomial of degree <= cap gets a fixed slot, y is replaced
by the sample points 0..cap, and all arithmetic is done modulo a batch of
primes.  Each coefficient of the final answer is a polynomial in y of degree
at most cap, so it is recovered by interpolation, combined across primes by
the Chinese remainder theorem and lifted to Q by rational reconstruction.
More primes are added until two consecutive lifts agree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import isqrt

import numpy as np

from .coeff import YPoly, YRational
from .graded import GradedPoly, GradedRing

__all__ = ["DenseLayout", "derive_modular", "primes_below", "rational_reconstruct"]


def primes_below(n: int, count: int) -> list[int]:
    out = []
    k = n - 1
    while len(out) < count:
        if k % 2 and all(k % d for d in range(3, isqrt(k) + 1, 2)):
            out.append(k)
        k -= 1
    return out


def rational_reconstruct(u: int, m: int) -> Fraction | None:
    """The fraction a/b with a = b*u mod m and |a|, b below sqrt(m/2), if any."""
    u %= m
    bound = isqrt(m // 2)
    r0, r1, t0, t1 = m, u, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    return Fraction(r1, t1)


def _monomials(n: int, cap: int) -> list[tuple]:
    out = [()]
    for _ in range(n):
        out = [e + (k,) for e in out for k in range(cap + 1 - sum(e))]
    out.sort(key=lambda e: (sum(e), e))
    return out


class DenseLayout:
    """Slot numbering of all monomials of degree <= cap in n degree-one variables."""

    def __init__(self, n: int, cap: int):
        self.n, self.cap = n, cap
        self.monos = _monomials(n, cap)
        self.slot = {e: i for i, e in enumerate(self.monos)}
        self.size = len(self.monos)
        exps = np.array(self.monos, dtype=np.int64).reshape(self.size, n)
        self.exps = exps
        self.degree = exps.sum(axis=1)
        # slots are sorted by degree, so degree <= t is the prefix [:upto[t]]
        self.upto = [int(np.searchsorted(self.degree, t, side="right")) for t in range(cap + 1)]
        self._maps = {}
        # multiplication by variable v sends slot i to dst[v][i], for i < upto[cap-1]
        self.dst = [self.shift_map(v, 1)[1] for v in range(n)]

    @staticmethod
    def _bump(e, v, k):
        return e[:v] + (e[v] + k,) + e[v + 1:]

    def shift_map(self, v: int, k: int):
        """(src, dst) slots for e -> e + k*unit_v over all e where both sides exist."""
        key = (v, k)
        if key in self._maps:
            return self._maps[key]
        src = np.nonzero((self.degree <= self.cap - k) & (self.exps[:, v] >= -k))[0]
        dst = np.array([self.slot[self._bump(self.monos[i], v, k)] for i in src], dtype=np.int64)
        self._maps[key] = (src, dst)
        return src, dst


class _Batch:
    """Monomial-by-(prime, sample point) value arrays for one batch of primes."""

    def __init__(self, layout: DenseLayout, primes: list[int]):
        self.layout = layout
        self.primes = primes
        npts = layout.cap + 1
        self.points = list(range(npts))
        self.row_prime = [p for p in primes for _ in self.points]
        self.row_y = [y for _ in primes for y in self.points]
        self.mod = np.array(self.row_prime, dtype=np.int64)[None, :]

    def zeros(self):
        return np.zeros((self.layout.size, len(self.row_prime)), dtype=np.int64)

    def one(self):
        a = self.zeros()
        a[0] = 1
        return a

    def scalar_values(self, c: YRational) -> np.ndarray:
        """c evaluated at every (prime, point) column, as a row vector."""
        num, den = c.num, c.den
        vals = []
        for p, y in zip(self.row_prime, self.row_y):
            nv = _eval_mod(num, y, p)
            dv = _eval_mod(den, y, p)
            vals.append(nv * pow(dv, -1, p) % p)
        return np.array(vals, dtype=np.int64)[None, :]

    def mul_linear(self, a: np.ndarray, form: dict[int, int], maxdeg: int | None = None) -> np.ndarray:
        """D * a, using only the part of a of degree <= maxdeg."""
        lay = self.layout
        top = lay.cap - 1 if maxdeg is None else min(maxdeg, lay.cap - 1)
        n = lay.upto[top] if top >= 0 else 0
        out = self.zeros()
        for v, k in form.items():
            out[lay.dst[v][:n]] += k * a[:n]
        out %= self.mod
        return out

    def mul_series(self, a: np.ndarray, coeff_vals: list[np.ndarray], form: dict[int, int]) -> np.ndarray:
        """a * f(D) with f given by its coefficient values, by Horner's rule.

        After folding in f_k the accumulator is multiplied by D k more times,
        so only its part of degree <= cap - k matters.
        """
        lay = self.layout
        cap = lay.cap
        n = lay.upto[0]
        acc = self.zeros()
        acc[:n] = (coeff_vals[cap] * a[:n]) % self.mod
        for k in range(cap - 1, -1, -1):
            acc = self.mul_linear(acc, form, cap - k - 1)
            n = lay.upto[cap - k]
            acc[:n] += (coeff_vals[k] * a[:n]) % self.mod
            acc[:n] %= self.mod
        return acc


def _eval_mod(p: YPoly, y: int, m: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc * y + c.numerator * pow(c.denominator, -1, m)) % m
    return acc


def _linear_form(D: GradedPoly) -> dict[int, int]:
    form = {}
    for e, c in D.terms.items():
        if sum(e) != 1:
            raise ValueError(f"{D} is not a linear form")
        v = c.constant_value() if c.is_constant() else None
        if v is None or v.denominator != 1:
            raise ValueError(f"{D} must have integer coefficients")
        form[e.index(1)] = int(v)
    return form


def _blowdown(batch: _Batch, F: np.ndarray, ev: int, forms: list[dict[int, int]]) -> np.ndarray:
    """Replace E^k (k >= d) by its remainder modulo prod(E - U_j), then keep the E-free part."""
    lay = batch.layout
    d = len(forms)
    eexp = lay.exps[:, ev]
    F = F.copy()
    for k in range(lay.cap, d - 1, -1):
        idx = np.nonzero(eexp == k)[0]
        if not len(idx):
            continue
        # A = coefficient of E^k, of degree <= cap - k
        src, dst = lay.shift_map(ev, -k)
        A = batch.zeros()
        A[dst] = F[src]
        F[idx] = 0
        for j in range(1, d + 1):
            B = batch.zeros()
            for combo in combinations(forms, j):
                T = A
                for i, form in enumerate(combo):
                    T = batch.mul_linear(T, form, lay.cap - k + i)
                B += T
            B %= batch.mod
            # B * E^(k-j); B is free of E, so restrict to E-free sources
            src, dst = lay.shift_map(ev, k - j)
            keep = eexp[src] == 0
            if j % 2:
                F[dst[keep]] += B[src[keep]]
            else:
                F[dst[keep]] -= B[src[keep]]
            F %= batch.mod
    F[eexp > 0] = 0
    return F


def _pushforward(batch: _Batch, F: np.ndarray, hv: int, lv: int, segre: list[int]) -> np.ndarray:
    lay = batch.layout
    out = batch.zeros()
    hexp = lay.exps[:, hv]
    for k in range(2, lay.cap + 1):
        idx = np.nonzero(hexp == k)[0]
        if not len(idx) or segre[k - 2] == 0:
            continue
        tgt = []
        for i in idx:
            e = DenseLayout._bump(lay.monos[i], hv, -k)
            tgt.append(lay.slot[DenseLayout._bump(e, lv, k - 2)])
        out[np.array(tgt, dtype=np.int64)] += segre[k - 2] * F[idx]
        out %= batch.mod
    return out


def _segre_numbers(n: int) -> list[int]:
    # 1/((1+2L)(1+3L)) = sum_k (3^(k+1) - 2^(k+1)) (-L)^k
    return [(-1) ** k * (3 ** (k + 1) - 2 ** (k + 1)) for k in range(n + 1)]


def _interpolate(values: list[int], points: list[int], p: int) -> list[int]:
    """Coefficients (low to high) of the polynomial through (points, values) mod p."""
    n = len(points)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(points[i] - points[i - j], -1, p) % p
    poly = [0] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (y - points[i]) + coef[i]
        new = [0] * n
        for t in range(n - 1):
            new[t + 1] = poly[t]
        for t in range(n):
            new[t] = (new[t] - points[i] * poly[t]) % p
        new[0] = (new[0] + coef[i]) % p
        poly = new
    return poly


def _run_batch(res, layout: DenseLayout, primes: list[int]) -> dict[tuple, dict[int, list[int]]]:
    """Residues {exponent: {prime: y-coefficients}} of the pushed-forward class."""
    from .pipeline import _series, integrand_factors

    ring = res.ring
    cap = layout.cap
    batch = _Batch(layout, primes)
    Q, Qinv, G = _series(cap)
    series = {"Q": Q, "1/Q": Qinv, "z/Q": G}
    cols = {
        name: [batch.scalar_values(s[k]) for k in range(cap + 1)] for name, s in series.items()
    }
    F = batch.one()
    for name, D in integrand_factors(res):
        F = batch.mul_series(F, cols[name], _linear_form(D))
    for step in reversed(res.steps):
        forms = [_linear_form(U) for U in step.center.classes]
        F = _blowdown(batch, F, ring.index(step.exceptional), forms)
    F = _pushforward(batch, F, ring.index("H"), ring.index("L"), _segre_numbers(cap))
    out: dict[tuple, dict[int, list[int]]] = {}
    npts = len(batch.points)
    for slot in np.nonzero(F.any(axis=1))[0]:
        e = layout.monos[slot]
        per = {}
        for pi, p in enumerate(primes):
            vals = [int(v) for v in F[slot, pi * npts:(pi + 1) * npts]]
            per[p] = _interpolate(vals, batch.points, p)
        out[e] = per
    return out


def _lift(residues: dict[tuple, dict[int, list[int]]], primes: list[int]):
    """CRT + rational reconstruction; None if some coefficient does not lift yet."""
    M = 1
    for p in primes:
        M *= p
    terms = {}
    for e, per in residues.items():
        n = max(len(v) for v in per.values())
        coeffs = []
        for i in range(n):
            u = 0
            for p in primes:
                r = per.get(p, [0] * n)[i]
                Mi = M // p
                u = (u + r * Mi * pow(Mi, -1, p)) % M
            q = rational_reconstruct(u, M)
            if q is None:
                return None
            coeffs.append(q)
        c = YRational(YPoly(coeffs))
        if c:
            terms[e] = c
    return terms


def derive_modular(res, batch_size: int = 1, max_primes: int = 40) -> GradedPoly:
    """Pushforward of the resolved model's integrand to the base, same ring as the exact engine."""
    ring: GradedRing = res.ring
    if any(d != 1 for d in ring.degrees):
        raise ValueError("the modular engine needs degree-one ambient variables")
    cap = res.cap
    layout = DenseLayout(len(ring), cap)
    pool = primes_below(2 ** 31, max_primes)
    used: list[int] = []
    residues: dict[tuple, dict[int, list[int]]] = {}
    previous = None
    while True:
        if len(used) >= max_primes:
            raise ArithmeticError("rational reconstruction did not stabilize")
        fresh = pool[len(used): len(used) + batch_size]
        for e, per in _run_batch(res, layout, fresh).items():
            residues.setdefault(e, {}).update(per)
        used += fresh
        current = _lift(residues, used)
        if current is not None and current == previous:
            return GradedPoly(ring, cap - 2, current)
        previous = current
