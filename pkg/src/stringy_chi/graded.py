"""Truncated graded polynomial rings over Q(y).

A ``GradedRing`` fixes an ordered list of formal variables with positive
weights.  ``GradedPoly`` elements carry a truncation cap: every monomial of
weighted degree above the cap is dropped after each operation.  The weighted
degree plays the role of the bookkeeping variable t of the generating
functions, so "coefficient of t^d" is the degree-d homogeneous part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .coeff import ONE, ZERO, YPoly, YRational

__all__ = [
    "GradedVariable",
    "GradedRing",
    "GradedPoly",
    "CharSeries",
    "RingMismatch",
    "NonUnitError",
    "invert",
    "exp_series",
    "log_series",
    "apply_series",
    "mul_series",
    "graded_scale",
    "substitute",
]


class RingMismatch(ValueError):
    pass


class NonUnitError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GradedVariable:
    name: str
    degree: int = 1

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"variable {self.name} must have positive degree")


class GradedRing:
    """Ordered set of graded variables; equality is by value."""

    def __init__(self, variables: Iterable):
        vs = []
        for v in variables:
            if isinstance(v, str):
                v = GradedVariable(v, 1)
            elif isinstance(v, tuple):
                v = GradedVariable(*v)
            vs.append(v)
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.variables = tuple(vs)
        self.names = tuple(names)
        self.degrees = tuple(v.degree for v in vs)
        self._index = {n: i for i, n in enumerate(names)}

    @classmethod
    def standard(cls, names: Iterable[str] = (), n_chern: int = 0) -> "GradedRing":
        """Degree-one divisor variables followed by Chern variables c1..c_n."""
        vs = [GradedVariable(n, 1) for n in names]
        vs += [GradedVariable(f"c{i}", i) for i in range(1, n_chern + 1)]
        return cls(vs)

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"GradedRing({', '.join(self.names)})"

    def __len__(self):
        return len(self.variables)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self!r}") from None

    def weight(self, exps: tuple) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def zero(self, cap: int) -> "GradedPoly":
        return GradedPoly(self, cap, {})

    def one(self, cap: int) -> "GradedPoly":
        return self.const(1, cap)

    def const(self, c, cap: int) -> "GradedPoly":
        c = YRational.coerce(c)
        return GradedPoly(self, cap, {(0,) * len(self): c} if c else {})

    def var(self, name: str, cap: int) -> "GradedPoly":
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self)))
        return GradedPoly(self, cap, {exps: ONE})

    def linear(self, coeffs: Mapping[str, object], cap: int) -> "GradedPoly":
        """Sum of coefficient*variable."""
        terms = {}
        for name, c in coeffs.items():
            c = YRational.coerce(c)
            if c:
                i = self.index(name)
                terms[tuple(1 if j == i else 0 for j in range(len(self)))] = c
        return GradedPoly(self, cap, terms)


def _fmt_coeff_mono(c: YRational, mono: str) -> str:
    """Render coefficient*monomial without a leading '+'."""
    cs = str(c)
    if not mono:
        return cs
    if c.is_constant():
        v = c.constant_value()
        if v == 1:
            return mono
        if v == -1:
            return "-" + mono
        return f"{cs}*{mono}"
    if c.is_polynomial() and len(c.num.coeffs) - c.num.coeffs.count(0) == 1:
        # single y-monomial, e.g. -6*y^2
        return f"{cs}*{mono}"
    return f"({cs})*{mono}"


class GradedPoly:
    """Polynomial in the ring's variables with Q(y) coefficients, truncated at ``cap``."""

    __slots__ = ("ring", "cap", "terms")

    def __init__(self, ring: GradedRing, cap: int, terms: Mapping[tuple, YRational] | None = None):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.ring = ring
        self.cap = cap
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != len(ring):
                    raise ValueError(f"exponent vector {e} does not match {ring!r}")
                if not isinstance(c, YRational):
                    c = YRational.coerce(c)
                if c and ring.weight(e) <= cap:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, cap, terms):
        p = object.__new__(cls)
        p.ring = ring
        p.cap = cap
        p.terms = terms
        return p

    # -- queries ------------------------------------------------------------
    def _check(self, other: "GradedPoly"):
        if self.ring != other.ring or self.cap != other.cap:
            raise RingMismatch(
                f"cannot combine {self.ring!r} cap {self.cap} with {other.ring!r} cap {other.cap}"
            )

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> YRational:
        return self.terms.get((0,) * len(self.ring), ZERO)

    def homogeneous(self, d: int) -> "GradedPoly":
        w = self.ring.weight
        return GradedPoly._raw(self.ring, self.cap, {e: c for e, c in self.terms.items() if w(e) == d})

    def parts(self) -> dict[int, "GradedPoly"]:
        out: dict[int, dict] = {}
        w = self.ring.weight
        for e, c in self.terms.items():
            out.setdefault(w(e), {})[e] = c
        return {d: GradedPoly._raw(self.ring, self.cap, t) for d, t in out.items()}

    def truncate(self, cap: int) -> "GradedPoly":
        w = self.ring.weight
        return GradedPoly._raw(self.ring, cap, {e: c for e, c in self.terms.items() if w(e) <= cap})

    def with_cap(self, cap: int) -> "GradedPoly":
        return self.truncate(cap)

    def involves(self, name: str) -> bool:
        i = self.ring.index(name)
        return any(e[i] for e in self.terms)

    def max_exponent(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=0)

    def is_homogeneous(self, d: int) -> bool:
        w = self.ring.weight
        return all(w(e) == d for e in self.terms)

    def map_coefficients(self, f) -> "GradedPoly":
        return GradedPoly(self.ring, self.cap, {e: f(c) for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ring == other.ring and self.cap == other.cap and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.cap, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GradedPoly):
            other = self.ring.const(other, self.cap)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return GradedPoly._raw(self.ring, self.cap, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._raw(self.ring, self.cap, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedPoly):
            other = self.ring.const(other, self.cap)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GradedPoly":
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return self.ring.zero(self.cap)
            return GradedPoly._raw(self.ring, self.cap, {e: v * c for e, v in self.terms.items()})
        c = YRational.coerce(c)
        if not c:
            return self.ring.zero(self.cap)
        return GradedPoly._raw(self.ring, self.cap, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            return self.scale(other)
        self._check(other)
        cap = self.cap
        w = self.ring.weight
        a = [(e, c, w(e)) for e, c in self.terms.items()]
        b = [(e, c, w(e)) for e, c in other.terms.items()]
        out: dict = {}
        for ea, ca, wa in a:
            room = cap - wa
            for eb, cb, wb in b:
                if wb > room:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                v = ca * cb
                s = out.get(e)
                out[e] = v if s is None else s + v
        return GradedPoly._raw(self.ring, cap, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        out = self.ring.one(self.cap)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, GradedPoly):
            return self * invert(other)
        return self.scale(YRational.coerce(other).inverse())

    # -- coefficient-wise y operations -------------------------------------
    def eval_y(self, y0) -> "GradedPoly":
        """Specialize y coefficient-wise; raises PoleError if a reduced coefficient has a pole."""
        return GradedPoly(self.ring, self.cap, {e: YRational(c.eval_at(y0)) for e, c in self.terms.items()})

    def is_y_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.terms.values())

    # -- ring changes -------------------------------------------------------
    def embed(self, ring: GradedRing, cap: int | None = None) -> "GradedPoly":
        """Re-express in another ring whose variables include every variable used here."""
        cap = self.cap if cap is None else cap
        used = [i for i in range(len(self.ring)) if any(e[i] for e in self.terms)]
        pos = {}
        for i in used:
            v = self.ring.variables[i]
            j = ring.index(v.name)
            if ring.variables[j].degree != v.degree:
                raise RingMismatch(f"variable {v.name} has different degree in {ring!r}")
            pos[i] = j
        out = {}
        n = len(ring)
        for e, c in self.terms.items():
            ne = [0] * n
            for i in used:
                ne[pos[i]] = e[i]
            out[tuple(ne)] = c
        return GradedPoly(ring, cap, out)

    def coefficient_in(self, name: str) -> dict[int, "GradedPoly"]:
        """Split as sum_k a_k * name^k; returns {k: a_k} with name removed from a_k."""
        i = self.ring.index(name)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: GradedPoly._raw(self.ring, self.cap, t) for k, t in out.items()}

    # -- rendering ----------------------------------------------------------
    def sorted_terms(self):
        w = self.ring.weight
        return sorted(self.terms.items(), key=lambda t: (w(t[0]), t[0]))

    def monomial_str(self, e: tuple) -> str:
        parts = []
        for name, k in zip(self.ring.names, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for e, c in self.sorted_terms():
            t = _fmt_coeff_mono(c, self.monomial_str(e))
            if out and not t.startswith("-"):
                out += "+"
            out += t
        return out

    def __repr__(self):
        return f"GradedPoly[{', '.join(self.ring.names)}; cap={self.cap}]({self})"

    def to_json_terms(self) -> list[dict]:
        out = []
        for e, c in self.sorted_terms():
            mono = {n: k for n, k in zip(self.ring.names, e) if k}
            out.append({"monomial": mono, "coeff": {"num": str(c.num), "den": str(c.den)}})
        return out


class CharSeries:
    """Truncated univariate power series sum_k coeffs[k] * z^k with Q(y) coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(YRational.coerce(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        return isinstance(other, CharSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"CharSeries({', '.join(map(str, self.coeffs))})"

    def truncate(self, order: int) -> "CharSeries":
        return CharSeries(self.coeffs[: order + 1])

    def __add__(self, other: "CharSeries") -> "CharSeries":
        n = min(self.order, other.order)
        return CharSeries(self[k] + other[k] for k in range(n + 1))

    def __mul__(self, other):
        if not isinstance(other, CharSeries):
            c = YRational.coerce(other)
            return CharSeries(x * c for x in self.coeffs)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = ZERO
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return CharSeries(out)

    def inverse(self) -> "CharSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise NonUnitError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = ZERO
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return CharSeries(out)

    def derivative(self) -> "CharSeries":
        if self.order == 0:
            return CharSeries([0])
        return CharSeries(self.coeffs[k] * k for k in range(1, self.order + 1))

    def log(self) -> "CharSeries":
        if self.coeffs[0] != ONE:
            raise ValueError("log needs constant term 1")
        if self.order == 0:
            return CharSeries([0])
        d = self.derivative() * self.truncate(self.order - 1).inverse()
        return CharSeries([ZERO] + [d[k] * Fraction(1, k + 1) for k in range(self.order)])

    def exp(self) -> "CharSeries":
        if self.coeffs[0]:
            raise ValueError("exp needs constant term 0")
        # f' = a' f, solved coefficient by coefficient
        out = [ONE]
        for n in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k] * k
            out.append(acc * Fraction(1, n))
        return CharSeries(out)

    def eval_y(self, y0) -> list[Fraction]:
        return [c.eval_at(y0) for c in self.coeffs]

    @classmethod
    def geometric(cls, order: int, ratio=-1) -> "CharSeries":
        """sum (ratio*z)^k, e.g. 1/(1+z) for ratio -1."""
        r = Fraction(ratio)
        return cls([r**k for k in range(order + 1)])


def invert(a: GradedPoly) -> GradedPoly:
    """Multiplicative inverse up to the cap; the constant term must be a unit."""
    c0 = a.constant_term()
    if not c0:
        raise NonUnitError("element with zero constant term is not invertible")
    inv0 = c0.inverse()
    n = (a - a.ring.const(c0, a.cap)).scale(inv0)
    # 1/(1+n) = 1 - n + n^2 - ... by Horner
    out = a.ring.one(a.cap)
    for _ in range(a.cap):
        out = a.ring.one(a.cap) - n * out
    return out.scale(inv0)


def exp_series(a: GradedPoly) -> GradedPoly:
    if a.constant_term():
        raise ValueError("exp_series needs a zero constant term")
    one = a.ring.one(a.cap)
    out = one
    for k in range(a.cap, 0, -1):
        out = one + (a * out).scale(Fraction(1, k))
    return out


def log_series(a: GradedPoly) -> GradedPoly:
    if a.constant_term() != ONE:
        raise ValueError("log_series needs constant term 1")
    n = a - a.ring.one(a.cap)
    out = a.ring.zero(a.cap)
    for k in range(a.cap, 0, -1):
        out = a.ring.const(Fraction((-1) ** (k + 1), k), a.cap) + n * out
    return n * out


def _check_divisor(D: GradedPoly):
    if D.constant_term():
        raise ValueError("series argument must have zero constant term")


def apply_series(s: CharSeries, D: GradedPoly) -> GradedPoly:
    """sum_k s[k] D^k truncated at D.cap."""
    _check_divisor(D)
    if s.order < D.cap:
        raise ValueError(f"series order {s.order} below cap {D.cap}")
    return mul_series(D.ring.one(D.cap), s, D)


def mul_series(a: GradedPoly, s: CharSeries, D: GradedPoly) -> GradedPoly:
    """a * s(D) by Horner's rule without materializing s(D)."""
    _check_divisor(D)
    a._check(D)
    cap = a.cap
    out = a.scale(s[cap]) if cap <= s.order else a.ring.zero(cap)
    for k in range(min(cap, s.order + 1) - 1, -1, -1):
        out = out * D + a.scale(s[k])
    return out


def graded_scale(a: GradedPoly, r: CharSeries) -> GradedPoly:
    """Multiply the degree-d part of ``a`` by r[d] for every d."""
    if r.order < a.cap:
        raise ValueError(f"series order {r.order} below cap {a.cap}")
    w = a.ring.weight
    return GradedPoly(a.ring, a.cap, {e: c * r[w(e)] for e, c in a.terms.items()})


def substitute(a: GradedPoly, rules: Mapping[str, GradedPoly]) -> GradedPoly:
    """Replace variables by polynomials of the same ring, each homogeneous of the variable's degree."""
    if not rules:
        return a
    ring, cap = a.ring, a.cap
    idx = {}
    for name, rep in rules.items():
        i = ring.index(name)
        if rep.ring != ring:
            raise RingMismatch(f"replacement for {name} lives in {rep.ring!r}")
        if not rep.is_homogeneous(ring.degrees[i]):
            raise ValueError(f"replacement for {name} is not homogeneous of degree {ring.degrees[i]}")
        idx[i] = rep.with_cap(cap)
    powers: dict[tuple[int, int], GradedPoly] = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = idx[i] ** k
        return powers[key]

    out = ring.zero(cap)
    for e, c in a.terms.items():
        rest = tuple(0 if i in idx else x for i, x in enumerate(e))
        term = GradedPoly._raw(ring, cap, {rest: c})
        for i in idx:
            if e[i]:
                term = term * power(i, e[i])
        out = out + term
    return out
