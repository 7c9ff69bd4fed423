"""Exact arithmetic in Q(y).

Rationals are ``fractions.Fraction``.  ``YPoly`` is a univariate polynomial in
``y`` with rational coefficients and ``YRational`` a reduced quotient of two of
them, with a monic denominator so that equal values have equal representations.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["YPoly", "YRational", "PoleError", "as_fraction"]


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero of the denominator."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class YPoly:
    """Polynomial in y; ``coeffs[i]`` is the coefficient of y**i.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "YPoly":
        # coeffs already Fractions with nonzero last entry
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "YPoly":
        return cls((c,))

    @classmethod
    def y(cls) -> "YPoly":
        return cls((0, 1))

    # -- basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, YPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == YPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: "YPoly") -> "YPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return YPoly(out)

    def __neg__(self) -> "YPoly":
        return YPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "YPoly") -> "YPoly":
        return self + (-other)

    def __mul__(self, other: "YPoly") -> "YPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return YPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return YPoly(out)

    def scale(self, c) -> "YPoly":
        c = as_fraction(c)
        if c == 0:
            return YPoly._raw(())
        return YPoly._raw(tuple(x * c for x in self.coeffs))

    def divmod(self, other: "YPoly") -> tuple["YPoly", "YPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.coeffs[-1]
        if len(rem) - 1 < db:
            return YPoly._raw(()), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lb
            quot[k] = q
            if q:
                for j, cb in enumerate(other.coeffs):
                    rem[k + j] -= q * cb
        return YPoly(quot), YPoly(rem[:db])

    def monic(self) -> "YPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    def gcd(self, other: "YPoly") -> "YPoly":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, y0):
        y0 = as_fraction(y0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y0 + c
        return acc

    # -- rendering ----------------------------------------------------------
    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = _fmt_frac(a)
            else:
                mono = "y" if i == 1 else f"y^{i}"
                body = mono if a == 1 else f"{_fmt_frac(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"YPoly({self})"

    def to_pairs(self) -> list[list[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs) -> "YPoly":
        return cls(Fraction(int(n), int(d)) for n, d in pairs)


_ONE_POLY = YPoly((1,))


class YRational:
    """Element of Q(y) kept as num/den with gcd 1 and monic den."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if not isinstance(num, YPoly):
            num = YPoly((num,))
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, YPoly):
            den = YPoly((den,))
        if den.is_zero():
            raise ZeroDivisionError("YRational with zero denominator")
        if num.is_zero():
            num, den = num, _ONE_POLY
        elif not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lc = den.coeffs[-1]
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num: YPoly, den: YPoly) -> "YRational":
        # caller guarantees canonical form
        r = object.__new__(cls)
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def coerce(cls, x) -> "YRational":
        if isinstance(x, YRational):
            return x
        if isinstance(x, YPoly):
            return cls._make(x, _ONE_POLY)
        return cls._make(YPoly((as_fraction(x),)), _ONE_POLY)

    @classmethod
    def y(cls) -> "YRational":
        return cls._make(YPoly.y(), _ONE_POLY)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, YRational):
            try:
                other = YRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- field operations ---------------------------------------------------
    def __add__(self, other):
        other = YRational.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return YRational._make(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return YRational(self.num + other.num, self.den)
        return YRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return YRational._make(-self.num, self.den)

    def __sub__(self, other):
        return self + (-YRational.coerce(other))

    def __rsub__(self, other):
        return YRational.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return YRational._make(YPoly._raw(()), _ONE_POLY)
            return YRational._make(self.num.scale(other), self.den)
        other = YRational.coerce(other)
        if self.den.is_one() and other.den.is_one():
            return YRational._make(self.num * other.num, _ONE_POLY)
        return YRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "YRational":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(y)")
        return YRational(self.den, self.num)

    def __truediv__(self, other):
        return self * YRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return YRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = YRational.coerce(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation ---------------------------------------------------------
    def eval_at(self, y0) -> Fraction:
        """Exact value at ``y = y0``; raises PoleError at a pole of the reduced form."""
        d = self.den(y0)
        if d == 0:
            raise PoleError(f"{self} has a pole at y = {y0}; reduce to a polynomial before evaluating")
        return self.num(y0) / d

    def as_polynomial(self):
        """The numerator when the reduced denominator is 1, else None."""
        return self.num if self.den.is_one() else None

    def substitute_inverse(self) -> "YRational":
        """f(1/y)."""
        def flip(p: YPoly):
            return YPoly(reversed(p.coeffs)), p.degree
        n, dn = flip(self.num)
        d, dd = flip(self.den)
        # f(1/y) = n(y)/y^dn / (d(y)/y^dd)
        shift = dd - dn
        if shift >= 0:
            n = n * YPoly((0,) * shift + (1,))
        else:
            d = d * YPoly((0,) * (-shift) + (1,))
        return YRational(n, d)

    # -- rendering / serialization ------------------------------------------
    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"YRational({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_pairs(), "den": self.den.to_pairs()}

    @classmethod
    def from_json(cls, d) -> "YRational":
        return cls(YPoly.from_pairs(d["num"]), YPoly.from_pairs(d["den"]))


ZERO = YRational(0)
ONE = YRational(1)
