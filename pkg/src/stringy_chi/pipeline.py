"""From resolution data to stringy chi_y generating functions.

The ambient space is P(O + L^2 + L^3) with hyperplane class H; the sections
x, y, z cut out H+2L, H+3L and H.  Each blowup along a center cut out by
divisor classes U_1..U_d with exceptional divisor E multiplies the ambient
Hirzebruch class by

    Q(E) prod_j Q(U_j - E) / Q(U_j),

subtracts E from the class of every generator in the center, and drops the
hypersurface class by (d-1) E.  Adjunction then gives

    i_* T_y(Y_n) = [Y_n]/Q([Y_n]) prod_steps(...) Q(H) Q(H+2L) Q(H+3L) pi^* T_y(B),

which is pushed down through the exceptional divisors (last blowup first)
and along the P^2-bundle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .catalog import WeierstrassModel, base_ring, expand_closed_form
from .charseries import base_hirzebruch_class, hirzebruch_Q
from .coeff import YRational
from .graded import CharSeries, GradedPoly, GradedRing, mul_series, substitute
from .pushforward import BlowupCenter, blowdown, projective_pushforward, weierstrass_bundle

__all__ = [
    "ResolutionStep",
    "ResolvedModel",
    "ChiResult",
    "HodgeReport",
    "VerifyReport",
    "UndefinedGenerator",
    "NonPolynomialError",
    "ambient_ring",
    "resolve",
    "integrand_factors",
    "derive_QY",
    "chi_y",
    "chi_stringy_euler",
    "rewrite_c1c2",
    "hodge_relations",
    "verify_model",
]

log = logging.getLogger(__name__)


class UndefinedGenerator(KeyError):
    pass


class NonPolynomialError(ArithmeticError):
    pass


def ambient_ring(n_blowups: int) -> GradedRing:
    return GradedRing.standard(("H", "L", "S") + tuple(f"E{i}" for i in range(1, n_blowups + 1)))


def _initial_table(ring: GradedRing, cap: int) -> dict[str, GradedPoly]:
    H, L, S = (ring.var(n, cap) for n in ("H", "L", "S"))
    return {"x": H + L.scale(2), "y": H + L.scale(3), "z": H, "s": S}


@dataclass(frozen=True)
class ResolutionStep:
    center: BlowupCenter
    exceptional: str
    multiplicity: int
    generators: tuple[str, ...] = ()


@dataclass(frozen=True)
class ResolvedModel:
    model: WeierstrassModel
    steps: tuple[ResolutionStep, ...]
    y_class: GradedPoly
    section_table: dict

    @property
    def ring(self) -> GradedRing:
        return self.y_class.ring

    @property
    def cap(self) -> int:
        return self.y_class.cap


def resolve(m: WeierstrassModel, cap: int, multiplicities=None) -> ResolvedModel:
    """Walk the blowups, tracking proper-transform classes of the generators.

    ``cap`` is the ambient truncation degree.  ``multiplicities`` overrides the
    crepant rule m = codim - 1 (used only to build negative controls).
    """
    ring = ambient_ring(m.n_blowups)
    table = _initial_table(ring, cap)
    y_class = ring.var("H", cap).scale(3) + ring.var("L", cap).scale(6)
    steps = []
    for i, gens in enumerate(m.centers, start=1):
        missing = [g for g in gens if g not in table]
        if missing:
            raise UndefinedGenerator(
                f"{m.gauge_label}: blowup {i} uses {', '.join(missing)} before it is defined"
            )
        E = f"E{i}"
        center = BlowupCenter(tuple(table[g] for g in gens), E)
        mult = len(gens) - 1 if multiplicities is None else multiplicities[i - 1]
        steps.append(ResolutionStep(center, E, mult, tuple(gens)))
        Ec = ring.var(E, cap)
        for g in gens:
            table[g] = table[g] - Ec
        table[f"e{i}"] = Ec
        y_class = y_class - Ec.scale(mult)
    return ResolvedModel(m, tuple(steps), y_class, table)


@lru_cache(maxsize=None)
def _series(order: int) -> tuple[CharSeries, CharSeries, CharSeries]:
    Q = hirzebruch_Q(order)
    Qinv = Q.inverse()
    # z / Q(z): the fundamental class divided by Q of the normal bundle
    G = CharSeries([0] + list(Qinv.coeffs[:order]))
    return Q, Qinv, G


def integrand_factors(res: ResolvedModel) -> list[tuple[str, GradedPoly]]:
    """(series name, class) pairs whose product is the class to push forward.

    Series names: ``Q``, ``1/Q`` and ``z/Q`` (the last one is applied to [Y_n]).
    """
    ring, cap = res.ring, res.cap
    H, L = ring.var("H", cap), ring.var("L", cap)
    out = [("z/Q", res.y_class)]
    for step in res.steps:
        Ec = ring.var(step.exceptional, cap)
        out.append(("Q", Ec))
        for U in step.center.classes:
            out.append(("Q", U - Ec))
            out.append(("1/Q", U))
    out += [("Q", H), ("Q", H + L.scale(2)), ("Q", H + L.scale(3))]
    return out


def _apply_relation(q: GradedPoly, m: WeierstrassModel) -> GradedPoly:
    if m.s_relation is None:
        return q
    return substitute(q, {"S": q.ring.var("L", q.cap).scale(m.s_relation)})


def _derive_exact(res: ResolvedModel) -> GradedPoly:
    ring, cap = res.ring, res.cap
    Q, Qinv, G = _series(cap)
    series = {"Q": Q, "1/Q": Qinv, "z/Q": G}
    expr = ring.one(cap)
    for name, D in integrand_factors(res):
        expr = mul_series(expr, series[name], D)
    for step in reversed(res.steps):
        expr = blowdown(expr, step.center)
    return projective_pushforward(expr, weierstrass_bundle(ring, cap))


def derive_QY(
    m: WeierstrassModel, cap: int, engine: str = "auto", multiplicities=None
) -> GradedPoly:
    """The pushforward factor of the model through base degree ``cap``, in the ring (L, S).

    ``engine`` selects the arithmetic: ``exact`` runs the graded-ring operations
    over Q(y); ``modular`` runs the same steps vectorized modulo primes and
    lifts the result back to Q[y]; ``auto`` (the default) means ``modular``,
    which is much faster and is cross-checked against ``exact`` in the tests.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    res = resolve(m, cap + 2, multiplicities)
    if engine == "auto":
        engine = "modular"
    log.debug("%s: deriving Q_Y through degree %d with the %s engine", m.gauge_label, cap, engine)
    if engine == "exact":
        q = _derive_exact(res)
    elif engine == "modular":
        from .modular import derive_modular

        q = derive_modular(res)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    q = q.embed(base_ring(), cap)
    return _apply_relation(q, m)


# ---------------------------------------------------------------------------
# generating-function coefficients


@dataclass(frozen=True)
class ChiResult:
    model: str
    base_dim: int
    calabi_yau: bool
    chi_poly: GradedPoly

    def y_coefficients(self) -> dict[int, GradedPoly]:
        """chi_y = sum_p chi_p y^p with chi_p polynomials in the base classes."""
        out: dict[int, dict] = {}
        for e, c in self.chi_poly.terms.items():
            for p, v in enumerate(c.num.coeffs):
                if v:
                    out.setdefault(p, {})[e] = YRational(v)
        ring, cap = self.chi_poly.ring, self.chi_poly.cap
        return {p: GradedPoly(ring, cap, t) for p, t in sorted(out.items())}


def _qy(m: WeierstrassModel, cap: int, qy: GradedPoly | None) -> GradedPoly:
    if qy is not None:
        return qy.truncate(cap) if qy.cap > cap else qy
    return _qy_cached(m, cap)


@lru_cache(maxsize=64)
def _qy_cached(m: WeierstrassModel, cap: int) -> GradedPoly:
    return derive_QY(m, cap)


def chi_y(m: WeierstrassModel, base_dim: int, calabi_yau: bool = False, qy: GradedPoly | None = None) -> ChiResult:
    """Degree ``base_dim`` coefficient of Q_Y(t) * exp(R (.) -tC'/C)."""
    if base_dim < 1:
        raise ValueError("base_dim must be at least 1")
    d = base_dim
    ring = base_ring(d)
    q = _qy(m, d, qy).embed(ring, d)
    total = (q * base_hirzebruch_class(d, d, ring)).homogeneous(d)
    if calabi_yau:
        total = substitute(total, {"L": ring.var("c1", d)})
    bad = [c for c in total.terms.values() if not c.is_polynomial()]
    if bad:
        raise NonPolynomialError(f"{m.gauge_label}: non-polynomial chi_y coefficient {bad[0]}")
    return ChiResult(m.gauge_label, d, calabi_yau, total)


def chi_stringy_euler(m: WeierstrassModel, base_dim: int, calabi_yau: bool = False, qy=None) -> GradedPoly:
    return chi_y(m, base_dim, calabi_yau, qy).chi_poly.eval_y(-1)


def is_palindromic(result: ChiResult) -> bool:
    """(-y)^(d+1) chi(1/y) == chi(y), monomial by monomial."""
    n = result.base_dim + 1
    for c in result.chi_poly.terms.values():
        coeffs = list(c.num.coeffs) + [Fraction(0)] * (n + 1 - len(c.num.coeffs))
        if len(coeffs) > n + 1:
            return False
        for p in range(n + 1):
            if coeffs[n - p] * (-1) ** n != coeffs[p]:
                return False
    return True


# ---------------------------------------------------------------------------
# Hodge relations for Calabi-Yau fourfolds


def rewrite_c1c2(a: GradedPoly, value=24) -> GradedPoly:
    """Replace c1*c2 by ``value`` once in every monomial divisible by it."""
    ring = a.ring
    i1, i2 = ring.index("c1"), ring.index("c2")
    out = {}
    for e, c in a.terms.items():
        if e[i1] and e[i2]:
            e = list(e)
            e[i1] -= 1
            e[i2] -= 1
            e, c = tuple(e), c * value
        s = out.get(e)
        out[e] = c if s is None else s + c
    return GradedPoly(ring, a.cap, out)


@dataclass
class HodgeReport:
    """chi_p of a Calabi-Yau fourfold and the Hodge-number relations they imply.

    With X the non-constant part of chi_1, chi_2 = a*X + b is fitted when the
    two have proportional non-constant parts; then
    h22 = 2*h12 + a*X + b and h13 = h12 - h11 - chi_1.
    """

    model: str
    n_blowups: int
    chi: dict[int, GradedPoly]
    palindromic: bool
    chi2_vs_chi1: tuple
    h11: int | None = None
    h12: int | None = None
    h13: GradedPoly | None = None
    h22: GradedPoly | None = None

    @property
    def chi1_part(self) -> GradedPoly:
        """chi_1 without its constant term."""
        c1 = self.chi[1]
        return c1 - c1.ring.const(c1.constant_term(), c1.cap)

    @property
    def chi2_vs_part(self):
        """(a, b) with chi_2 = a*X + b, X = chi1_part; (None, None) if no such fit."""
        a, b = self.chi2_vs_chi1
        if a is None:
            return None, None
        return a, a * self.chi[1].constant_term().constant_value() + b

    def lines(self) -> list[str]:
        out = [f"chi{p} = {v}" for p, v in sorted(self.chi.items())]
        out.append(f"palindromic: {'yes' if self.palindromic else 'NO'}")
        a, b = self.chi2_vs_chi1
        if a is None:
            out.append("chi2 is not an affine function of chi1")
            out.append(f"h22 = 2*h12 + {_paren(self.chi[2])}")
        else:
            out.append(f"chi2 = {_affine('chi1', a, b)}")
            a2, b2 = self.chi2_vs_part
            out.append(f"h22 = 2*h12{_signed_multiple(a2, _paren(self.chi1_part))}{_signed(b2)}")
        out.append(f"h13 = h12 - h11 - {_paren(self.chi[1])}")
        if self.h11 is not None:
            out.append(f"h11 = {self.h11}")
        if self.h12 is not None:
            out.append(f"h12 = {self.h12}")
            out.append(f"h13 = {self.h13}")
            out.append(f"h22 = {self.h22}")
        return out


def _paren(p: GradedPoly) -> str:
    text = str(p)
    return f"({text})" if len(p.terms) > 1 or text.startswith("-") else text


def _signed(b) -> str:
    if not b:
        return ""
    return f" + {b}" if b > 0 else f" - {-b}"


def _signed_multiple(a, text: str) -> str:
    if not a:
        return ""
    mag = "" if abs(a) == 1 else f"{abs(a)}*"
    return f" {'+' if a > 0 else '-'} {mag}{text}"


def _affine(var: str, a, b) -> str:
    if a == 0:
        return str(b)
    head = var if a == 1 else ("-" + var if a == -1 else f"{a}*{var}")
    return head + _signed(b)


def hodge_relations(
    m: WeierstrassModel, base_dim: int = 3, h11_base: int | None = None, h12: int | None = None, qy=None
) -> HodgeReport:
    """chi_0..chi_4 of a Calabi-Yau fourfold over a threefold base, with c1*c2 = 24.

    chi_1 = -h11 + h12 - h13 and chi_2 = h22 - 2 h12, so h13 and h22 follow
    from h11 = h11(B) + 1 + n_blowups and a given h12.
    """
    if base_dim != 3:
        raise ValueError("Hodge relations are implemented for threefold bases (fourfolds)")
    res = chi_y(m, 3, calabi_yau=True, qy=qy)
    pal = is_palindromic(res)
    reduced = ChiResult(res.model, 3, True, rewrite_c1c2(res.chi_poly))
    chi = reduced.y_coefficients()
    ring = reduced.chi_poly.ring
    for p in range(5):
        chi.setdefault(p, ring.zero(3))
    rep = HodgeReport(m.gauge_label, m.n_blowups, chi, pal, _affine_fit(chi[1], chi[2]))
    if h11_base is not None:
        rep.h11 = h11_base + 1 + m.n_blowups
    if h12 is not None:
        if rep.h11 is None:
            raise ValueError("h12 needs h11_base as well")
        rep.h12 = h12
        rep.h13 = ring.const(h12 - rep.h11, 3) - chi[1]
        rep.h22 = ring.const(2 * h12, 3) + chi[2]
    return rep


def _affine_fit(chi1: GradedPoly, chi2: GradedPoly):
    zero = (0,) * len(chi1.ring)
    n1 = {e: c for e, c in chi1.terms.items() if e != zero}
    n2 = {e: c for e, c in chi2.terms.items() if e != zero}
    if not n1 or set(n1) != set(n2):
        return None, None
    ratios = {n2[e] / n1[e] for e in n1}
    if len(ratios) != 1:
        return None, None
    a = ratios.pop()
    if not a.is_constant():
        return None, None
    a = a.constant_value()
    b = chi2.constant_term().constant_value() - chi1.constant_term().constant_value() * a
    return a, b


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerifyReport:
    model: str
    cap: int
    equal: bool
    first_mismatch: str | None = None

    def __str__(self):
        if self.equal:
            return f"{self.model}: pass (through degree {self.cap})"
        return f"{self.model}: FAIL (through degree {self.cap}); first mismatch {self.first_mismatch}"


def first_difference(a: GradedPoly, b: GradedPoly) -> str | None:
    diff = a - b
    if diff.is_zero():
        return None
    e, c = diff.sorted_terms()[0]
    mono = diff.monomial_str(e) or "1"
    return f"{mono}: pipeline {a.terms.get(e, 0)} vs catalog {b.terms.get(e, 0)}"


def verify_model(m: WeierstrassModel, cap: int, engine: str = "auto", multiplicities=None) -> VerifyReport:
    if m.closed_form is None:
        raise ValueError(f"{m.gauge_label} has no transcribed closed form to verify against")
    try:
        derived = derive_QY(m, cap, engine=engine, multiplicities=multiplicities)
        listed = expand_closed_form(m, cap)
    except (UndefinedGenerator, ZeroDivisionError, ValueError) as exc:
        return VerifyReport(m.gauge_label, cap, False, f"error: {exc}")
    diff = first_difference(derived, listed)
    return VerifyReport(m.gauge_label, cap, diff is None, diff)
