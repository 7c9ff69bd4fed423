"""Acceptance criteria, one test per criterion.

Each criterion runs its checks, records pass/fail with the elapsed time and
prints one line; the conftest hook repeats the lines at the end of the run.
Run directly with ``python3 tests/test_acceptance.py`` for just the summary.
"""

import json
import random
import time
from fractions import Fraction

import pytest
import sympy as sp

from conftest import CRITERIA, to_sympy
from stringy_chi import catalog, pipeline
from stringy_chi.catalog import builtin_models, dump_models, get_model, parse_models
from stringy_chi.charseries import hirzebruch_Q
from stringy_chi.cli import dump_json, main
from stringy_chi.graded import GradedRing
from stringy_chi.pipeline import (
    chi_stringy_euler,
    chi_y,
    derive_QY,
    hodge_relations,
    is_palindromic,
    rewrite_c1c2,
    verify_model,
)
from stringy_chi.pushforward import BlowupCenter, blowdown

y, z, S, L = sp.symbols("y z S L")
c1, c2, c3, c4 = sp.symbols("c1 c2 c3 c4")


def same(ours, expected) -> bool:
    return sp.expand(to_sympy(ours) - sp.sympify(expected)) == 0


def fresh():
    # timings should not benefit from earlier criteria
    pipeline._qy_cached.cache_clear()


def criterion_1():
    m = get_model("SO6")
    displayed = {
        1: (y**2 - 10 * y + 1) * c1,
        2: -6 * (y - 1) * c1**2 * y,
        3: -sp.Rational(1, 12) * (48 * (y**2 - 4 * y + 1) * c1**2 * y - (y**2 - 10 * y + 1) ** 2 * c2) * c1,
        4: -sp.Rational(1, 2) * (y - 1) * (y**2 - 10 * y + 1) * (4 * c1**3 + 2 * c1 * c2 - c3) * c1 * y,
    }
    return [(f"a{d}", same(chi_y(m, d, True).chi_poly, e)) for d, e in displayed.items()]


def criterion_2():
    m = get_model("SO6")
    displayed = {
        1: 12 * c1,
        2: -12 * c1**2,
        3: 12 * c1 * c2 + 24 * c1**3,
        4: 12 * (c1 * c3 - 2 * c1**2 * c2 - 4 * c1**4),
    }
    return [(f"d={d}", same(chi_stringy_euler(m, d, True), e)) for d, e in displayed.items()]


def criterion_3():
    m = get_model("SU2")
    displayed = {
        1: (y**2 - 10 * y + 1) * c1,
        2: 3 * y * (1 - y) * (S**2 - 5 * S * c1 + 10 * c1**2),
        3: (y**2 - 4 * y + 1) * (S**3 * y - 14 * S**2 * c1 * y + 49 * S * c1**2 * y - 60 * c1**3 * y)
        + sp.Rational(1, 12) * (y**2 - 10 * y + 1) ** 2 * c1 * c2,
    }
    return [(f"a{d}", same(chi_y(m, d, True).chi_poly, e)) for d, e in displayed.items()]


def criterion_4():
    m = get_model("SU2")
    rep = hodge_relations(m, 3)
    chi = rep.chi
    chi1_displayed = S**3 + 14 * S**2 * c1 + 49 * S * c1**2 - 60 * c1**3
    euler = rewrite_c1c2(chi_stringy_euler(m, 3, True))
    return [
        ("chi0 = chi4 = 2", same(chi[0], 2) and same(chi[4], 2)),
        ("chi1 = chi3", chi[1] == chi[3]),
        ("chi1 = S^3+14S^2c1+49Sc1^2-60c1^3", same(chi[1], chi1_displayed)),
        ("chi2 = 4*chi1+204", same(chi[2], 4 * to_sympy(chi[1]) + 204)),
        ("chi_str", same(euler, 288 + 360 * c1**3 + 6 * (14 * S**2 * c1 - S**3 - 49 * S * c1**2))),
    ]


def criterion_5():
    out = []
    for m in builtin_models():
        if m.closed_form is None:
            continue
        r = verify_model(m, 6)
        out.append((m.gauge_label if r.equal else str(r), r.equal))
    return out


def criterion_6():
    m = get_model("SMOOTH")
    out = []
    for d in range(1, 5):
        cs = [1, c1, c2, c3]
        expected = 12 * L * sum(cs[i] * (-6 * L) ** (d - 1 - i) for i in range(d))
        out.append((f"d={d}", same(chi_stringy_euler(m, d), expected)))
    return out


def criterion_7():
    Q = hirzebruch_Q(8)

    def series(expr):
        s = sp.expand(sp.series(expr, z, 0, 9).removeO())
        return [s.coeff(z, k) for k in range(9)]

    def ours(y0):
        return [sp.Rational(v.numerator, v.denominator) for v in Q.eval_y(y0)]

    todd = series(z / (1 - sp.exp(-z)))
    return [
        ("y=-1: 1+z", ours(-1) == [1, 1] + [0] * 7),
        ("y=0: Todd", ours(0) == todd and todd[:5] == [1, sp.Rational(1, 2), sp.Rational(1, 12), 0, sp.Rational(-1, 720)]),
        ("y=1: z/tanh z", ours(1) == series(z / sp.tanh(z))),
    ]


def _lagrange(us):
    out = []
    for i, ui in enumerate(us):
        w = sp.Integer(1)
        for j, uj in enumerate(us):
            if j != i:
                w *= uj / (uj - ui)
        out.append(w)
    return out


def criterion_8():
    out = []
    # Lagrange identities
    ok = True
    for d in (2, 3):
        us = sp.symbols(f"U1:{d + 1}")
        C = _lagrange(us)
        ok &= sp.simplify(sum(C)) == 1
        ok &= all(sp.simplify(sum(c * u**k for c, u in zip(C, us))) == 0 for k in range(1, d))
    out.append(("Lagrange identities", ok))

    # remainder method against the Lagrange sum on random inputs
    rng = random.Random(20240611)
    ok = True
    cap = 5
    for trial in range(12):
        d = rng.choice((2, 3))
        ring = GradedRing.standard([f"U{i}" for i in range(1, d + 1)] + ["E"])
        center = BlowupCenter(tuple(ring.var(f"U{i}", cap) for i in range(1, d + 1)), "E")
        cs = [rng.randint(-5, 5) for _ in range(rng.randint(1, cap + 1))]
        E = ring.var("E", cap)
        g = sum(((E**k).scale(c) for k, c in enumerate(cs)), ring.zero(cap))
        us = sp.symbols(f"U1:{d + 1}")
        oracle = sp.cancel(sum(w * sum(c * u**k for k, c in enumerate(cs)) for w, u in zip(_lagrange(us), us)))
        t = sp.Symbol("t")
        graded = sp.expand(sp.expand(oracle).subs({u: t * u for u in us}, simultaneous=True))
        oracle = sum(graded.coeff(t, k) for k in range(cap + 1))
        ok &= sp.expand(to_sympy(blowdown(g, center)) - oracle) == 0
    out.append(("remainder = Lagrange", ok))

    # degree-0 vanishing, polynomiality and palindromicity for every model
    deg0, poly, pal = True, True, True
    for m in builtin_models():
        q = derive_QY(m, 4)
        deg0 &= q.homogeneous(0).is_zero()
        for d in range(1, 5):
            res = chi_y(m, d, calabi_yau=True, qy=q)
            poly &= all(c.is_polynomial() for c in res.chi_poly.terms.values())
            pal &= is_palindromic(res)
    out += [("degree-0 part = 0", deg0), ("polynomial in y", poly), ("palindromic", pal)]
    return out


def criterion_9(tmp_dir=None):
    import io
    import os
    import tempfile
    from contextlib import redirect_stdout

    out = []
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "models.json")
        catalog.save_models(builtin_models(), path)
        out.append(("catalog save -> load", catalog.load_models(path) == builtin_models()))
        text = dump_models(builtin_models())
        out.append(("catalog text identity", dump_models(parse_models(text)) == text))
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["chi", "--model", "SU2", "--dim", "3", "--calabi-yau", "--output", "json"])
    doc = buf.getvalue()
    out.append(("JSON parse -> serialize", code == 0 and dump_json(json.loads(doc)) == doc))
    return out


CRITERION_BUDGETS = {
    1: (criterion_1, 10),
    2: (criterion_2, 10),
    3: (criterion_3, 10),
    4: (criterion_4, 10),
    5: (criterion_5, 300),
    6: (criterion_6, 10),
    7: (criterion_7, 1),
    8: (criterion_8, 120),
    9: (criterion_9, 1),
}


def run_criterion(k):
    fn, budget = CRITERION_BUDGETS[k]
    fresh()
    t0 = time.perf_counter()
    checks = fn()
    secs = time.perf_counter() - t0
    failed = [name for name, ok in checks if not ok]
    if secs > budget:
        failed.append(f"took {secs:.1f} s, budget {budget} s")
    ok = not failed
    detail = "failed: " + "; ".join(failed) if failed else f"{len(checks)} checks"
    CRITERIA[k] = (ok, secs, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.1f} s) - {detail}")
    return ok, detail


@pytest.mark.parametrize("k", sorted(CRITERION_BUDGETS))
def test_criterion(k):
    ok, detail = run_criterion(k)
    assert ok, detail


if __name__ == "__main__":
    results = [run_criterion(k)[0] for k in sorted(CRITERION_BUDGETS)]
    raise SystemExit(0 if all(results) else 1)
