import sympy as sp

from stringy_chi.coeff import YRational

Y = sp.Symbol("y")

# filled by tests/test_acceptance.py, printed at the end of the run
CRITERIA = {}


def ysym(c: YRational):
    num = sum(sp.Rational(v.numerator, v.denominator) * Y**i for i, v in enumerate(c.num.coeffs))
    den = sum(sp.Rational(v.numerator, v.denominator) * Y**i for i, v in enumerate(c.den.coeffs))
    return num / den


def to_sympy(p, symbols=None):
    """GradedPoly -> sympy expression in symbols named after the ring variables."""
    symbols = symbols or {n: sp.Symbol(n) for n in p.ring.names}
    out = sp.Integer(0)
    for e, c in p.terms.items():
        mono = sp.Integer(1)
        for name, k in zip(p.ring.names, e):
            mono *= symbols[name] ** k
        out += ysym(c) * mono
    return out


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, secs, detail = CRITERIA[k]
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.1f} s)"
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)
