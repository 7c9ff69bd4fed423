import json
from fractions import Fraction

import pytest
import sympy as sp

from stringy_chi import catalog
from stringy_chi.catalog import (
    ModelSchemaError,
    builtin_models,
    closed_form_at_identity,
    denominators_at_identity,
    dump_models,
    expand_closed_form,
    get_model,
    load_models,
    parse_infix,
    parse_models,
    parse_prefix,
    save_models,
    to_prefix,
)
from stringy_chi.coeff import PoleError, YPoly, YRational

LISTED = [m for m in builtin_models() if m.closed_form is not None]

# the transcribed closed forms, as infix strings, keyed by label
TRANSCRIBED = {
    "SU2": catalog._SU2, "SU3": catalog._SU3, "USp4": catalog._SU3, "G2": catalog._SU3,
    "SU4": catalog._SU4, "Spin7": catalog._SU4, "SU5": catalog._SU5, "SO3": catalog._SO3,
    "SO5": catalog._SO5, "SO6": catalog._SO6, "F4": catalog._F4, "E6": catalog._E6,
    "E7": catalog._E7, "E8": catalog._E8,
}


def test_fifteen_entries():
    labels = [m.gauge_label for m in builtin_models()]
    assert labels == ["SU2", "SU3", "SU4", "SU5", "USp4", "SO3", "SO5", "SO6",
                      "Spin7", "G2", "F4", "E6", "E7", "E8", "SMOOTH"]
    assert len(LISTED) == 14


def test_lookups():
    so5 = get_model("SO5")
    assert so5.centers == (("x", "y", "s"), ("x", "y", "e1"))
    assert so5.s_relation == 2
    e8 = get_model("e8")
    assert e8.n_blowups == 8
    assert e8.centers[-2:] == (("e2", "e4", "e6"), ("e4", "e7"))
    smooth = get_model("SMOOTH")
    assert smooth.n_blowups == 0 and smooth.derived_closed_form
    with pytest.raises(KeyError):
        get_model("SU9")


def test_shared_trees():
    assert get_model("USp4").closed_form == get_model("SU3").closed_form == get_model("G2").closed_form
    assert get_model("USp4").centers == get_model("SU3").centers
    assert get_model("Spin7").closed_form == get_model("SU4").closed_form


@pytest.mark.parametrize("m", LISTED, ids=lambda m: m.gauge_label)
def test_value_at_identity_vanishes(m):
    assert closed_form_at_identity(m.closed_form) == YRational(0)
    expr = sp.sympify(TRANSCRIBED[m.gauge_label])
    assert sp.simplify(expr.subs({"l": 1, "s": 1})) == 0
    assert expand_closed_form(m, 3).homogeneous(0).is_zero()


@pytest.mark.parametrize("m", LISTED, ids=lambda m: m.gauge_label)
def test_denominators_are_units(m):
    assert all(d for d in denominators_at_identity(m.closed_form))


@pytest.mark.parametrize("m", LISTED, ids=lambda m: m.gauge_label)
def test_no_pole_at_minus_one(m):
    q = expand_closed_form(m, 6)
    for c in q.terms.values():
        try:
            c.eval_at(-1)
        except PoleError:
            pytest.fail(f"{m.gauge_label}: coefficient {c} has a pole at y = -1")


def test_so6_first_degree():
    q = expand_closed_form(get_model("SO6"), 3)
    L = q.ring.var("L", 3)
    assert q.homogeneous(1) == L.scale(YRational(YPoly((1, -10, 1))))


def test_su2_degree_zero_by_hand():
    # at l = s = 1: 1 - 2y + (y+1)/(y+1) * (y + (y-1)) = 0
    y = YRational.y()
    assert 1 - 2 * y + (y + 1) / (y + 1) * (y + (y - 1)) == YRational(0)


@pytest.mark.parametrize("label, y0", [("SO5", 2), ("SU2", Fraction(-1, 3)), ("E6", 3)])
def test_expansion_against_sympy_series(label, y0):
    m = get_model(label)
    t, L, S = sp.symbols("t L S")
    y0s = sp.Rational(y0.numerator, y0.denominator) if isinstance(y0, Fraction) else sp.Integer(y0)
    expr = sp.sympify(TRANSCRIBED[label]).subs("y", y0s)
    Ssub = m.s_relation * L if m.s_relation is not None else S
    expr = expr.subs({"l": sp.exp((1 + y0s) * t * L), "s": sp.exp((1 + y0s) * t * Ssub)})
    cap = 3
    series = sp.expand(sp.series(expr, t, 0, cap + 1).removeO())
    q = expand_closed_form(m, cap).eval_y(y0)
    ours = sum(
        sp.Rational(c.constant_value().numerator, c.constant_value().denominator)
        * L ** e[0] * S ** e[1] * t ** (e[0] + e[1])
        for e, c in q.terms.items()
    )
    assert sp.expand(series - ours) == 0


def test_prefix_round_trip():
    for m in LISTED:
        text = to_prefix(m.closed_form)
        assert parse_prefix(text) == m.closed_form
    assert parse_prefix("+ -2 * y l") == parse_infix("-2 + y*l")
    with pytest.raises(ValueError):
        parse_prefix("+ 1")
    with pytest.raises(ValueError):
        parse_prefix("+ 1 2 3")
    with pytest.raises(ValueError):
        parse_prefix("+ 1 w")


def test_save_load_round_trip(tmp_path):
    path = tmp_path / "models.json"
    save_models(builtin_models(), path)
    assert load_models(path) == builtin_models()
    assert dump_models(load_models(path)) == path.read_text()


def test_unknown_generator_is_reported(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([{"gauge_label": "X", "centers": [["x", "w"]]}]))
    with pytest.raises(ModelSchemaError, match=r"centers\[0\]\[1\].*'w'"):
        load_models(path)


def test_schema_errors():
    with pytest.raises(ModelSchemaError, match="line 1 column"):
        parse_models("[{")
    with pytest.raises(ModelSchemaError, match="s_relation"):
        parse_models('[{"gauge_label": "X", "centers": [], "s_relation": "2"}]')
    with pytest.raises(ModelSchemaError, match="closed_form"):
        parse_models('[{"gauge_label": "X", "centers": [], "closed_form": "+ 1"}]')
    with pytest.raises(ModelSchemaError, match="unknown field"):
        parse_models('[{"gauge_label": "X", "centers": [], "colour": 1}]')


def test_loaded_model_is_usable(tmp_path):
    from stringy_chi.pipeline import derive_QY

    path = tmp_path / "su3.json"
    path.write_text(json.dumps([{"gauge_label": "MySU3", "centers": [["x", "y", "s"], ["y", "e1"]]}]))
    (m,) = load_models(path)
    assert m.closed_form is None
    assert derive_QY(m, 3) == expand_closed_form(get_model("SU3"), 3)
