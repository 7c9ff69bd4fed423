"""The Weierstrass models: resolution data and closed forms of their pushed-forward classes.

Each model records the ordered list of blowup centers (generator names such as
``x``, ``y``, ``s``, ``e1``), an optional relation S = kL, and the closed form
of its pushforward factor as a rational expression in

    l = exp((1+y) L),   s = exp((1+y) S).

Closed forms are stored as small expression trees.  On disk they are written in
prefix (Polish) notation with binary operators ``+ - * / ^`` and leaves that are
integers or the symbols ``y``, ``l``, ``s``.
"""

from __future__ import annotations

import ast
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

from .coeff import ONE, YPoly, YRational
from .graded import GradedPoly, GradedRing, exp_series, invert, substitute

__all__ = [
    "Num",
    "Sym",
    "BinOp",
    "Expr",
    "parse_infix",
    "parse_prefix",
    "to_prefix",
    "evaluate",
    "WeierstrassModel",
    "ModelSchemaError",
    "GENERATOR_NAMES",
    "builtin_models",
    "get_model",
    "base_ring",
    "expand_closed_form",
    "closed_form_at_identity",
    "denominators_at_identity",
    "load_models",
    "save_models",
    "dump_models",
    "parse_models",
]


# ---------------------------------------------------------------------------
# expression trees


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Sym, BinOp]

SYMBOLS = ("y", "l", "s")
OPERATORS = ("+", "-", "*", "/", "^")

_AST_OPS = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*", ast.Div: "/", ast.Pow: "^"}


def parse_infix(text: str) -> Expr:
    """Parse a Python-syntax arithmetic string (``**`` for powers)."""

    def conv(node) -> Expr:
        if isinstance(node, ast.Expression):
            return conv(node.body)
        if isinstance(node, ast.BinOp) and type(node.op) in _AST_OPS:
            return BinOp(_AST_OPS[type(node.op)], conv(node.left), conv(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            inner = conv(node.operand)
            if isinstance(inner, Num):
                return Num(-inner.value)
            return BinOp("*", Num(-1), inner)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return Num(node.value)
        if isinstance(node, ast.Name) and node.id in SYMBOLS:
            return Sym(node.id)
        raise ValueError(f"unsupported syntax in closed form: {ast.dump(node)}")

    return conv(ast.parse(text, mode="eval"))


_INT = re.compile(r"-?\d+\Z")


def parse_prefix(text: str) -> Expr:
    tokens = text.split()
    pos = 0

    def take() -> Expr:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("prefix expression ended early")
        tok = tokens[pos]
        pos += 1
        if tok in OPERATORS:
            left = take()
            right = take()
            return BinOp(tok, left, right)
        if tok in SYMBOLS:
            return Sym(tok)
        if _INT.match(tok):
            return Num(int(tok))
        raise ValueError(f"unknown token {tok!r} in prefix expression")

    expr = take()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in prefix expression: {' '.join(tokens[pos:])}")
    return expr


def to_prefix(expr: Expr) -> str:
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, Sym):
        return expr.name
    return f"{expr.op} {to_prefix(expr.left)} {to_prefix(expr.right)}"


def evaluate(expr: Expr, leaf: Callable, const: Callable, divide: Callable):
    """Fold the tree; ``leaf(name)``, ``const(int)`` and ``divide(a, b)`` supply the algebra."""
    if isinstance(expr, Num):
        return const(expr.value)
    if isinstance(expr, Sym):
        return leaf(expr.name)
    if expr.op == "^":
        if not isinstance(expr.right, Num) or expr.right.value < 0:
            raise ValueError("exponents must be non-negative integer constants")
        return evaluate(expr.left, leaf, const, divide) ** expr.right.value
    a = evaluate(expr.left, leaf, const, divide)
    b = evaluate(expr.right, leaf, const, divide)
    if expr.op == "+":
        return a + b
    if expr.op == "-":
        return a - b
    if expr.op == "*":
        return a * b
    return divide(a, b)


def _yrational_leaf(name):
    return YRational.y() if name == "y" else ONE


def closed_form_at_identity(expr: Expr) -> YRational:
    """Value at l = s = 1, i.e. the degree-zero part of the expansion."""
    return evaluate(expr, _yrational_leaf, YRational.coerce, lambda a, b: a / b)


def denominators_at_identity(expr: Expr) -> list[YRational]:
    """Every divisor subexpression evaluated at l = s = 1."""
    out = []

    def walk(e):
        if isinstance(e, BinOp):
            if e.op == "/":
                out.append(closed_form_at_identity(e.right))
            walk(e.left)
            walk(e.right)

    walk(expr)
    return out


# ---------------------------------------------------------------------------
# models


GENERATOR_NAMES = frozenset({"x", "y", "z", "s"} | {f"e{i}" for i in range(1, 8)})


class ModelSchemaError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    gauge_label: str
    centers: tuple[tuple[str, ...], ...]
    s_relation: Optional[int] = None
    closed_form: Optional[Expr] = None

    def __post_init__(self):
        object.__setattr__(self, "centers", tuple(tuple(c) for c in self.centers))

    @property
    def n_blowups(self) -> int:
        return len(self.centers)

    @property
    def derived_closed_form(self) -> bool:
        """True when the closed form comes from the resolution pipeline instead of a transcription."""
        return self.closed_form is None


_SU2 = "1 - 2*y + (y+1)/(y+s) * (y + s*l*((y+1)*(s*y - l**4) - y*(s-1)*l**2) / (l**6 + s**2*y))"
_SU3 = "1 - 3*y + (y+1)/(y+s) * (2*y + s*l*((y+1)*(s**2*y - l**4) - y*(s-1)*l*(l**2 + s)) / (l**6 + s**3*y))"
_SU4 = (
    "1 - 4*y + (y+1)/(y+s) * (3*y + s*l*((y+1)*(s**5*y**2 - l**8) - y*(s-1)*l*(s+l)*(l**5 + s**3*y))"
    " / ((l**6 + s**4*y)*(l**4 + s**2*y)))"
)
_SU5 = (
    "1 - 6*y + (y+1)/(y+s) * (5*y + (y*(s-1)*(l**7 + s**5*y)"
    " + s*l*(y+1)*(s**4*y**2 - l**5 - s*l*y*(l-1)*(l**2 + s*l + s**2))) / ((l+y)*(l**6 + s**5*y)))"
)
_SO3 = "1 - 2*y + (y+1)*((1+l)*y - l**3)/(l**4 + y)"
_SO5 = "1 - 3*y + (y+1)*((2-l)*y - l)/(l**2 + y) + 2*y*l*(y+1)**2/(l**2 + y)**2"
_SO6 = "1 - 5*y + (y+1)*((4+l)*y - l)/(l**2 + y)"
_F4 = "1 - 5*y + (y+1)/(y+s) * (4*y + s*l*((y+1)*(s**3*y - l**4) - 2*y*(s-1)*l**2*s) / (l**6 + s**4*y))"
_E6 = (
    "1 - 8*y + (y+1)/(y+s) * (7*y + (y*(s-1)*(l**9 + s**7*y) + s*l*(y+1)*(s**3*y - l**4)*(l**3 + s**3*y))"
    " / ((l**3 + s**2*y)*(l**6 + s**5*y)))"
)
_E7 = (
    "1 - 9*y + (y+1)/(y+s) * (8*y + (y*(s-1)*(l**10 + s**8*y) + s*l*(y+1)*(s**7*y**2 - l**8))"
    " / ((l**4 + s**3*y)*(l**6 + s**5*y)))"
)
_E8 = "1 - 11*y + (y+1)/(y+s) * (10*y + (y*(s-1)*(l**6 + s**5) + s*l*(y+1)*(s**4*y - l**4)) / (l**6 + s**5*y))"

_C_SU3 = (("x", "y", "s"), ("y", "e1"))
_C_SU4 = (("x", "y", "s"), ("y", "e1"), ("x", "e2"))

_BUILTIN = (
    ("SU2", (("x", "y", "s"),), None, _SU2),
    ("SU3", _C_SU3, None, _SU3),
    ("SU4", _C_SU4, None, _SU4),
    ("SU5", (("x", "y", "s"), ("x", "y", "e1"), ("y", "e1"), ("y", "e2")), None, _SU5),
    ("USp4", _C_SU3, None, _SU3),
    ("SO3", (("x", "y"),), 4, _SO3),
    ("SO5", (("x", "y", "s"), ("x", "y", "e1")), 2, _SO5),
    ("SO6", _C_SU4, 2, _SO6),
    ("Spin7", _C_SU4, None, _SU4),
    ("G2", _C_SU3, None, _SU3),
    ("F4", _C_SU4 + (("e2", "e3"),), None, _F4),
    ("E6", _C_SU4 + (("e2", "e3"), ("y", "e3"), ("y", "e4")), None, _E6),
    ("E7", _C_SU4 + (("y", "e3"), ("e2", "e3"), ("e2", "e4"), ("e4", "e5")), None, _E7),
    (
        "E8",
        _C_SU4 + (("y", "e3"), ("e2", "e3"), ("e4", "e5"), ("e2", "e4", "e6"), ("e4", "e7")),
        None,
        _E8,
    ),
    ("SMOOTH", (), None, None),
)


def builtin_models() -> list[WeierstrassModel]:
    return [
        WeierstrassModel(label, centers, rel, parse_infix(text) if text else None)
        for label, centers, rel, text in _BUILTIN
    ]


def get_model(label: str, models=None) -> WeierstrassModel:
    models = builtin_models() if models is None else models
    for m in models:
        if m.gauge_label.lower() == label.lower():
            return m
    raise KeyError(f"unknown model {label!r}; known: {', '.join(m.gauge_label for m in models)}")


# ---------------------------------------------------------------------------
# expansion


def base_ring(n_chern: int = 0) -> GradedRing:
    return GradedRing.standard(("L", "S"), n_chern)


def expand_closed_form(m: WeierstrassModel, cap: int, ring: GradedRing | None = None) -> GradedPoly:
    """Expand the closed form with l = exp((1+y)L), s = exp((1+y)S), through degree ``cap``."""
    ring = ring or base_ring()
    if m.closed_form is None:
        from .pipeline import derive_QY

        return derive_QY(m, cap).embed(ring)
    one_plus_y = YRational(YPoly((1, 1)))
    leaves = {
        "y": ring.const(YRational.y(), cap),
        "l": exp_series(ring.var("L", cap).scale(one_plus_y)),
        "s": exp_series(ring.var("S", cap).scale(one_plus_y)),
    }

    def divide(a, b):
        if not b.constant_term():
            raise ZeroDivisionError(
                f"{m.gauge_label}: denominator with zero constant term (transcription error?)"
            )
        return a * invert(b)

    out = evaluate(m.closed_form, leaves.__getitem__, lambda v: ring.const(v, cap), divide)
    if m.s_relation is not None:
        out = substitute(out, {"S": ring.var("L", cap).scale(m.s_relation)})
    return out


# ---------------------------------------------------------------------------
# model files


def _record(m: WeierstrassModel) -> dict:
    rec = {"gauge_label": m.gauge_label, "centers": [list(c) for c in m.centers]}
    if m.s_relation is not None:
        rec["s_relation"] = m.s_relation
    if m.closed_form is not None:
        rec["closed_form"] = to_prefix(m.closed_form)
    return rec


def dump_models(models) -> str:
    return json.dumps([_record(m) for m in models], indent=2) + "\n"


def save_models(models, path) -> None:
    Path(path).write_text(dump_models(models))


_FIELDS = {"gauge_label", "centers", "s_relation", "closed_form"}


def parse_models(text: str, source: str = "<string>") -> list[WeierstrassModel]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSchemaError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise ModelSchemaError(f"{source}: top level must be a list of model records")
    models = []
    for i, rec in enumerate(data):
        where = f"{source}: record {i}"
        if not isinstance(rec, dict):
            raise ModelSchemaError(f"{where}: expected an object")
        extra = set(rec) - _FIELDS
        if extra:
            raise ModelSchemaError(f"{where}: unknown field(s) {sorted(extra)}")
        label = rec.get("gauge_label")
        if not isinstance(label, str) or not label:
            raise ModelSchemaError(f"{where}: field 'gauge_label' must be a non-empty string")
        where = f"{source}: record {i} ({label})"
        centers = rec.get("centers")
        if not isinstance(centers, list):
            raise ModelSchemaError(f"{where}: field 'centers' must be a list of lists")
        for j, c in enumerate(centers):
            if not isinstance(c, list) or not c:
                raise ModelSchemaError(f"{where}: field 'centers[{j}]' must be a non-empty list")
            for k, g in enumerate(c):
                if g not in GENERATOR_NAMES:
                    raise ModelSchemaError(f"{where}: field 'centers[{j}][{k}]': unknown generator {g!r}")
        rel = rec.get("s_relation")
        if rel is not None and (type(rel) is not int):
            raise ModelSchemaError(f"{where}: field 's_relation' must be an integer")
        cf = rec.get("closed_form")
        expr = None
        if cf is not None:
            if not isinstance(cf, str):
                raise ModelSchemaError(f"{where}: field 'closed_form' must be a prefix expression string")
            try:
                expr = parse_prefix(cf)
            except ValueError as exc:
                raise ModelSchemaError(f"{where}: field 'closed_form': {exc}") from None
        models.append(WeierstrassModel(label, centers, rel, expr))
    return models


def load_models(path) -> list[WeierstrassModel]:
    path = Path(path)
    return parse_models(path.read_text(), str(path))
