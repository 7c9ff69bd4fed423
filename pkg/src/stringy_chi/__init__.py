"""Stringy chi_y genera of resolved Weierstrass models via pushforward formulas."""

from .catalog import (
    WeierstrassModel,
    base_ring,
    builtin_models,
    expand_closed_form,
    get_model,
    load_models,
    save_models,
)
from .charseries import base_hirzebruch_class, hirzebruch_Q, power_sum_series
from .coeff import YPoly, YRational
from .graded import CharSeries, GradedPoly, GradedRing
from .pipeline import (
    chi_stringy_euler,
    chi_y,
    derive_QY,
    hodge_relations,
    resolve,
    verify_model,
)
from .pushforward import BlowupCenter, blowdown, projective_pushforward

__version__ = "0.1.0"

__all__ = [
    "WeierstrassModel",
    "base_ring",
    "builtin_models",
    "expand_closed_form",
    "get_model",
    "load_models",
    "save_models",
    "base_hirzebruch_class",
    "hirzebruch_Q",
    "power_sum_series",
    "YPoly",
    "YRational",
    "CharSeries",
    "GradedPoly",
    "GradedRing",
    "chi_stringy_euler",
    "chi_y",
    "derive_QY",
    "hodge_relations",
    "resolve",
    "verify_model",
    "BlowupCenter",
    "blowdown",
    "projective_pushforward",
    "__version__",
]
