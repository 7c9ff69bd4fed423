"""Command-line front end.

    stringy-chi list
    stringy-chi qy --model SO6 --degree 1 --source catalog
    stringy-chi chi --model SO6 --dim 3 --calabi-yau --at-y -1
    stringy-chi hodge --model SU2 --h11-base 2 --h12 10
    stringy-chi verify --max-degree 6

Exit codes: 0 success, 1 verification failure, 2 usage error.  The default
output format comes from $STRINGY_CHI_OUTPUT (``text`` or ``json``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .catalog import ModelSchemaError, builtin_models, expand_closed_form, get_model, load_models
from .graded import GradedPoly
from .pipeline import chi_y, derive_QY, hodge_relations, verify_model

OUTPUT_ENV = "STRINGY_CHI_OUTPUT"
MAX_DEGREE = 8

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _format_default() -> str:
    fmt = os.environ.get(OUTPUT_ENV, "text").strip().lower()
    return fmt if fmt in ("text", "json") else "text"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--models-file", help="JSON model list to use instead of the builtin catalog")
    common.add_argument(
        "--output", choices=("text", "json"), default=None, help=f"output format (default ${OUTPUT_ENV} or text)"
    )

    p = argparse.ArgumentParser(prog="stringy-chi", description="Stringy chi_y genera of Weierstrass models")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", parents=[common], help="list catalog models")

    q = sub.add_parser("qy", parents=[common], help="expansion of Q_Y(L, S)")
    q.add_argument("--model", required=True)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--source", choices=("pipeline", "catalog"), default="pipeline")
    q.add_argument("--through", action="store_true", help="print all degrees up to --degree")
    q.add_argument("--engine", choices=("auto", "exact", "modular"), default="auto")

    c = sub.add_parser("chi", parents=[common], help="chi_y coefficient for a base of given dimension")
    c.add_argument("--model", required=True)
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--calabi-yau", action="store_true", help="set L = c1")
    c.add_argument("--at-y", default=None, help="rational value for y (e.g. -1), or 'y' for symbolic")

    h = sub.add_parser("hodge", parents=[common], help="Hodge relations of a Calabi-Yau fourfold")
    h.add_argument("--model", required=True)
    h.add_argument("--h11-base", type=int, default=None)
    h.add_argument("--h12", type=int, default=None)

    v = sub.add_parser("verify", parents=[common], help="compare pipeline against listed closed forms")
    v.add_argument("--max-degree", type=int, default=6)
    v.add_argument("--model", default=None)
    v.add_argument("--engine", choices=("auto", "exact", "modular"), default="auto")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


# ---------------------------------------------------------------------------
# output


def emit(doc: dict, lines: list[str], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(dump_json(doc))
    else:
        for line in lines:
            out.write(line + "\n")


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _doc(command: str, model=None, dim=None, flags=None, terms=None, **extra) -> dict:
    doc = {
        "command": command,
        "model": model,
        "dim": dim,
        "flags": flags or {},
        "terms": terms if terms is not None else [],
    }
    doc.update(extra)
    doc["version"] = __version__
    return doc


def _terms(p: GradedPoly) -> list[dict]:
    return p.to_json_terms()


# ---------------------------------------------------------------------------
# commands


def _models(args):
    if args.models_file:
        return load_models(args.models_file)
    return builtin_models()


def _model(args):
    try:
        return get_model(args.model, _models(args))
    except KeyError:
        raise UsageError(f"unknown model {args.model!r}") from None


def cmd_list(args, fmt):
    models = _models(args)
    rows, recs = [], []
    width = max(len(m.gauge_label) for m in models) if models else 5
    rows.append(f"{'model':<{width}}  blowups  S-relation  closed form")
    for m in models:
        rel = f"S={m.s_relation}L" if m.s_relation is not None else "-"
        src = "derived" if m.closed_form is None else "listed"
        rows.append(f"{m.gauge_label:<{width}}  {m.n_blowups:>7}  {rel:<10}  {src}")
        recs.append(
            {
                "gauge_label": m.gauge_label,
                "n_blowups": m.n_blowups,
                "s_relation": m.s_relation,
                "closed_form": src,
            }
        )
    emit(_doc("list", models=recs), rows, fmt)
    return EXIT_OK


def cmd_qy(args, fmt):
    m = _model(args)
    d = args.degree
    if not 0 <= d <= MAX_DEGREE:
        raise UsageError(f"--degree must be between 0 and {MAX_DEGREE}")
    if args.source == "catalog":
        if m.closed_form is None:
            raise UsageError(f"{m.gauge_label} has no listed closed form; use --source pipeline")
        q = expand_closed_form(m, d)
    else:
        q = derive_QY(m, d, engine=args.engine)
    if not args.through:
        q = q.homogeneous(d)
    flags = {"degree": d, "source": args.source, "through": args.through}
    emit(_doc("qy", m.gauge_label, None, flags, _terms(q)), [str(q)], fmt)
    return EXIT_OK


def _parse_y(text):
    if text is None or text.strip() == "y":
        return None
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--at-y expects a rational number or 'y', got {text!r}") from None


def cmd_chi(args, fmt):
    m = _model(args)
    if args.dim < 1:
        raise UsageError("--dim must be at least 1")
    if args.dim > MAX_DEGREE:
        raise UsageError(f"--dim must be at most {MAX_DEGREE}")
    y0 = _parse_y(args.at_y)
    p = chi_y(m, args.dim, calabi_yau=args.calabi_yau).chi_poly
    if y0 is not None:
        p = p.eval_y(y0)
    flags = {"calabi_yau": args.calabi_yau, "at_y": None if y0 is None else str(y0)}
    emit(_doc("chi", m.gauge_label, args.dim, flags, _terms(p)), [str(p)], fmt)
    return EXIT_OK


def cmd_hodge(args, fmt):
    m = _model(args)
    if args.h12 is not None and args.h11_base is None:
        raise UsageError("--h12 needs --h11-base")
    rep = hodge_relations(m, 3, h11_base=args.h11_base, h12=args.h12)
    chi_terms = {str(p): _terms(v) for p, v in sorted(rep.chi.items())}
    flags = {"calabi_yau": True, "c1c2": 24, "h11_base": args.h11_base, "h12": args.h12}
    doc = _doc("hodge", m.gauge_label, 3, flags, [], chi=chi_terms, relations=rep.lines())
    emit(doc, rep.lines(), fmt)
    return EXIT_OK


def _verify_one(task):
    m, cap, engine = task
    return verify_model(m, cap, engine=engine)


def cmd_verify(args, fmt):
    if not 0 <= args.max_degree <= MAX_DEGREE:
        raise UsageError(f"--max-degree must be between 0 and {MAX_DEGREE}")
    models = [_model(args)] if args.model else _models(args)
    models = [m for m in models if m.closed_form is not None]
    if not models:
        raise UsageError("no model with a listed closed form to verify")
    tasks = [(m, args.max_degree, args.engine) for m in models]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, tasks))
    else:
        reports = [_verify_one(t) for t in tasks]
    passed = sum(r.equal for r in reports)
    lines = [str(r) for r in reports] + [f"{passed}/{len(reports)} pass"]
    recs = [
        {"model": r.model, "equal": r.equal, "first_mismatch": r.first_mismatch} for r in reports
    ]
    flags = {"max_degree": args.max_degree}
    emit(_doc("verify", args.model, None, flags, [], results=recs, passed=passed), lines, fmt)
    return EXIT_OK if passed == len(reports) else EXIT_FAIL


COMMANDS = {"list": cmd_list, "qy": cmd_qy, "chi": cmd_chi, "hodge": cmd_hodge, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = args.output or _format_default()
    try:
        return COMMANDS[args.command](args, fmt)
    except (UsageError, ModelSchemaError, OSError) as exc:
        print(f"stringy-chi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
