"""Command-line front end.

Subcommands::

    subdivlab analyze MASK [--order M] [--levels N]
    subdivlab subdivide MASK --level N [--deriv J] [--initial W0.json] [--window K]
    subdivlab rates MASK --u U.json [--levels N] [--tail T] [--deriv J]
    subdivlab design --support=LO,HI --r R --order M --filter F.json [--symmetry C:S,S]
    subdivlab corpus list | export ID | run ID [--params k=v,...] [--out DIR]

Exit codes: 0 success, 1 malformed input, 2 analysis failure.  Output is
deterministic: JSON is written with a fixed key order and floats rounded to
12 significant digits, CSV uses ``.`` decimals, LF line endings and 15
significant digits.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import __version__
from .convergence import error_curve, fit_rate, running_slopes
from .corpus import EXAMPLE_IDS, UnknownExampleError, load_example, raw_example
from .corpus.expr import ExpressionError
from .errors import AnalysisError
from .jets import jet_mul, jet_of
from .maskio import (MaskFormatError, dumps_mask, filter_from_document, load_json, load_mask,
                     parse_symmetry_spec, sequence_from_document)
from .masks import FilterWarning, design_mask, matching_filter_moments, sum_rule_order
from .report import AnalysisFailure, analysis_report, reproduce_example, round_float
from .scalar import GaussianRational, format_scalar
from .sequence import delta
from .smoothness import DEFAULT_LEVELS, sm_report
from .engine import limit_function_samples

__all__ = ["main", "build_parser", "format_number", "curve_csv", "dumps_json"]


def format_number(x) -> str:
    """Render an exact or float scalar with 15 significant digits."""
    if x is None:
        return ""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return format_number(x.re)
        return f"{float(x.re):.15g}{float(x.im):+.15g}i"
    if isinstance(x, complex):
        if x.imag == 0:
            return format_number(x.real)
        return f"{x.real:.15g}{x.imag:+.15g}i"
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.15g}"


def dumps_json(doc, indent: int = 0) -> str:
    """JSON with one key per line and lists free of objects kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps_json(v, indent + 1)}" for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(doc, list) and any(isinstance(x, dict) for x in doc):
        items = [pad + dumps_json(x, indent + 1) for x in doc]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(doc, separators=(", ", ": "))


def _emit_json(doc, out) -> None:
    out.write(dumps_json(doc) + "\n")


def _csv(rows: List[List[str]]) -> str:
    return "".join(",".join(r) + "\n" for r in rows)


def _filter_for(mask, v, order: int):
    """Matching filter of at least the given order: the supplied one or the computed one."""
    if v is not None:
        if v.order < order:
            raise AnalysisError(f"supplied filter has order {v.order}, {order} is needed")
        return v
    res = sum_rule_order(mask)
    if res.filter.order >= order:
        return res.filter
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FilterWarning)
        return matching_filter_moments(mask, order)


# ----------------------------------------------------------------------
# analyze


def cmd_analyze(args, out) -> int:
    mask, v = load_mask(args.mask)
    try:
        rep = analysis_report(mask, v, args.order, args.levels)
    except AnalysisFailure as exc:
        _emit_json(exc.report, out)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit_json(rep, out)
    return 0


# ----------------------------------------------------------------------
# subdivide


def cmd_subdivide(args, out) -> int:
    mask, v = load_mask(args.mask)
    j, n = args.deriv, args.level
    if j < 0 or n < 0:
        raise ValueError("--deriv and --level must be nonnegative")
    sm = sm_report(mask)
    if j > sm.bracket_floor:
        raise AnalysisError(
            f"derivative order {j} exceeds floor(sm_2) = {sm.bracket_floor}; the limit function is not "
            f"known to be C^{j}, so the rescaled iterates need not converge")
    filt = _filter_for(mask, v, j)
    if args.initial:
        w0 = sequence_from_document(load_json(args.initial), orientation="row")
        if w0.cols != mask.r:
            raise MaskFormatError(f"initial data has {w0.cols} columns, the mask has r = {mask.r}")
    else:
        w0 = delta(mask.r)
    lo, hi = mask.support
    samples = limit_function_samples(mask, filt, w0, j, n, args.window)
    scale = 1 << n
    if args.window is None:
        klo, khi = (w0.start + lo) * scale, (w0.stop + hi) * scale
    else:
        klo, khi = -args.window * scale, args.window * scale
    rows = [["x"] + [f"value_{p + 1}" for p in range(w0.rows)]]
    for k in range(klo, khi + 1):
        rows.append([format_number(Fraction(k, scale))] + [format_number(x) for x in samples.at_index(k)])
    out.write(_csv(rows))
    return 0


# ----------------------------------------------------------------------
# rates


def curve_csv(curve) -> str:
    rows = [["n", "E", "neg_log2_E", "running_slope"]]
    for n, e, y, s in zip(curve.levels, curve.errors, curve.neg_log2, running_slopes(curve)):
        rows.append([str(n), format_number(e), format_number(y), format_number(s)])
    return _csv(rows)


def _gap(filt, u, j: int, m: int) -> int:
    """``s`` with ``v^ u^ = beta (i xi)^j + O(xi^{j+s})``, capped at ``m + 1 - j``."""
    if m <= j:
        return max(m + 1 - j, 1)
    cs = jet_mul(filt.truncate(m), jet_of(u, order=m)).entry_coeffs()
    for k in range(j + 1, m + 1):
        if cs[k] != 0:
            return k - j
    return m + 1 - j


def cmd_rates(args, out) -> int:
    mask, v = load_mask(args.mask)
    u = sequence_from_document(load_json(args.u), orientation="column")
    if u.rows != mask.r or u.cols != 1:
        raise MaskFormatError(f"test vector must have {mask.r} components per position")
    sm = sm_report(mask)
    m = sm.default_order
    filt = _filter_for(mask, v, max(m, args.deriv or 0))
    curve = error_curve(mask, filt, u, args.levels, j=args.deriv, m=m)
    out.write(curve_csv(curve))
    fit = fit_rate(curve, args.tail)
    j = curve.deriv
    s = _gap(filt, u, j, m)
    lo, hi = sm.sm_inf_bracket
    nu = (min(s, lo - j), min(s, hi - j))
    slope = "inf (exact reproduction)" if fit.exact else format_number(fit.slope)
    out.write(f"# slope={slope} tail={fit.tail} j={j} beta={format_scalar(curve.beta)} s={s} "
              f"nu=[{format_number(round_float(nu[0]))},{format_number(round_float(nu[1]))}]\n")
    return 0


# ----------------------------------------------------------------------
# design


def _seq_coeff(seq, lo, hi):
    return [[[format_scalar(x) for x in row] for row in seq[k]] for k in range(lo, hi + 1)]


def cmd_design(args, out) -> int:
    try:
        lo, hi = (int(t) for t in args.support.split(","))
    except ValueError:
        raise MaskFormatError(f"--support expects LO,HI, got {args.support!r}") from None
    doc = load_json(args.filter)
    filt = filter_from_document(doc.get("filter", doc) if isinstance(doc, dict) else doc, args.r)
    sym = parse_symmetry_spec(args.symmetry) if args.symmetry else None
    fam = design_mask((lo, hi), args.r, sym, args.order, filt)
    _emit_json({
        "support": [lo, hi],
        "r": args.r,
        "order": args.order,
        "num_params": fam.num_params,
        "particular": _seq_coeff(fam.particular, lo, hi),
        "basis": [_seq_coeff(b, lo, hi) for b in fam.basis],
    }, out)
    return 0


# ----------------------------------------------------------------------
# corpus


def _parse_params(text: Optional[str]):
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"malformed parameter {item!r}: expected name=value")
        out[key.strip()] = val.strip()
    return out


def cmd_corpus(args, out) -> int:
    if args.corpus_cmd == "list":
        for eid in EXAMPLE_IDS:
            out.write(f"{eid}\t{raw_example(eid)['description']}\n")
        return 0
    case = load_example(args.id, _parse_params(getattr(args, "params", None)))
    if args.corpus_cmd == "export":
        out.write(dumps_mask(case.mask, case.filter))
        return 0
    curves = {}
    checks = reproduce_example(case, curves_out=curves)
    doc = {
        "id": case.id,
        "params": {k: format_scalar(x) for k, x in case.params.items()},
        "at_defaults": case.at_defaults,
        "checks": [c.as_dict() for c in checks],
        "passed": sum(c.passed for c in checks),
        "failed": sum(not c.passed for c in checks),
    }
    if args.out:
        dest = Path(args.out)
        dest.mkdir(parents=True, exist_ok=True)
        for name, curve in curves.items():
            (dest / f"{case.id}_{name}.csv").write_text(curve_csv(curve))
        (dest / f"{case.id}_report.json").write_text(dumps_json(doc) + "\n")
    _emit_json(doc, out)
    return 0


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subdivlab", description="Analyze and run vector subdivision schemes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="full analysis report of a mask (JSON)")
    s.add_argument("mask")
    s.add_argument("--order", type=int, default=None, help="filter/classification order (default sr - 1)")
    s.add_argument("--levels", type=int, default=DEFAULT_LEVELS, help="levels for the sm_2 estimate")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("subdivide", help="samples of a limit function derivative (CSV)")
    s.add_argument("mask")
    s.add_argument("--deriv", type=int, default=0)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--initial", help="initial data document (rows of length r); default delta I")
    s.add_argument("--window", type=int, default=None, help="restrict to |x| <= K")
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("rates", help="error curve of a test vector (CSV)")
    s.add_argument("mask")
    s.add_argument("--u", required=True, help="test vector document")
    s.add_argument("--levels", type=int, default=10)
    s.add_argument("--tail", type=int, default=5)
    s.add_argument("--deriv", type=int, default=None, help="derivative order (default: leading degree)")
    s.set_defaults(func=cmd_rates)

    s = sub.add_parser("design", help="affine family of masks with prescribed sum rules (JSON)")
    s.add_argument("--support", required=True, help="LO,HI (write --support=-2,2 for negative LO)")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--order", type=int, required=True, help="sum-rule order")
    s.add_argument("--filter", required=True, help="filter document {'entries': [...]}")
    s.add_argument("--symmetry", default=None, help="CENTER:SIGN,SIGN,... e.g. 0:1,-1")
    s.set_defaults(func=cmd_design)

    s = sub.add_parser("corpus", help="built-in examples")
    cs = s.add_subparsers(dest="corpus_cmd", required=True)
    c = cs.add_parser("list")
    c.set_defaults(func=cmd_corpus)
    for name, help_ in (("run", "reproduce the recorded expectations (JSON)"), ("export", "write the mask file")):
        c = cs.add_parser(name, help=help_)
        c.add_argument("id")
        c.add_argument("--params", default=None, help="overrides, e.g. t1=1,t2=-1")
        if name == "run":
            c.add_argument("--out", default=None, help="directory for the report and curve CSVs")
        c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MaskFormatError, ExpressionError, UnknownExampleError, ValueError, TypeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
