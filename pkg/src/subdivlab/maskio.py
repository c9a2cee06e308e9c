"""Reading and writing mask files and small sequence documents.

Mask files are JSON objects::

    {
      "r": 2,
      "support": [-1, 1],
      "coeff": [
        [["1/8", "0"], ["0", "1/8"]],
        ...
      ],
      "symmetry": {"center": "0", "signs": [1, 1]},
      "filter": {"entries": [["1", "0", "-1/6"], ["1", "0", "1/12"]]}
    }

Scalars are strings such as ``"3/4"`` or ``"1/2-1/3i"`` (plain JSON integers
are accepted on input, floats are rejected).  ``symmetry`` and ``filter`` are
optional; the filter block lists the Taylor coefficients in ``xi`` of each
filter entry.  :func:`dumps_mask` writes the canonical layout shown above,
and ``dumps_mask(*loads_mask(text)) == text`` for canonical input.

Sequence documents (test vectors, initial data) are
``{"start": k, "values": [[...], ...]}`` with one length-``r`` list per
position, or ``{"start": k, "coeff": [matrix, ...]}`` for general matrices.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from .jets import FilterJet
from .masks import Mask, Symmetry
from .scalar import format_scalar, to_exact
from .sequence import MatrixSequence

__all__ = ["MaskFormatError", "mask_to_document", "mask_from_document", "dumps_mask", "loads_mask",
           "load_mask", "filter_to_document", "filter_from_document", "sequence_from_document",
           "sequence_to_document", "load_json", "parse_symmetry_spec"]


class MaskFormatError(ValueError):
    """Malformed mask, filter or sequence document."""


def _scalar(x, where):
    if isinstance(x, bool) or isinstance(x, float):
        raise MaskFormatError(f"{where}: scalars must be strings like '3/4' or integers, got {x!r}")
    try:
        return to_exact(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MaskFormatError(f"{where}: {exc}") from None


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise MaskFormatError(f"{where}: expected an integer, got {x!r}")
    return x


def filter_to_document(v: FilterJet) -> dict:
    return {"entries": [[format_scalar(c) for c in v.entry_coeffs(0, q)] for q in range(v.r)]}


def filter_from_document(doc, r: Optional[int] = None) -> FilterJet:
    if not isinstance(doc, dict) or "entries" not in doc:
        raise MaskFormatError("filter block must be an object with 'entries'")
    entries = doc["entries"]
    if not isinstance(entries, list) or not entries or not all(isinstance(e, list) and e for e in entries):
        raise MaskFormatError("filter entries must be non-empty coefficient lists")
    if r is not None and len(entries) != r:
        raise MaskFormatError(f"filter has {len(entries)} entries but r = {r}")
    vals = [[_scalar(c, f"filter entry {q}") for c in e] for q, e in enumerate(entries)]
    return FilterJet.from_entries(vals)


def mask_to_document(mask: Mask, v: Optional[FilterJet] = None) -> dict:
    lo, hi = mask.support
    r = mask.r
    doc = {
        "r": r,
        "support": [lo, hi],
        "coeff": [[[format_scalar(x) for x in row] for row in mask[k]] for k in range(lo, hi + 1)],
    }
    if mask.symmetry is not None:
        doc["symmetry"] = {"center": format_scalar(mask.symmetry.center),
                           "signs": list(mask.symmetry.signs)}
    if v is not None:
        doc["filter"] = filter_to_document(v)
    return doc


def mask_from_document(doc) -> Tuple[Mask, Optional[FilterJet]]:
    """Validate and convert a parsed mask document."""
    if not isinstance(doc, dict):
        raise MaskFormatError("mask document must be a JSON object")
    unknown = set(doc) - {"r", "support", "coeff", "symmetry", "filter"}
    if unknown:
        raise MaskFormatError(f"unknown fields: {', '.join(sorted(unknown))}")
    for key in ("r", "support", "coeff"):
        if key not in doc:
            raise MaskFormatError(f"missing field {key!r}")
    r = _int(doc["r"], "r")
    if r < 1:
        raise MaskFormatError("r must be positive")
    sup = doc["support"]
    if not isinstance(sup, list) or len(sup) != 2:
        raise MaskFormatError("support must be [lo, hi]")
    lo, hi = _int(sup[0], "support"), _int(sup[1], "support")
    if hi < lo:
        raise MaskFormatError("support must satisfy lo <= hi")
    coeff = doc["coeff"]
    if not isinstance(coeff, list) or len(coeff) != hi - lo + 1:
        raise MaskFormatError(f"coeff must list {hi - lo + 1} matrices for support [{lo}, {hi}]")
    mats = []
    for i, mat in enumerate(coeff):
        if not isinstance(mat, list) or len(mat) != r or not all(isinstance(row, list) and len(row) == r
                                                                 for row in mat):
            raise MaskFormatError(f"coeff[{i}] must be an {r}x{r} array")
        mats.append([[_scalar(x, f"coeff[{i}]") for x in row] for row in mat])
    seq = MatrixSequence.from_matrices(mats, lo)
    if seq.is_zero():
        raise MaskFormatError("mask is identically zero")
    sym = None
    if doc.get("symmetry") is not None:
        s = doc["symmetry"]
        if not isinstance(s, dict) or set(s) != {"center", "signs"}:
            raise MaskFormatError("symmetry must be {'center': 'c', 'signs': [...]}")
        try:
            sym = Symmetry(_scalar(s["center"], "symmetry center"), tuple(s["signs"]))
        except (ValueError, TypeError) as exc:
            raise MaskFormatError(f"symmetry: {exc}") from None
    try:
        mask = Mask(seq, sym)
    except ValueError as exc:
        raise MaskFormatError(str(exc)) from None
    v = filter_from_document(doc["filter"], r) if doc.get("filter") is not None else None
    return mask, v


def _dump_compact(x) -> str:
    return json.dumps(x, separators=(", ", ": "))


def dumps_mask(mask: Mask, v: Optional[FilterJet] = None) -> str:
    """Canonical text of a mask file (ends with a newline)."""
    doc = mask_to_document(mask, v)
    lines = ["{", f'  "r": {doc["r"]},', f'  "support": {_dump_compact(doc["support"])},', '  "coeff": [']
    for i, mat in enumerate(doc["coeff"]):
        sep = "," if i + 1 < len(doc["coeff"]) else ""
        lines.append(f"    {_dump_compact(mat)}{sep}")
    tail = [k for k in ("symmetry", "filter") if k in doc]
    lines.append("  ]" + ("," if tail else ""))
    for i, key in enumerate(tail):
        sep = "," if i + 1 < len(tail) else ""
        lines.append(f'  "{key}": {_dump_compact(doc[key])}{sep}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MaskFormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaskFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def loads_mask(text: str) -> Tuple[Mask, Optional[FilterJet]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaskFormatError(f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return mask_from_document(doc)


def load_mask(path) -> Tuple[Mask, Optional[FilterJet]]:
    return mask_from_document(load_json(path))


def sequence_from_document(doc, orientation: str = "column") -> MatrixSequence:
    """Parse a sequence document.

    ``values`` lists become ``r x 1`` columns (``orientation="column"``) or
    ``1 x r`` rows (``"row"``); ``coeff`` gives full matrices.
    """
    if not isinstance(doc, dict) or "start" not in doc or ("values" in doc) == ("coeff" in doc):
        raise MaskFormatError("sequence document needs 'start' and exactly one of 'values'/'coeff'")
    start = _int(doc["start"], "start")
    if "values" in doc:
        vals = doc["values"]
        if not isinstance(vals, list) or not vals or not all(isinstance(v, list) and v for v in vals):
            raise MaskFormatError("'values' must be a non-empty list of lists")
        width = len(vals[0])
        if any(len(v) != width for v in vals):
            raise MaskFormatError("all 'values' entries must have the same length")
        ex = [[_scalar(x, f"values[{i}]") for x in v] for i, v in enumerate(vals)]
        if orientation == "column":
            mats = [[[x] for x in v] for v in ex]
        elif orientation == "row":
            mats = [[v] for v in ex]
        else:
            raise ValueError("orientation must be 'column' or 'row'")
    else:
        mats = doc["coeff"]
        if not isinstance(mats, list) or not mats:
            raise MaskFormatError("'coeff' must be a non-empty list of matrices")
        mats = [[[_scalar(x, f"coeff[{i}]") for x in row] for row in m] for i, m in enumerate(mats)]
    try:
        return MatrixSequence.from_matrices(mats, start)
    except ValueError as exc:
        raise MaskFormatError(str(exc)) from None


def sequence_to_document(seq: MatrixSequence) -> dict:
    lo, hi = seq.support
    if seq.cols == 1:
        return {"start": lo, "values": [[format_scalar(row[0]) for row in seq[k]] for k in range(lo, hi + 1)]}
    return {"start": lo, "coeff": [[[format_scalar(x) for x in row] for row in seq[k]]
                                   for k in range(lo, hi + 1)]}


def parse_symmetry_spec(text: str) -> Symmetry:
    """Parse ``"CENTER:SIGN,SIGN,..."``, e.g. ``"0:1,-1"`` or ``"1/2:1,1"``."""
    try:
        center, signs = text.split(":", 1)
        return Symmetry(Fraction(center.strip()), tuple(int(s) for s in signs.split(",")))
    except (ValueError, ZeroDivisionError) as exc:
        raise MaskFormatError(f"malformed symmetry {text!r}: expected CENTER:SIGN,SIGN,...") from exc
