"""Machine-readable worked examples: parametric masks, filter jets, spline
closed forms, transition spectra, test vectors and reference error curves.

Each example is a JSON resource in ``corpus/data`` using the mask-file schema
(``r``, ``support``, ``coeff``, ``symmetry``) with coefficient strings that may
mention the example's parameters, plus metadata blocks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Optional

from ..jets import FilterJet
from ..masks import Mask, Symmetry
from ..scalar import format_scalar, to_exact
from ..sequence import MatrixSequence, vector_sequence
from .expr import ExpressionError, Poly, evaluate

__all__ = ["EXAMPLE_IDS", "ExampleCase", "SplineOracle", "TestVector", "load_example", "raw_example",
           "spline_eval", "Poly", "evaluate", "ExpressionError"]

EXAMPLE_IDS = ("ex1", "ex2a1", "ex2a2", "ex3", "ex4")


class UnknownExampleError(KeyError):
    pass


def raw_example(example_id: str) -> dict:
    """The JSON document of an example, unparsed."""
    if example_id not in EXAMPLE_IDS:
        raise UnknownExampleError(f"unknown example {example_id!r}; known: {', '.join(EXAMPLE_IDS)}")
    text = resources.files(__package__).joinpath("data", f"{example_id}.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class SplineOracle:
    """Piecewise-polynomial closed form of a refinable vector function.

    ``pieces`` is a list of ``(lo, hi, polys)`` with ``polys`` one
    :class:`Poly` per component, valid on ``[lo, hi)``.
    """

    pieces: tuple
    derivatives: tuple = (0,)

    @property
    def support(self):
        return self.pieces[0][0], self.pieces[-1][1]

    def __call__(self, x, j: int = 0):
        return spline_eval(self, x, j)


def spline_eval(oracle: SplineOracle, x, j: int = 0):
    """Exact ``phi^(j)(x)`` from the closed form.

    At a knot the piece starting there is used (right limit); outside the
    support the value is the zero vector.
    """
    if j not in oracle.derivatives and j > max(oracle.derivatives):
        raise ValueError(f"derivative order {j} not supported by this oracle")
    x = to_exact(x)
    r = len(oracle.pieces[0][2])
    for lo, hi, polys in oracle.pieces:
        if lo <= x < hi:
            return [p.derivative(j)(x) for p in polys]
    return [Fraction(0)] * r


@dataclass(frozen=True)
class TestVector:
    """A test sequence with its recorded moment identity.

    ``identity = (d, order)`` records ``v^ u^ = (i xi)^d + O(xi^order)``.
    """

    name: str
    seq: MatrixSequence
    degree: int
    order: int


@dataclass
class ExampleCase:
    """A corpus example with parameters substituted."""

    id: str
    description: str
    params: Dict[str, Fraction]
    mask: Mask
    filter: Optional[FilterJet]
    expected: dict
    test_vectors: Dict[str, TestVector] = field(default_factory=dict)
    figures: List[dict] = field(default_factory=list)
    rates: dict = field(default_factory=dict)
    spline: Optional[SplineOracle] = None
    design_filter: Optional[FilterJet] = None
    at_defaults: bool = True

    def applies(self, at: dict) -> bool:
        """Whether the parameter assignment ``at`` matches this case."""
        return all(self.params.get(k) == to_exact(v) for k, v in at.items())

    def expected_sr(self):
        for item in self.expected.get("sr_at", []):
            if self.applies(item["at"]):
                return item["sr"]
        return self.expected.get("sr") if self.at_defaults or "sr_at" not in self.expected else None

    def figure_curves(self):
        """``{name: [float]}`` of reference ``-log2 E`` values valid at these parameters."""
        out = {}
        for fig in self.figures:
            at = fig.get("at") or self._defaults
            if self.applies(at):
                for name, vals in fig["curves"].items():
                    out[name] = [float(v) for v in vals]
        return out

    def expected_slopes(self):
        if not self.rates:
            return {}
        at = self.rates.get("at") or self._defaults
        return dict(self.rates["slopes"]) if self.applies(at) else {}

    _defaults: dict = field(default_factory=dict, repr=False)


def _parse_params(doc, overrides):
    params = {k: to_exact(v) for k, v in doc["defaults"].items()}
    for k, v in (overrides or {}).items():
        if k not in doc["params"]:
            raise ValueError(f"example {doc['id']} has no parameter {k!r}")
        if isinstance(v, float):
            raise TypeError("parameters must be exact (use 'p/q' strings)")
        params[k] = to_exact(v)
    for k in doc.get("nonzero", []):
        if params[k] == 0:
            raise ValueError(f"parameter {k} must be nonzero for example {doc['id']}")
    return params


def _matches(when, params):
    return all(params[k] == to_exact(v) for k, v in when.items())


def _filter_from_entries(entries, env):
    return FilterJet.from_entries([[evaluate(c, env) for c in entry] for entry in entries])


def build_mask(doc, env) -> Mask:
    """Substitute parameters into a mask document."""
    mats = [[[evaluate(c, env) for c in row] for row in mat] for mat in doc["coeff"]]
    seq = MatrixSequence.from_matrices(mats, doc["support"][0])
    sym = None
    if doc.get("symmetry"):
        sym = Symmetry(to_exact(doc["symmetry"]["center"]), tuple(doc["symmetry"]["signs"]))
    return Mask(seq, sym)


def _spline(doc, env):
    spec = doc.get("spline")
    if not spec:
        return None
    pieces = []
    for piece in spec["pieces"]:
        lo, hi = (to_exact(v) for v in piece["interval"])
        pieces.append((lo, hi, tuple(evaluate(c, env, poly=True) for c in piece["components"])))
    if spec.get("mirror"):
        mirrored = [(-hi, -lo, tuple(p.compose_neg() for p in polys)) for lo, hi, polys in pieces]
        pieces = mirrored + pieces
    pieces.sort(key=lambda t: t[0])
    return SplineOracle(tuple(pieces), tuple(spec.get("derivatives", [0])))


def load_example(example_id: str, overrides=None) -> ExampleCase:
    """Load an example with optional parameter overrides.

    Parameters
    ----------
    example_id : str
        One of :data:`EXAMPLE_IDS`.
    overrides : dict, optional
        ``{name: exact value}``; strings such as ``"-7/256"`` are accepted.
    """
    doc = raw_example(example_id)
    params = _parse_params(doc, overrides)
    defaults = {k: to_exact(v) for k, v in doc["defaults"].items()}
    mask = build_mask(doc, params)
    filt = None
    best = -1
    for item in doc.get("filters", []):
        if _matches(item["when"], params) and len(item["when"]) > best:
            best = len(item["when"])
            filt = _filter_from_entries(item["entries"], params)
    design_filter = None
    if doc.get("design_filter"):
        design_filter = _filter_from_entries(doc["design_filter"]["entries"], params)
    tvs = {}
    for name, tv in doc.get("test_vectors", {}).items():
        seq = vector_sequence([[to_exact(x) for x in vec] for vec in tv["values"]], tv["start"])
        tvs[name] = TestVector(name, seq, tv["identity"]["degree"], tv["identity"]["order"])
    case = ExampleCase(
        id=doc["id"],
        description=doc["description"],
        params=params,
        mask=mask,
        filter=filt,
        expected=doc["expected"],
        test_vectors=tvs,
        figures=doc.get("figures", []),
        rates=doc.get("rates", {}),
        spline=_spline(doc, params),
        design_filter=design_filter,
        at_defaults=(params == defaults),
    )
    case._defaults = {k: format_scalar(v) for k, v in defaults.items()}
    return case


def mask_document(mask: Mask) -> dict:
    """Serialize a concrete mask with the mask-file schema."""
    from ..maskio import mask_to_document

    return mask_to_document(mask)
