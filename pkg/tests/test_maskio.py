import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from subdivlab.corpus import EXAMPLE_IDS, load_example
from subdivlab.masks import Mask, Symmetry
from subdivlab.maskio import (MaskFormatError, dumps_mask, loads_mask, parse_symmetry_spec,
                              sequence_from_document, sequence_to_document)

from conftest import sequences


@pytest.mark.parametrize("eid", EXAMPLE_IDS)
def test_canonical_round_trip(eid):
    case = load_example(eid)
    text = dumps_mask(case.mask, case.filter)
    mask, v = loads_mask(text)
    assert mask == case.mask and v == case.filter
    assert dumps_mask(mask, v) == text
    assert text.endswith("}\n") and "\r" not in text


@given(sequences(rows=2, cols=2, complex_entries=True))
def test_round_trip_random_masks(seq):
    if seq.is_zero():
        return
    text = dumps_mask(Mask(seq))
    assert dumps_mask(*loads_mask(text)) == text


@pytest.mark.parametrize("doc, msg", [
    ({"r": 1, "support": [0, 0]}, "missing field"),
    ({"r": 1, "support": [0, 1], "coeff": [[["1"]]]}, "coeff must list 2"),
    ({"r": 1, "support": [0, 0], "coeff": [[[0.5]]]}, "scalars must be strings"),
    ({"r": 1, "support": [0, 0], "coeff": [[["1/2x"]]]}, "malformed"),
    ({"r": 1, "support": [0, 0], "coeff": [[["0"]]]}, "identically zero"),
    ({"r": 1, "support": [0, 0], "coeff": [[["1"]]], "extra": 1}, "unknown fields"),
    ({"r": 2, "support": [0, 0], "coeff": [[["1"]]]}, "2x2"),
    ({"r": 1, "support": [0, 1], "coeff": [[["1"]], [["2"]]], "symmetry": {"center": "1/2", "signs": [1]}},
     "symmetry"),
])
def test_rejects_malformed(doc, msg):
    with pytest.raises(MaskFormatError, match=msg):
        loads_mask(json.dumps(doc))


def test_invalid_json():
    with pytest.raises(MaskFormatError, match="invalid JSON"):
        loads_mask("{")


@given(sequences(cols=1, complex_entries=True))
def test_sequence_document_round_trip(seq):
    if seq.is_zero():
        return
    assert sequence_from_document(sequence_to_document(seq)) == seq


def test_row_orientation():
    seq = sequence_from_document({"start": 1, "values": [["1", "2/3"]]}, orientation="row")
    assert seq.shape == (1, 2) and seq.start == 1


def test_symmetry_spec():
    assert parse_symmetry_spec("1/2:1,-1") == Symmetry(Fraction(1, 2), (1, -1))
    with pytest.raises(MaskFormatError):
        parse_symmetry_spec("0")
