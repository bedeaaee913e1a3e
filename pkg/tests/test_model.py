"""Canonical JSON model documents: loading, validation, round-trips."""

import json
from pathlib import Path

import pytest

from desirability import (
    CellSet,
    Conditioned,
    GeneratorSet,
    LexSystem,
    ModelFormatError,
    Tri,
    dumps,
    load,
    loads,
    member,
)
from desirability.model import parse_assignment

DEMO = str(Path(__file__).resolve().parent.parent / "models" / "demo.json")


def minimal(sets_payload):
    return json.dumps(
        {
            "variables": [
                {"id": "X1", "outcomes": ["a", "b"]},
                {"id": "X2", "outcomes": ["a", "b"]},
            ],
            "sets": sets_payload,
        }
    )


LEAN_PAYLOAD = {"lean": {"kind": "generators", "scope": ["X1"], "rows": [["1", "-1"]]}}


class TestLoading:
    def test_demo_document_loads_with_expected_kinds(self):
        doc = load(DEMO)
        assert isinstance(doc.sets["coin-lean"], GeneratorSet)
        assert isinstance(doc.sets["fair-window"], LexSystem)
        assert isinstance(doc.sets["two-vertex"], CellSet)
        assert isinstance(doc.sets["updated"], Conditioned)

    def test_loaded_sets_answer_queries(self):
        doc = load(DEMO)
        two_vertex = doc.sets["two-vertex"]
        from desirability import Gamble, scope_of

        g = Gamble.on(scope_of(two_vertex), [2, -1, 0, 0])
        assert member(two_vertex, g) is Tri.OUT

    def test_rational_strings_parse(self):
        doc = loads(minimal(LEAN_PAYLOAD))
        gens = doc.sets["lean"]
        assert isinstance(gens, GeneratorSet)

    def test_round_trip_is_idempotent(self):
        with open(DEMO, "r", encoding="utf-8") as handle:
            text = handle.read()
        once = dumps(loads(text))
        reloaded = loads(once)
        assert dumps(reloaded) == once
        assert set(reloaded.sets) == set(loads(text).sets)
        assert [v.name for v in reloaded.variables] == ["X1", "X2"]


class TestRejection:
    def test_floats_rejected(self):
        bad = minimal(
            {"lean": {"kind": "generators", "scope": ["X1"], "rows": [[0.5, -1]]}}
        )
        with pytest.raises(ModelFormatError):
            loads(bad)

    def test_float_strings_rejected(self):
        bad = minimal(
            {"lean": {"kind": "generators", "scope": ["X1"], "rows": [["0.5", "-1"]]}}
        )
        with pytest.raises(ModelFormatError):
            loads(bad)

    def test_missing_reference_rejected(self):
        bad = minimal(
            {
                "ext": {
                    "kind": "expr",
                    "op": "cyl_ext",
                    "base": "ghost",
                    "scope": ["X1", "X2"],
                }
            }
        )
        with pytest.raises(ModelFormatError):
            loads(bad)

    def test_cycles_rejected(self):
        bad = minimal(
            {
                "a": {"kind": "expr", "op": "cyl_ext", "of": "b", "target": ["X1", "X2"]},
                "b": {"kind": "expr", "op": "cyl_ext", "of": "a", "target": ["X1", "X2"]},
            }
        )
        with pytest.raises(ModelFormatError, match="cyclic"):
            loads(bad)

    def test_unknown_kind_rejected(self):
        bad = minimal({"odd": {"kind": "mystery", "scope": ["X1"]}})
        with pytest.raises(ModelFormatError):
            loads(bad)

    def test_duplicate_variable_rejected(self):
        bad = json.dumps(
            {
                "variables": [
                    {"id": "X1", "outcomes": ["a", "b"]},
                    {"id": "X1", "outcomes": ["a", "c"]},
                ],
                "sets": {},
            }
        )
        with pytest.raises(ModelFormatError):
            loads(bad)

    def test_malformed_json_rejected(self):
        with pytest.raises(ModelFormatError):
            loads("{not json")


class TestAssignments:
    def test_parse_pairs_and_empty(self):
        doc = load(DEMO)
        by_id = {v.name: v for v in doc.variables}
        at = parse_assignment("X1=a,X2=b", by_id)
        assert str(at) == "X1=a,X2=b"
        assert parse_assignment("()", by_id).items == ()

    def test_unknown_variable_rejected(self):
        doc = load(DEMO)
        by_id = {v.name: v for v in doc.variables}
        with pytest.raises(ModelFormatError):
            parse_assignment("X9=a", by_id)
