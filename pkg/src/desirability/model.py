"""Canonical JSON documents describing named models over shared variables.

A document declares variables and a dictionary of named sets.  Leaf kinds
hold explicit numbers (``generators``, ``cells``, ``lex``,
``strict_from_credal``); the ``expr`` kind combines previously named sets
by reference (conditioning, cylindrical extension, irrelevant extension,
independent and strong products, conditional families).

Parsing rejects every floating-point literal: numbers are integers or
rational strings such as ``"-5/7"``.  Loading canonicalises the payloads
(sorted generators, string-formatted rationals, defaults materialised),
so ``dumps`` after ``loads`` is a fixed point byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .desirable import (
    Cell,
    CellRow,
    CellSet,
    ConditionalFamily,
    DesirableSetExpr,
    GeneratorSet,
    StrongProduct,
)
from .errors import ExactnessError, ModelFormatError
from .exactlp import EQ, GE, GT
from .independence import independent_product, irrelevant_extension
from .maximal import LexSystem
from .previsions import CredalSet, strictly_desirable
from .space import Assignment, Gamble, Scope, Variable, as_rational, format_rational
from .structure import cyl_ext, condition

__all__ = [
    "ModelDocument",
    "dump",
    "dumps",
    "load",
    "loads",
    "parse_assignment",
]

_REL_NAMES = {">=": "GE", ">": "GT", "=": "EQ"}


def _rel_from_name(text: object) -> str:
    if text not in _REL_NAMES:
        raise ModelFormatError(
            "relation must be one of '>=', '>', '=' (got %r)" % (text,)
        )
    return str(text)


def _rel_to_name(rel: object) -> str:
    return {GE: ">=", GT: ">", EQ: "="}[rel]


def _rel_value(name: str) -> object:
    return {">=": GE, ">": GT, "=": EQ}[name]


@dataclass(frozen=True)
class ModelDocument:
    """Declared variables, resolved named sets, and canonical payloads."""

    variables: tuple[Variable, ...]
    sets: Mapping[str, DesirableSetExpr]
    entries: Mapping[str, object]

    def scope_of(self, ids: Sequence[str]) -> Scope:
        by_id = {v.name: v for v in self.variables}
        return Scope.of([by_id[i] for i in ids])


def parse_assignment(text: str, by_id: Mapping[str, Variable]) -> Assignment:
    """Parse ``"X1=a,X2=b"`` (or ``"()"`` for the empty assignment)."""
    text = text.strip()
    if text in ("", "()"):
        return Assignment(())
    pairs = {}
    for chunk in text.split(","):
        if "=" not in chunk:
            raise ModelFormatError(
                "assignment %r is not of the form 'X=label,...'" % text
            )
        key, _, label = chunk.partition("=")
        key = key.strip()
        label = label.strip()
        if key not in by_id:
            raise ModelFormatError("assignment names unknown variable %r" % key)
        if key in (v.name for v in pairs):
            raise ModelFormatError("assignment repeats variable %r" % key)
        var = by_id[key]
        if label not in var.outcomes:
            raise ModelFormatError(
                "variable %r has no outcome %r" % (key, label)
            )
        pairs[var] = label
    return Assignment.of(pairs)


def _reject_float(literal: str) -> Fraction:
    raise ModelFormatError(
        "non-exact numeric literal %r; use integers or rational strings "
        "like '1/3'" % literal
    )


def _need(payload: Mapping[str, object], key: str, where: str) -> object:
    if key not in payload:
        raise ModelFormatError("%s is missing the %r field" % (where, key))
    return payload[key]


def _rational(value: object, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ModelFormatError(
            "%s must be an integer or a rational string (got %r)" % (where, value)
        )
    try:
        return as_rational(value)
    except ExactnessError as exc:
        raise ModelFormatError("%s: %s" % (where, exc)) from None


def _rational_list(values: object, where: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise ModelFormatError("%s must be a list of rationals" % where)
    return tuple(
        _rational(v, "%s[%d]" % (where, k)) for k, v in enumerate(values)
    )


def _parse_variables(raw: object) -> tuple[Variable, ...]:
    if not isinstance(raw, list) or not raw:
        raise ModelFormatError("'variables' must be a nonempty list")
    seen: set[str] = set()
    out: list[Variable] = []
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ModelFormatError("variable %d must be an object" % k)
        name = _need(entry, "id", "variable %d" % k)
        outcomes = _need(entry, "outcomes", "variable %d" % k)
        if not isinstance(name, str) or not name:
            raise ModelFormatError("variable %d has a bad id %r" % (k, name))
        if name in seen:
            raise ModelFormatError("variable %r declared twice" % name)
        if (
            not isinstance(outcomes, list)
            or not outcomes
            or not all(isinstance(o, str) for o in outcomes)
        ):
            raise ModelFormatError(
                "variable %r needs a nonempty list of outcome labels" % name
            )
        seen.add(name)
        out.append(Variable(name, tuple(outcomes)))
    return tuple(out)


class _Resolver:
    def __init__(
        self, variables: tuple[Variable, ...], raw_sets: Mapping[str, object]
    ) -> None:
        self.by_id = {v.name: v for v in variables}
        self.raw = raw_sets
        self.done: dict[str, DesirableSetExpr] = {}
        self.entries: dict[str, object] = {}
        self.visiting: list[str] = []

    # -- scopes and references ------------------------------------------

    def scope(self, raw: object, where: str) -> Scope:
        if (
            not isinstance(raw, list)
            or not raw
            or not all(isinstance(i, str) for i in raw)
        ):
            raise ModelFormatError("%s: scope must be a list of variable ids" % where)
        missing = [i for i in raw if i not in self.by_id]
        if missing:
            raise ModelFormatError(
                "%s: unknown variable id %r" % (where, missing[0])
            )
        if len(set(raw)) != len(raw):
            raise ModelFormatError("%s: scope repeats a variable" % where)
        return Scope.of([self.by_id[i] for i in raw])

    def ref(self, name: object, where: str) -> DesirableSetExpr:
        if not isinstance(name, str):
            raise ModelFormatError("%s: set reference must be a string" % where)
        return self.resolve(name)

    def resolve(self, name: str) -> DesirableSetExpr:
        if name in self.done:
            return self.done[name]
        if name in self.visiting:
            raise ModelFormatError(
                "cyclic reference: %s" % " -> ".join(self.visiting + [name])
            )
        if name not in self.raw:
            raise ModelFormatError("reference to undeclared set %r" % name)
        payload = self.raw[name]
        if not isinstance(payload, dict):
            raise ModelFormatError("set %r must be an object" % name)
        self.visiting.append(name)
        try:
            expr, canonical = self.build(name, payload)
        finally:
            self.visiting.pop()
        self.done[name] = expr
        self.entries[name] = canonical
        return expr

    # -- kinds ------------------------------------------------------------

    def build(
        self, name: str, payload: Mapping[str, object]
    ) -> tuple[DesirableSetExpr, object]:
        kind = _need(payload, "kind", "set %r" % name)
        where = "set %r" % name
        if kind == "generators":
            return self.build_generators(payload, where)
        if kind == "cells":
            return self.build_cells(payload, where)
        if kind == "lex":
            return self.build_lex(payload, where)
        if kind == "strict_from_credal":
            return self.build_strict(payload, where)
        if kind == "expr":
            return self.build_expr(payload, where)
        raise ModelFormatError("%s has unknown kind %r" % (where, kind))

    def build_generators(
        self, payload: Mapping[str, object], where: str
    ) -> tuple[DesirableSetExpr, object]:
        scope = self.scope(_need(payload, "scope", where), where)
        raw_rows = _need(payload, "rows", where)
        if not isinstance(raw_rows, list):
            raise ModelFormatError("%s: 'rows' must be a list" % where)
        gambles = [
            Gamble.on(scope, _rational_list(row, "%s rows[%d]" % (where, k)))
            for k, row in enumerate(raw_rows)
        ]
        built = GeneratorSet.of(scope, gambles)
        canonical = {
            "kind": "generators",
            "scope": list(scope.names),
            "rows": [
                [format_rational(v) for v in g.values] for g in built.generators
            ],
        }
        return built, canonical

    def build_cells(
        self, payload: Mapping[str, object], where: str
    ) -> tuple[DesirableSetExpr, object]:
        scope = self.scope(_need(payload, "scope", where), where)
        include_positive = payload.get("include_positive", False)
        if not isinstance(include_positive, bool):
            raise ModelFormatError("%s: 'include_positive' must be a boolean" % where)
        raw_cells = _need(payload, "cells", where)
        if not isinstance(raw_cells, list):
            raise ModelFormatError("%s: 'cells' must be a list" % where)
        cells = []
        for k, raw_cell in enumerate(raw_cells):
            cwhere = "%s cells[%d]" % (where, k)
            if not isinstance(raw_cell, dict):
                raise ModelFormatError("%s must be an object" % cwhere)
            exclude_zero = raw_cell.get("exclude_zero", False)
            if not isinstance(exclude_zero, bool):
                raise ModelFormatError("%s: 'exclude_zero' must be a boolean" % cwhere)
            raw_rows = _need(raw_cell, "rows", cwhere)
            if not isinstance(raw_rows, list):
                raise ModelFormatError("%s: 'rows' must be a list" % cwhere)
            rows = []
            for j, raw_row in enumerate(raw_rows):
                rwhere = "%s rows[%d]" % (cwhere, j)
                if not isinstance(raw_row, dict):
                    raise ModelFormatError("%s must be an object" % rwhere)
                functional = Gamble.on(
                    scope,
                    _rational_list(_need(raw_row, "functional", rwhere), rwhere),
                )
                rel = _rel_from_name(_need(raw_row, "rel", rwhere))
                rows.append(CellRow(functional, _rel_value(rel)))
            cells.append(Cell(tuple(rows), exclude_zero=exclude_zero))
        built = CellSet(scope, tuple(cells), include_positive=include_positive)
        canonical = {
            "kind": "cells",
            "scope": list(scope.names),
            "include_positive": include_positive,
            "cells": [
                {
                    "exclude_zero": cell.exclude_zero,
                    "rows": [
                        {
                            "functional": [
                                format_rational(v) for v in row.functional.values
                            ],
                            "rel": _rel_to_name(row.rel),
                        }
                        for row in cell.rows
                    ],
                }
                for cell in built.cells
            ],
        }
        return built, canonical

    def build_lex(
        self, payload: Mapping[str, object], where: str
    ) -> tuple[DesirableSetExpr, object]:
        scope = self.scope(_need(payload, "scope", where), where)
        raw_levels = _need(payload, "levels", where)
        if not isinstance(raw_levels, list) or not raw_levels:
            raise ModelFormatError("%s: 'levels' must be a nonempty list" % where)
        levels = tuple(
            _rational_list(level, "%s levels[%d]" % (where, k))
            for k, level in enumerate(raw_levels)
        )
        built = LexSystem(scope, levels)
        canonical = {
            "kind": "lex",
            "scope": list(scope.names),
            "levels": [[format_rational(v) for v in level] for level in built.levels],
        }
        return built, canonical

    def build_strict(
        self, payload: Mapping[str, object], where: str
    ) -> tuple[DesirableSetExpr, object]:
        scope = self.scope(_need(payload, "scope", where), where)
        raw_vertices = _need(payload, "vertices", where)
        if not isinstance(raw_vertices, list) or not raw_vertices:
            raise ModelFormatError("%s: 'vertices' must be a nonempty list" % where)
        vertices = tuple(
            _rational_list(v, "%s vertices[%d]" % (where, k))
            for k, v in enumerate(raw_vertices)
        )
        credal = CredalSet.of(scope, vertices)
        built = strictly_desirable(credal)
        canonical = {
            "kind": "strict_from_credal",
            "scope": list(scope.names),
            "vertices": [
                [format_rational(v) for v in vertex] for vertex in credal.vertices
            ],
        }
        return built, canonical

    # -- composite expressions ---------------------------------------------

    def build_expr(
        self, payload: Mapping[str, object], where: str
    ) -> tuple[DesirableSetExpr, object]:
        op = _need(payload, "op", where)
        if op == "condition":
            base = self.ref(_need(payload, "of", where), where)
            raw_given = _need(payload, "given", where)
            if not isinstance(raw_given, dict):
                raise ModelFormatError(
                    "%s: 'given' must map variable ids to outcome labels" % where
                )
            given = parse_assignment(
                ",".join("%s=%s" % (k, v) for k, v in raw_given.items()), self.by_id
            )
            built = condition(base, given)
            canonical = {
                "kind": "expr",
                "op": "condition",
                "of": payload["of"],
                "given": {v.name: label for v, label in given.items},
            }
            return built, canonical
        if op == "cyl_ext":
            base = self.ref(_need(payload, "of", where), where)
            target = self.scope(_need(payload, "target", where), where)
            built = cyl_ext(base, target)
            canonical = {
                "kind": "expr",
                "op": "cyl_ext",
                "of": payload["of"],
                "target": list(target.names),
            }
            return built, canonical
        if op == "irr_ext":
            base = self.ref(_need(payload, "of", where), where)
            irrelevant = self.scope(_need(payload, "irrelevant", where), where)
            target = self.scope(_need(payload, "target", where), where)
            built = irrelevant_extension(base, irrelevant, target)
            canonical = {
                "kind": "expr",
                "op": "irr_ext",
                "of": payload["of"],
                "irrelevant": list(irrelevant.names),
                "target": list(target.names),
            }
            return built, canonical
        if op in ("inex", "strong"):
            raw_parts = _need(payload, "of", where)
            if not isinstance(raw_parts, list) or not raw_parts:
                raise ModelFormatError(
                    "%s: 'of' must be a nonempty list of set names" % where
                )
            parts = tuple(self.ref(p, where) for p in raw_parts)
            built = (
                independent_product(parts)
                if op == "inex"
                else StrongProduct(parts)
            )
            canonical = {
                "kind": "expr",
                "op": op,
                "of": list(raw_parts),
            }
            return built, canonical
        if op == "conditional_family":
            on = self.scope(_need(payload, "on", where), where)
            raw_table = _need(payload, "table", where)
            if not isinstance(raw_table, dict) or not raw_table:
                raise ModelFormatError(
                    "%s: 'table' must map assignments to set names" % where
                )
            entries = []
            canon_table: dict[str, object] = {}
            for key, ref_name in raw_table.items():
                at = parse_assignment(key, self.by_id)
                if str(at) in canon_table:
                    raise ModelFormatError(
                        "%s: table repeats the assignment %s" % (where, at)
                    )
                canon_table[str(at)] = ref_name
                entries.append((at, self.ref(ref_name, where)))
            entries.sort(key=lambda pair: str(pair[0]))
            built = ConditionalFamily(on, tuple(entries))
            canonical = {
                "kind": "expr",
                "op": "conditional_family",
                "on": list(on.names),
                "table": canon_table,
            }
            return built, canonical
        raise ModelFormatError("%s has unknown op %r" % (where, op))


def loads(text: str) -> ModelDocument:
    """Parse and resolve a document, canonicalising every payload."""
    try:
        raw = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ModelFormatError("invalid JSON: %s" % exc) from None
    if not isinstance(raw, dict):
        raise ModelFormatError("the document root must be an object")
    variables = _parse_variables(_need(raw, "variables", "document"))
    raw_sets = _need(raw, "sets", "document")
    if not isinstance(raw_sets, dict):
        raise ModelFormatError("'sets' must be an object of named sets")
    for name in raw_sets:
        if not isinstance(name, str) or not name:
            raise ModelFormatError("set names must be nonempty strings")
    resolver = _Resolver(variables, raw_sets)
    for name in raw_sets:
        resolver.resolve(name)
    sets = {name: resolver.done[name] for name in raw_sets}
    entries = {name: resolver.entries[name] for name in raw_sets}
    return ModelDocument(variables, sets, entries)


def load(path: str) -> ModelDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())


def dumps(doc: ModelDocument) -> str:
    """Canonical serialisation: sorted keys, rationals as strings."""
    payload = {
        "variables": [
            {"id": v.name, "outcomes": list(v.outcomes)} for v in doc.variables
        ],
        "sets": {name: doc.entries[name] for name in doc.entries},
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def dump(doc: ModelDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(doc))
