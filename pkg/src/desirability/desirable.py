"""Set-of-desirable-gambles representations and their decision procedures.

A belief model here is a cone of gambles the agent strictly prefers to the
status quo.  Three leaf representations are supported:

* ``GeneratorSet`` — a finite assessment; it denotes the smallest coherent
  superset: every gamble that dominates some nonnegative combination of the
  generators (plus all positive gambles).
* ``CellSet`` — a finite union of relatively open polyhedral cones given by
  linear sign constraints, optionally together with all positive gambles.
* ``LexSystem`` (see the ``maximal`` module) — ordered mass functions with
  lexicographic-positivity membership.

Expression nodes (``Conditioned``, ``CylExt``, ``IrrExt``, ``IndepProduct``,
``StrongProduct``, ``Intersection``, ``ConditionalFamily``) compose leaves.
``member`` decides membership for every node exactly, except for strong
products, whose boundary queries are honestly three-valued.

The central reductions:

* generator membership: ``f`` belongs iff ``f != 0`` and some ``lam >= 0``
  has ``sum(lam_k * g_k) <= f`` pointwise — the positive part of the
  combination is absorbed by the residual ``f - sum(lam_k * g_k) >= 0``.
* consistency: no convex combination of the generators may be everywhere
  nonpositive; the dual witness is a strictly positive mass function giving
  every generator positive expectation, which doubles as a one-dot-product
  rejection filter for membership queries.
* cylindrical/irrelevant extensions over a coherent base: ``f`` belongs iff
  ``f != 0`` and, for every assignment of the extra (and irrelevant)
  variables, the pointwise floor over the remaining added variables is
  either nonnegative or a member of the base.  Dominating some base member
  is the same as being one, because coherent sets absorb nonnegative slack.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    IncoherentBaseError,
    MissingConditionError,
    ScopeError,
    UnsupportedQueryError,
    WitnessVerificationError,
)
from .exactlp import EQ, GE, GT, Feasible, LinRow, LinSystem, solve, strict_feasible
from .maximal import LexSystem, lex_member
from .space import Assignment, Gamble, Scope, indicator

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Tri(Enum):
    """Three-valued membership verdict.

    ``UNKNOWN`` arises only from strong-product boundary queries; every
    other node answers exactly.  Truthiness is disabled on purpose: compare
    against ``Tri.IN`` / ``Tri.OUT`` explicitly.
    """

    IN = "in"
    OUT = "out"
    UNKNOWN = "unknown"

    @staticmethod
    def of(flag: bool) -> "Tri":
        return Tri.IN if flag else Tri.OUT

    def __bool__(self) -> bool:
        raise TypeError("Tri verdicts must be compared explicitly")


# ---------------------------------------------------------------------------
# generator sets and the natural-extension decision procedure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSet:
    """A finite assessment denoting its smallest coherent superset."""

    scope: Scope
    generators: tuple[Gamble, ...]

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.scope != self.scope:
                raise ScopeError(
                    "generator scope %r does not match %r"
                    % (g.scope.names, self.scope.names)
                )
            if g.is_zero():
                raise ValueError("the zero gamble cannot be a generator")

    @staticmethod
    def of(scope: Scope, gambles: Iterable[Gamble]) -> "GeneratorSet":
        """Embed into ``scope``, drop exact duplicates, sort canonically."""
        seen: set[tuple[Fraction, ...]] = set()
        gens: list[Gamble] = []
        for g in gambles:
            lifted = g.embed(scope)
            if lifted.values not in seen:
                seen.add(lifted.values)
                gens.append(lifted)
        gens.sort(key=lambda g: g.values)
        return GeneratorSet(scope, tuple(gens))


@dataclass(frozen=True)
class ConsistencyCertificate:
    """Outcome of the consistency check for an assessment.

    Exactly one of the two witnesses is present: a strictly positive mass
    function giving every generator positive expectation (consistent), or
    the convex weights of an everywhere-nonpositive combination (not).
    """

    avoids: bool
    positive_mass: Optional[tuple[Fraction, ...]]
    nonpositive_combination: Optional[tuple[Fraction, ...]]


@lru_cache(maxsize=None)
def avoids_nonpositivity(assessment: GeneratorSet) -> ConsistencyCertificate:
    """Can no convex combination of the generators be everywhere <= 0?"""
    gens = assessment.generators
    size = assessment.scope.size
    if not gens:
        uniform = tuple(Fraction(1, size) for _ in range(size))
        return ConsistencyCertificate(True, uniform, None)

    weight_names = ["w%d" % k for k in range(len(gens))]
    rows = [
        LinRow(tuple(_ONE if j == k else _ZERO for j in range(len(gens))), GE, _ZERO)
        for k in range(len(gens))
    ]
    rows.append(LinRow(tuple(_ONE for _ in gens), EQ, _ONE))
    for w in range(size):
        rows.append(
            LinRow(tuple(-g.values[w] for g in gens), GE, _ZERO)
        )
    outcome = solve(LinSystem(tuple(weight_names), tuple(rows)))
    if isinstance(outcome, Feasible):
        return ConsistencyCertificate(False, None, outcome.witness)

    mass_names = ["p%d" % w for w in range(size)]
    strict_rows = [
        LinRow(tuple(_ONE if j == w else _ZERO for j in range(size)), GT, _ZERO)
        for w in range(size)
    ]
    for g in gens:
        strict_rows.append(LinRow(g.values, GT, _ZERO))
    strict = strict_feasible(LinSystem(tuple(mass_names), tuple(strict_rows)))
    if not isinstance(strict, Feasible):
        raise WitnessVerificationError(
            "consistency check and its dual both failed; engine bug"
        )
    total = sum(strict.witness, _ZERO)
    mass = tuple(v / total for v in strict.witness)
    return ConsistencyCertificate(True, mass, None)


def natext_member(assessment: GeneratorSet, f: Gamble) -> bool:
    """Does ``f`` dominate a nonnegative combination of the generators?

    Decides membership in the smallest coherent set containing the
    assessment.  Raises ``IncoherentBaseError`` when the assessment fails
    the consistency check (the extension would be everything).
    """
    f = _fit(f, assessment.scope)
    certificate = avoids_nonpositivity(assessment)
    if not certificate.avoids:
        raise IncoherentBaseError(
            "assessment admits a nonpositive combination %r"
            % (certificate.nonpositive_combination,)
        )
    if f.is_zero():
        return False
    if f.is_positive():
        return True
    if f.is_nonpositive():
        return False
    # Every member has strictly positive expectation under the certificate.
    if f.dot(certificate.positive_mass) <= 0:
        return False
    gens = assessment.generators
    if not gens:
        return False
    names = ["w%d" % k for k in range(len(gens))]
    rows = [
        LinRow(tuple(_ONE if j == k else _ZERO for j in range(len(gens))), GE, _ZERO)
        for k in range(len(gens))
    ]
    for w in range(assessment.scope.size):
        rows.append(
            LinRow(tuple(-g.values[w] for g in gens), GE, -f.values[w])
        )
    outcome = solve(LinSystem(tuple(names), tuple(rows)))
    return isinstance(outcome, Feasible)


# ---------------------------------------------------------------------------
# cell sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CellRow:
    """One linear sign constraint: <functional, f> rel 0."""

    functional: Gamble
    rel: str

    def __post_init__(self) -> None:
        if self.rel not in (GE, GT, EQ):
            raise ValueError("unknown relation %r" % (self.rel,))

    def holds(self, f: Gamble) -> bool:
        value = f.dot(self.functional.values)
        if self.rel == GE:
            return value >= 0
        if self.rel == GT:
            return value > 0
        return value == 0


@dataclass(frozen=True)
class Cell:
    """A relatively open polyhedral cone piece."""

    rows: tuple[CellRow, ...]
    exclude_zero: bool = False

    def accepts(self, f: Gamble) -> bool:
        if self.exclude_zero and f.is_zero():
            return False
        return all(row.holds(f) for row in self.rows)

    def accepts_zero(self) -> bool:
        return not self.exclude_zero and all(row.rel != GT for row in self.rows)


@dataclass(frozen=True)
class CellSet:
    """A finite union of cells, optionally together with all positives.

    ``from_credal`` carries provenance when the set was built as the
    strictly desirable set of a credal set: the raw vertex mass functions.
    That unlocks structural coherence verdicts and credal views.
    """

    scope: Scope
    cells: tuple[Cell, ...]
    include_positive: bool = False
    from_credal: Optional[tuple[tuple[Fraction, ...], ...]] = None

    def __post_init__(self) -> None:
        for cell in self.cells:
            for row in cell.rows:
                if row.functional.scope != self.scope:
                    raise ScopeError(
                        "cell functional scope %r does not match %r"
                        % (row.functional.scope.names, self.scope.names)
                    )


def _cellset_member(cs: CellSet, f: Gamble) -> bool:
    if cs.include_positive and f.is_positive():
        return True
    return any(cell.accepts(f) for cell in cs.cells)


# ---------------------------------------------------------------------------
# expression nodes
# ---------------------------------------------------------------------------

DesirableSetExpr = Union[
    GeneratorSet,
    CellSet,
    LexSystem,
    "Conditioned",
    "CylExt",
    "IrrExt",
    "IndepProduct",
    "StrongProduct",
    "Intersection",
    "ConditionalFamily",
]


@dataclass(frozen=True)
class Conditioned:
    """The updated model after observing an assignment.

    Membership is rewritten, never materialised: ``g`` belongs iff the
    base accepts ``indicator(given) * g``.
    """

    base: DesirableSetExpr
    given: Assignment

    def __post_init__(self) -> None:
        base_scope = scope_of(self.base)
        if not self.given.scope.issubset(base_scope):
            raise ScopeError(
                "conditioning event %s is outside scope %r"
                % (self.given, base_scope.names)
            )
        if not self.given.items:
            raise ValueError("conditioning on the empty assignment is a no-op")


@dataclass(frozen=True)
class CylExt:
    """Most conservative extension of a base model to a larger scope."""

    base: DesirableSetExpr
    target: Scope

    def __post_init__(self) -> None:
        if not scope_of(self.base).issubset(self.target):
            raise ScopeError("extension target must contain the base scope")


@dataclass(frozen=True)
class IrrExt:
    """Smallest joint making some variables irrelevant to the base's.

    Denotes the natural extension of the family of gambles whose every
    slice along the irrelevant variables lies in the base model (or is 0),
    cylindrically extended to the target scope.
    """

    base: DesirableSetExpr
    irrelevant: Scope
    target: Scope

    def __post_init__(self) -> None:
        base_scope = scope_of(self.base)
        if not base_scope.isdisjoint(self.irrelevant):
            raise ScopeError("irrelevant variables overlap the base scope")
        if not base_scope.union(self.irrelevant).issubset(self.target):
            raise ScopeError("extension target must contain base and irrelevant scopes")


@dataclass(frozen=True)
class IndepProduct:
    """Independent natural extension of marginal models on disjoint scopes."""

    parts: tuple[DesirableSetExpr, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a product needs at least one marginal")
        _check_disjoint(self.parts)


@dataclass(frozen=True)
class StrongProduct:
    """Strong product of marginal models on disjoint scopes.

    Decided through credal views; boundary queries may be ``UNKNOWN``
    unless every marginal is a lexicographic system.
    """

    parts: tuple[DesirableSetExpr, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a product needs at least one marginal")
        _check_disjoint(self.parts)


@dataclass(frozen=True)
class Intersection:
    """Pointwise conjunction of models sharing one scope."""

    parts: tuple[DesirableSetExpr, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("an intersection needs at least one part")
        first = scope_of(self.parts[0])
        for part in self.parts[1:]:
            if scope_of(part) != first:
                raise ScopeError("intersection parts must share one scope")


@dataclass(frozen=True)
class ConditionalFamily:
    """A table of updated models, one per assignment of some variables."""

    on: Scope
    entries: tuple[tuple[Assignment, DesirableSetExpr], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("a conditional family needs at least one entry")
        shared = scope_of(self.entries[0][1])
        for at, expr in self.entries:
            if at.scope != self.on:
                raise ScopeError(
                    "table key %s is not an assignment of %r" % (at, self.on.names)
                )
            if scope_of(expr) != shared:
                raise ScopeError("conditional family entries must share one scope")

    def at(self, given: Assignment) -> DesirableSetExpr:
        for key, expr in self.entries:
            if key == given:
                return expr
        raise MissingConditionError(
            "no table entry for %s" % (given,)
        )


def _check_disjoint(parts: Sequence[DesirableSetExpr]) -> None:
    seen = Scope.empty()
    for part in parts:
        s = scope_of(part)
        if not seen.isdisjoint(s):
            raise ScopeError("product marginals must have pairwise disjoint scopes")
        seen = seen.union(s)


def scope_of(expr: DesirableSetExpr) -> Scope:
    """The variable scope an expression's members live on."""
    if isinstance(expr, (GeneratorSet, CellSet, LexSystem)):
        return expr.scope
    if isinstance(expr, Conditioned):
        return scope_of(expr.base).difference(expr.given.scope)
    if isinstance(expr, (CylExt, IrrExt)):
        return expr.target
    if isinstance(expr, (IndepProduct, StrongProduct)):
        out = Scope.empty()
        for part in expr.parts:
            out = out.union(scope_of(part))
        return out
    if isinstance(expr, Intersection):
        return scope_of(expr.parts[0])
    if isinstance(expr, ConditionalFamily):
        return scope_of(expr.entries[0][1])
    raise TypeError("not a desirable-set expression: %r" % (expr,))


def _fit(f: Gamble, scope: Scope) -> Gamble:
    if f.scope == scope:
        return f
    if f.scope.issubset(scope):
        return f.embed(scope)
    raise ScopeError(
        "gamble scope %r does not fit expression scope %r"
        % (f.scope.names, scope.names)
    )


# ---------------------------------------------------------------------------
# membership dispatcher
# ---------------------------------------------------------------------------


def member(expr: DesirableSetExpr, f: Gamble) -> Tri:
    """Exact membership verdict of ``f`` in the denoted set.

    Gambles on a subscope are identified with their cylindrical extension.
    ``UNKNOWN`` can only arise from strong-product boundaries.
    """
    f = _fit(f, scope_of(expr))
    if isinstance(expr, GeneratorSet):
        return Tri.of(natext_member(expr, f))
    if isinstance(expr, CellSet):
        return Tri.of(_cellset_member(expr, f))
    if isinstance(expr, LexSystem):
        return Tri.of(lex_member(expr, f))
    if isinstance(expr, Conditioned):
        lifted = indicator(expr.given) * f
        return member(expr.base, lifted.embed(scope_of(expr.base)))
    if isinstance(expr, CylExt):
        if f.is_zero():
            return Tri.OUT
        floor = f.floor_onto(scope_of(expr.base))
        if floor.is_nonnegative():
            return Tri.IN
        return member(expr.base, floor)
    if isinstance(expr, IrrExt):
        return _irrext_member(expr, f)
    if isinstance(expr, IndepProduct):
        from .independence import inex_member

        return inex_member(expr, f)
    if isinstance(expr, StrongProduct):
        from .previsions import strong_member

        return strong_member(expr, f)
    if isinstance(expr, Intersection):
        verdicts = [member(part, f) for part in expr.parts]
        if any(v is Tri.OUT for v in verdicts):
            return Tri.OUT
        if all(v is Tri.IN for v in verdicts):
            return Tri.IN
        return Tri.UNKNOWN
    if isinstance(expr, ConditionalFamily):
        raise UnsupportedQueryError(
            "conditional families answer only conditioned queries; "
            "condition on an assignment of %r first" % (expr.on.names,)
        )
    raise TypeError("not a desirable-set expression: %r" % (expr,))


def _irrext_member(expr: IrrExt, f: Gamble) -> Tri:
    """Slice decomposition of irrelevant-extension membership.

    ``f`` belongs iff it is nonzero and, for every assignment of the
    irrelevant variables, the floor of ``f`` over the remaining added
    variables, sliced at that assignment, is nonnegative or a base member.
    The per-slice choices are independent because a dominating gamble can
    be assembled slice by slice.
    """
    if f.is_zero():
        return Tri.OUT
    base_scope = scope_of(expr.base)
    floor = f.floor_onto(expr.irrelevant.union(base_scope))
    unknown = False
    for at in expr.irrelevant.assignments():
        piece = floor.slice_at(at)
        if piece.is_nonnegative():
            continue
        verdict = member(expr.base, piece)
        if verdict is Tri.OUT:
            return Tri.OUT
        if verdict is Tri.UNKNOWN:
            unknown = True
    return Tri.UNKNOWN if unknown else Tri.IN


def strictly_prefers(expr: DesirableSetExpr, f: Gamble, g: Gamble) -> Tri:
    """Is exchanging ``g`` for ``f`` strictly desirable, i.e. f - g in E?"""
    if f.scope != g.scope:
        raise ScopeError("compared gambles must share a scope")
    return member(expr, f - g)


# ---------------------------------------------------------------------------
# coherence audit for cell sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditFinding:
    """One axiom's verdict: how it was decided and why it holds or fails."""

    axiom: str
    passed: bool
    mode: str  # "exact" | "structural" | "sampled"
    detail: str
    counterexample: Optional[Gamble] = None


@dataclass(frozen=True)
class CoherenceReport:
    excludes_zero: AuditFinding
    accepts_positives: AuditFinding
    posi_closed: AuditFinding

    @property
    def findings(self) -> tuple[AuditFinding, AuditFinding, AuditFinding]:
        return (self.excludes_zero, self.accepts_positives, self.posi_closed)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.findings)


def _negated_rows(cell: Cell) -> list[list[CellRow]]:
    """Branches whose union is the complement of the cell (within f != 0)."""
    options: list[list[CellRow]] = []
    for row in cell.rows:
        if row.rel == GE:
            options.append([CellRow(-row.functional, GT)])
        elif row.rel == GT:
            options.append([CellRow(-row.functional, GE)])
        else:
            options.append([CellRow(row.functional, GT), CellRow(-row.functional, GT)])
    flat: list[list[CellRow]] = []
    for option in options:
        flat.extend([negated] for negated in option)
    return flat


def _positives_covered(cs: CellSet, budget: int) -> tuple[Optional[bool], Optional[Gamble]]:
    """Exactly decide whether every positive gamble lies in some cell.

    Enumerates one negated row per cell and asks for a positive gamble
    satisfying all negations.  Returns (None, None) when the branch count
    exceeds the budget.
    """
    per_cell = [_negated_rows(cell) for cell in cs.cells]
    count = 1
    for options in per_cell:
        count *= max(len(options), 1)
        if count > budget:
            return None, None
    size = cs.scope.size
    names = ["f%d" % w for w in range(size)]
    base_rows = [
        LinRow(tuple(_ONE if j == w else _ZERO for j in range(size)), GE, _ZERO)
        for w in range(size)
    ]
    base_rows.append(LinRow(tuple(_ONE for _ in range(size)), GT, _ZERO))
    for choice in itertools.product(*per_cell) if per_cell else [()]:
        rows = list(base_rows)
        for negated_list in choice:
            for negated in negated_list:
                rows.append(LinRow(negated.functional.values, negated.rel, _ZERO))
        outcome = strict_feasible(LinSystem(tuple(names), tuple(rows)))
        if isinstance(outcome, Feasible):
            return False, Gamble(cs.scope, outcome.witness)
    return True, None


def _grid_samples(scope: Scope, rng: random.Random, count: int, lo: int, hi: int) -> list[Gamble]:
    out = []
    for _ in range(count):
        values = tuple(Fraction(rng.randint(lo, hi)) for _ in range(scope.size))
        out.append(Gamble(scope, values))
    return out


def cellset_coherence_audit(
    cs: CellSet, *, branch_budget: int = 4096, samples: int = 200, seed: int = 0
) -> CoherenceReport:
    """Audit the three coherence axioms for a cell set.

    Zero exclusion is exact.  Acceptance of all positives is structural
    when the positives are included wholesale, exact via complement
    decomposition within the branch budget, and sampled beyond it.
    Closure under positive combinations is structural for the canonical
    families and sampled otherwise; a sampled counterexample is still a
    definitive failure.
    """
    zero = Gamble.zero(cs.scope)
    zero_cells = [i for i, cell in enumerate(cs.cells) if cell.accepts(zero)]
    excludes_zero = AuditFinding(
        "excludes-zero",
        not zero_cells,
        "exact",
        "no cell accepts the zero gamble"
        if not zero_cells
        else "cells %r accept the zero gamble" % (zero_cells,),
        None if not zero_cells else zero,
    )

    if cs.include_positive:
        accepts_positives = AuditFinding(
            "accepts-positives", True, "structural", "positives included wholesale"
        )
    else:
        verdict, witness = _positives_covered(cs, branch_budget)
        if verdict is None:
            rng = random.Random(seed)
            bad = None
            for f in _grid_samples(cs.scope, rng, samples, 0, 3):
                if f.is_positive() and not _cellset_member(cs, f):
                    bad = f
                    break
            accepts_positives = AuditFinding(
                "accepts-positives",
                bad is None,
                "sampled",
                "complement decomposition over budget; %d positive samples checked"
                % samples
                if bad is None
                else "positive gamble outside every cell",
                bad,
            )
        else:
            accepts_positives = AuditFinding(
                "accepts-positives",
                verdict,
                "exact",
                "cell complements exclude every positive gamble"
                if verdict
                else "positive gamble outside every cell",
                witness,
            )

    posi_closed = _audit_posi_closed(cs, samples, seed)
    return CoherenceReport(excludes_zero, accepts_positives, posi_closed)


def _audit_posi_closed(cs: CellSet, samples: int, seed: int) -> AuditFinding:
    if cs.from_credal is not None:
        return AuditFinding(
            "posi-closed",
            True,
            "structural",
            "strict lower-envelope family: combinations keep every strict row",
        )
    if len(cs.cells) == 1 and not cs.include_positive:
        cell = cs.cells[0]
        if any(row.rel == GT for row in cell.rows) or not cell.exclude_zero:
            return AuditFinding(
                "posi-closed",
                True,
                "structural",
                "single cell: an intersection of homogeneous sign constraints",
            )
    if (
        len(cs.cells) == 1
        and cs.include_positive
        and all(row.rel == GT for row in cs.cells[0].rows)
        and all(
            v >= 0 for row in cs.cells[0].rows for v in row.functional.values
        )
    ):
        return AuditFinding(
            "posi-closed",
            True,
            "structural",
            "positives plus one strict cell with nonnegative functionals",
        )
    rng = random.Random(seed)
    members = [
        f
        for f in _grid_samples(cs.scope, rng, samples * 4, -3, 3)
        if _cellset_member(cs, f)
    ]
    checked = 0
    for f, g in itertools.islice(itertools.combinations(members, 2), samples):
        if not _cellset_member(cs, f + g):
            return AuditFinding(
                "posi-closed", False, "sampled", "sum of two members left the set", f + g
            )
        checked += 1
    for f in members[:samples]:
        if not _cellset_member(cs, f + f):
            return AuditFinding(
                "posi-closed", False, "sampled", "double of a member left the set", f + f
            )
        checked += 1
    return AuditFinding(
        "posi-closed",
        True,
        "sampled",
        "no violation among %d sampled combinations" % checked,
    )
