"""Exact inference for coherent sets of desirable gambles on finite spaces.

The package models uncertainty as sets of gambles an agent strictly
prefers to the status quo.  All arithmetic is exact (``fractions``); the
decision procedures are rational linear programs with verified
certificates.  Main entry points:

- :mod:`desirability.space` — variables, scopes, gambles, assignments.
- :mod:`desirability.desirable` — set expressions and exact membership.
- :mod:`desirability.structure` — marginalisation, extension, conditioning.
- :mod:`desirability.maximal` — lexicographic (maximal) models.
- :mod:`desirability.independence` — irrelevance and independent products.
- :mod:`desirability.previsions` — prices, credal sets, strong products.
- :mod:`desirability.model` — canonical JSON documents.
- :mod:`desirability.cli` — the ``desirability`` command.
"""

from .desirable import (
    AuditFinding,
    Cell,
    CellRow,
    CellSet,
    CoherenceReport,
    ConditionalFamily,
    Conditioned,
    ConsistencyCertificate,
    CylExt,
    DesirableSetExpr,
    GeneratorSet,
    IndepProduct,
    Intersection,
    IrrExt,
    StrongProduct,
    Tri,
    avoids_nonpositivity,
    cellset_coherence_audit,
    member,
    natext_member,
    scope_of,
    strictly_prefers,
)
from .errors import (
    BudgetExceededError,
    DegenerateConditioningError,
    DesirabilityError,
    DimensionMismatchError,
    ExactnessError,
    IncoherentBaseError,
    MissingConditionError,
    ModelFormatError,
    OutcomeError,
    ScopeError,
    UnsupportedQueryError,
    WitnessVerificationError,
)
from .independence import (
    Verdict,
    conditional_inex,
    factorisation_check,
    independent_product,
    inex_member,
    irr_member,
    irrelevant_extension,
    irrext_member,
    is_independent,
    is_irrelevant,
)
from .maximal import (
    LexSystem,
    expectation_vector,
    lex_canonical,
    lex_condition,
    lex_equal,
    lex_is_coherent,
    lex_is_maximal,
    lex_member,
    maximal_product_check,
    nonmaximality_witness,
)
from .model import ModelDocument, dump, dumps, load, loads
from .previsions import (
    CredalSet,
    LowerPrevisionView,
    conditional_lower_prevision,
    credal_vertices,
    credal_view,
    gbr_residual,
    inex_lower_prevision,
    lower_prevision,
    strictly_desirable,
    strong_member,
    strong_product_lower,
    upper_prevision,
)
from .space import (
    Assignment,
    Gamble,
    Scope,
    Variable,
    as_rational,
    format_rational,
    indicator,
)
from .structure import (
    condition,
    condition_bar_member,
    cyl_ext,
    gamble_grid,
    marginal_member,
    sample_gambles,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "AuditFinding",
    "BudgetExceededError",
    "Cell",
    "CellRow",
    "CellSet",
    "CoherenceReport",
    "ConditionalFamily",
    "Conditioned",
    "ConsistencyCertificate",
    "CredalSet",
    "CylExt",
    "DegenerateConditioningError",
    "DesirabilityError",
    "DesirableSetExpr",
    "DimensionMismatchError",
    "ExactnessError",
    "Gamble",
    "GeneratorSet",
    "IncoherentBaseError",
    "IndepProduct",
    "Intersection",
    "IrrExt",
    "LexSystem",
    "LowerPrevisionView",
    "MissingConditionError",
    "ModelDocument",
    "ModelFormatError",
    "OutcomeError",
    "Scope",
    "ScopeError",
    "StrongProduct",
    "Tri",
    "UnsupportedQueryError",
    "Variable",
    "Verdict",
    "WitnessVerificationError",
    "as_rational",
    "avoids_nonpositivity",
    "cellset_coherence_audit",
    "condition",
    "condition_bar_member",
    "conditional_inex",
    "conditional_lower_prevision",
    "credal_vertices",
    "credal_view",
    "cyl_ext",
    "dump",
    "dumps",
    "expectation_vector",
    "factorisation_check",
    "format_rational",
    "gamble_grid",
    "gbr_residual",
    "independent_product",
    "indicator",
    "inex_lower_prevision",
    "inex_member",
    "irr_member",
    "irrelevant_extension",
    "irrext_member",
    "is_independent",
    "is_irrelevant",
    "lex_canonical",
    "lex_condition",
    "lex_equal",
    "lex_is_coherent",
    "lex_is_maximal",
    "lex_member",
    "load",
    "loads",
    "lower_prevision",
    "marginal_member",
    "maximal_product_check",
    "member",
    "natext_member",
    "nonmaximality_witness",
    "sample_gambles",
    "scope_of",
    "strictly_desirable",
    "strictly_prefers",
    "strong_member",
    "strong_product_lower",
    "upper_prevision",
    "__version__",
]
