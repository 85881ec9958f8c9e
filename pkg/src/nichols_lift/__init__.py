"""Exact-arithmetic toolkit for deformed Nichols-algebra presentations.

Modules: ``scalars`` (cyclotomic fields), ``braiding`` (diagonal braidings),
``freealg`` (free algebra), ``presdsl`` (presentation language and catalog),
``groebner`` (overlap completion), ``deform`` (deformations, moves, liftings),
``isom`` (linking-parameter isomorphisms), ``cli``.
"""

from .braiding import BraidingMatrix, chi_eval, diagram, is_admissible, linkable_pairs
from .deform import (
    LiftingDatum,
    ParamAssignment,
    Realization,
    admissible_set,
    assemble,
    build_ideal,
    cut,
    lifting_presentation,
    one_at_a_time,
    project,
    verify,
    verify_lifting,
)
from .freealg import Poly, braided_commutator
from .groebner import complete, dimension, trace_replay
from .isom import act_linking, isom_linking, pair_classes, symmetries
from .presdsl import Presentation, catalog, catalog_names, format_presentation, load, parse
from .scalars import FieldElem, make_field, root

__version__ = "0.1.0"

__all__ = [
    "BraidingMatrix",
    "FieldElem",
    "LiftingDatum",
    "ParamAssignment",
    "Poly",
    "Presentation",
    "Realization",
    "act_linking",
    "admissible_set",
    "assemble",
    "braided_commutator",
    "build_ideal",
    "catalog",
    "catalog_names",
    "chi_eval",
    "complete",
    "cut",
    "diagram",
    "dimension",
    "format_presentation",
    "is_admissible",
    "isom_linking",
    "lifting_presentation",
    "linkable_pairs",
    "load",
    "make_field",
    "one_at_a_time",
    "pair_classes",
    "parse",
    "project",
    "root",
    "symmetries",
    "trace_replay",
    "verify",
    "verify_lifting",
]
