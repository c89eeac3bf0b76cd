"""Embeddability of class-2 nilpotent amalgams.

Groups are given by two-tier power-commutator presentations (base generators
plus central generators), subgroups by canonical generating sequences, and
amalgam instances by a pair of embeddings of a common subgroup D into A and B.
The conditions module decides when the amalgam embeds in a class-2 group; the
counterexample module builds and verifies the co-central family on which the
uncorrected criterion fails.
"""

from .pcgroup import (
    CATALOG,
    ConsistencyReport,
    Element,
    Generator,
    GroupError,
    Presentation,
    Word,
    check_consistency,
    commutator,
    conjugate,
    construct_named,
    cyclic,
    dihedral8,
    direct_product_presentation,
    enumerate_elements,
    extraspecial,
    free_abelian,
    heisenberg_Z,
    heisenberg_mod,
    order_of_element,
    quaternion8,
)
from .structure import (
    Embedding,
    EmbeddingError,
    EmbeddingReport,
    Subgroup,
    center,
    check_embedding,
    derived_subgroup,
    direct_product,
    identity_embedding,
    intersect,
    is_central_subgroup,
    is_cocentral,
    is_normal,
    is_torsion_free,
    subgroup_generated,
)
from .words import WordSyntaxError, evaluate_word, format_element, parse_word
from .conditions import (
    AmalgamInstance,
    ConditionReport,
    PreconditionError,
    check_condition1,
    check_condition2,
    check_korollar3,
    check_satz2_central,
    check_star,
    check_star_star,
    decide_embeddability,
    reevaluate_witness,
)
from .counterexample import (
    CounterexampleBundle,
    CounterexampleReport,
    build_counterexample,
    intersection_in_amalgam,
    verify_counterexample,
)
from .amgparse import AmgParseError, parse_instance, parse_instance_text

__version__ = "1.0.0"

__all__ = [
    "AmalgamInstance",
    "AmgParseError",
    "CATALOG",
    "ConditionReport",
    "ConsistencyReport",
    "CounterexampleBundle",
    "CounterexampleReport",
    "Element",
    "Embedding",
    "EmbeddingError",
    "EmbeddingReport",
    "Generator",
    "GroupError",
    "PreconditionError",
    "Presentation",
    "Subgroup",
    "Word",
    "WordSyntaxError",
    "build_counterexample",
    "center",
    "check_condition1",
    "check_condition2",
    "check_consistency",
    "check_embedding",
    "check_korollar3",
    "check_satz2_central",
    "check_star",
    "check_star_star",
    "commutator",
    "conjugate",
    "construct_named",
    "cyclic",
    "decide_embeddability",
    "derived_subgroup",
    "dihedral8",
    "direct_product",
    "direct_product_presentation",
    "enumerate_elements",
    "evaluate_word",
    "extraspecial",
    "format_element",
    "free_abelian",
    "heisenberg_Z",
    "heisenberg_mod",
    "identity_embedding",
    "intersect",
    "intersection_in_amalgam",
    "is_central_subgroup",
    "is_cocentral",
    "is_normal",
    "is_torsion_free",
    "order_of_element",
    "parse_instance",
    "parse_instance_text",
    "parse_word",
    "quaternion8",
    "reevaluate_witness",
    "subgroup_generated",
    "verify_counterexample",
]
