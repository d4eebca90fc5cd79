"""Formal concepts as a setting for rough-set style approximation and modal logic.

Sets are int bitmasks over a carrier, relations are boolean numpy matrices,
and every check is exhaustive or seeded so results are reproducible.
"""

from .errors import *  # noqa: F401,F403
from .lattice import (
    ConceptLattice,
    FormalConcept,
    Polarity,
    closure,
    concept_from_extent,
    concept_from_intent,
    derive,
    enumerate_concepts,
    hasse_covers,
    is_stable,
)
from .relations import (
    EnrichedContext,
    Sort,
    TypedRelation,
    classify_context,
    compose_rel,
    converse_rel,
    incidence_relation,
    is_i_compatible,
    modal_op,
    rel_apply,
    rel_property,
)
from .lifting import (
    KentContext,
    KripkeFrame,
    h_map,
    kent_approx,
    kent_lemma_check,
    kripke_modal_ops,
    lift_kripke,
    lift_set,
    verify_composition_lifting,
    verify_lifting_iso,
    verify_property_lifting,
)
from .formula import format_formula, parse_formula, parse_sequent
from .logic import (
    CORRESPONDENCE,
    Model,
    algebra_class_check,
    complex_algebra,
    context_from_lattice,
    context_from_modal_algebra,
    correspondence_check,
    frame_valid,
    frame_valid_report,
    interpret,
    sahlqvist_consequences,
    satisfies,
)
from .tmodel import (
    ClassicalTModel,
    ConceptualTModel,
    chain_model,
    lift_t_model,
    sorites_search,
    step_lemma_check,
    t_extent,
)
from .manyvalued import (
    APolarity,
    AEnrichedContext,
    AKripkeFrame,
    HeytingAlgebra,
    boolean2,
    boolean4,
    goedel_chain,
    mv_enumerate_concepts,
    mv_is_i_compatible,
    mv_lift,
    mv_lift_kripke,
    mv_lift_set,
    mv_reflex_correspondence,
    mv_rel_apply,
    mv_verify_preservation,
    random_mv_context,
)
from .dempster_shafer import (
    ConceptualProbSpace,
    PartitionProbSpace,
    adjoints,
    belief_plausibility,
    canonical_relation_classical,
    canonical_relation_conceptual,
    inner_outer,
    lift_prob_space,
    random_conceptual_space,
    s5_law_check,
)
from .generate import ContextParams, random_enriched_context, random_formula, random_polarity, random_t_model
from .io import lattice_to_dot, read_cxt, read_enriched, write_cxt

__version__ = "0.1.0"
