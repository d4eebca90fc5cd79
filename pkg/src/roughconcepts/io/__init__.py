from .cxt import read_cxt, read_cxt_named, write_cxt
from .dot import concept_label, lattice_to_dot
from .jsonio import (
    ContextDocument,
    dumps,
    enriched_to_dict,
    frame_to_dict,
    polarity_to_dict,
    read_algebra,
    read_conceptual_space,
    read_document,
    read_enriched,
    read_frame,
    read_mv_context,
    read_mv_frame,
    read_polarity,
    read_space,
)
