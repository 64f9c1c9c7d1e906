"""Shellings, peelings and linear extensions through compressed PSS-posets."""
from .core import (
    FacetFamily, Mode, Poset, mask_of, indices_of, parse_facets, parse_poset,
    poset_to_ideals, serialize_facets,
)
from .rows import Clause, DualHornFormula, Row012e, solve_dual_horn
from .shelling import PssRowFamily, classify, is_pss, pss_rows
from .search import (
    count_by_first_letter, count_by_last_letter, count_full_words,
    enumerate_full_words, max_partial_length,
)
from .peelings import (
    count_linear_extensions, count_peelings, enumerate_peelings, peeling_pss_rows,
)
from ._backend import HAVE_COMPILED

__version__ = "0.1.0"
