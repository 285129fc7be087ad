"""Gauss-diagram calculus for virtual knots and links under the virtualized
Delta-move."""

from .equivalence import (
    BoundsReport,
    CanonicalModel,
    canonical_model_diagram,
    classical_unknotting_obstruction,
    decide_vdelta_equivalence,
    reduce_to_model,
    unknot_sequence,
    vdelta_bounds,
)
from .errors import (
    ChordNotFoundError,
    GaussParseError,
    InvalidDiagramError,
    MoveError,
    ResourceError,
    UnsupportedError,
    VDeltaError,
)
from .families import figure12_knot, figure13_knot, model_link
from .gauss import (
    GaussDiagram,
    canonical_code,
    is_self_chord,
    new_diagram,
    parse_gauss_code,
    serialize,
)
from .invariants import f_polynomial, index, n_writhe, odd_writhe, parity_vector, writhe
from .laurent import LaurentPolynomial
from .moves import (
    MacroInstance,
    MoveInstance,
    MoveSequence,
    apply,
    apply_macro,
    enumerate_sites,
    replay,
)
from .search import SearchBudget, SearchResult, bfs_distance, enumerate_classes

__version__ = "0.1.0"
