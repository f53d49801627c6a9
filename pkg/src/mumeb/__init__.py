"""Mutually unbiased maximally entangled bases over commutative rings.

Build phase-and-shift bases on C^d (x) C^d from a finite commutative
ring with a generic additive character, certify them exactly through
character-sum collapse and numerically by brute-force inner products,
and search for the largest admissible unit sets per ring.
"""

from .errors import (
    BadSpec,
    DimensionMismatch,
    MumebError,
    NodeLimitExceeded,
    NonGenericCharacter,
    NonPrime,
    NotAUnit,
    ParseError,
    ShapeMismatch,
    TheoremNotApplicable,
    TooSmall,
)
from .fileformat import (
    FORMAT_VERSION,
    family_to_dict,
    load_family,
    parse_family,
    serialize_family,
)
from .ring import (
    ComponentSpec,
    Kind,
    Ring,
    RingSpec,
    check_generic,
    factorize,
    fields_ring,
    find_irreducible,
    is_prime,
    make_ring,
    phase,
    spec_for,
    zd_ring,
)
from .search import (
    DifferenceGraph,
    brute_force_max_clique,
    difference_graph,
    greedy_set,
    max_clique,
)
from .verify import (
    Check,
    ExactPairResult,
    Report,
    check_max_entangled,
    check_orthonormal,
    check_pair_unbiased,
    dense_basis,
    exact_pair_criterion,
    inner_product,
    to_dense,
    verify_family,
)
from .weyl import (
    Family,
    MEBasis,
    ScalePermutation,
    SetConditionResult,
    SparseState,
    baseline_unit_set,
    build_basis,
    build_family,
    build_state,
    diagonal_unit_set,
    family_from_units,
    scale_permutation,
    validate_set_condition,
)

__version__ = "0.1.0"
