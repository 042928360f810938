"""Calculus of simple 2-dimensional braids through braid monodromy."""

from .braids import (
    BraidWord,
    FreeWord,
    NormalForm,
    Permutation,
    artin_act,
    artin_equal,
    band_generator,
    equal,
    free_reduce,
    inverse,
    is_identity,
    multiply,
    normal_form,
    permutation_of,
)
from .groups import GroupPresentation, abelianization_rank, count_homs
from .search import (
    CanonicalKey,
    Distinct,
    Equivalent,
    Move,
    MoveKind,
    SearchBounds,
    Unknown,
    canonical_key,
    enumerate_tuples,
    neighbors,
    search_equivalence,
    verify_trace,
)
from .surface import (
    BandEntry,
    MonodromyTuple,
    b_star,
    band,
    braid_sum,
    complement_group,
    components,
    conjugate,
    destabilize,
    euler_characteristic_closure,
    genus_list,
    hurwitz,
    iota,
    stabilize,
    validate,
)

__version__ = "0.1.0"
