"""Propus difference families over Z_v and symmetric Hadamard matrices of order 4v."""

from .equivalence import CanonicalForm, canonical_form, equivalent
from .families import (
    BlockReps,
    DifferenceCountTable,
    DifferenceFamily,
    FamilyVerdict,
    contract_block,
    difference_counts,
    expand_block,
    is_multiplier,
    is_symmetric,
    verify_family,
)
from .hadamard import (
    HadamardCandidate,
    arrange_for_propus,
    back_diagonal,
    build_propus,
    circulant,
    gs_condition,
    propus_matrix,
    verify_hadamard,
)
from .notation import FamilyRecord, from_json, parse_families, serialize_family, to_json, write_matrix
from .paramsets import (
    PropusParameterSet,
    enumerate_propus_params,
    h_feasible,
    propus_feasible,
    validate_params,
)
from .residues import OrbitTable, ResidueSet, SubgroupH, generate_subgroup, negate_set, orbit_table, unit_group
from .search import SearchResult, SearchSpec, enumerate_invariant_subsets, search
from .sequences import BinarySequence, PafProfile, paf, set_autocorrelation, to_sequence

__version__ = "0.1.0"
