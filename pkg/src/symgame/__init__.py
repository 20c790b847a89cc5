"""Symmetric finite games via semi-tensor products and adjacent transpositions."""

__version__ = "0.1.0"

from .basis import (
    MultisetClass,
    SymSubspaceBasis,
    dimension,
    eta_basis,
    multiset_classes,
    project_symmetric,
    random_symmetric_game,
    symmetric_subspace_basis,
    zeta_complement,
)
from .check import (
    CheckReport,
    TransposeOperator,
    Violation,
    build_full_system,
    build_minimal_system,
    check_full_system,
    check_minimal,
    check_proposition1,
    t_mu,
)
from .game import (
    FiniteGame,
    GameFormatError,
    index_to_profile,
    load_game,
    payoff,
    profile_to_index,
    save_game,
)
from .linalg import exact_rank, nullity
from .oracle import Permutation, all_permutations, check_definition4, oracle_is_symmetric
from .stp import (
    PermutationMatrix,
    SizeLimitError,
    delta,
    identity,
    kron,
    perm_apply_row,
    perm_compose,
    stp,
    swap_matrix,
)
