"""Product-state detection and factorization of n-qubit pure states by
block-vector proportionality under qubit permutations."""
from .blocks import (
    DEFAULT_TOL,
    BlockMatrix,
    NotDecomposable,
    ProportionalityResult,
    SplitFactors,
    blocks,
    decompose_at,
    proportional,
    two_qubit_product_test,
)
from .factorize import (
    Factor,
    FactorizationReport,
    NoSplit,
    Split,
    Verdict,
    Witness,
    assemble,
    find_split,
    full_factorize,
    is_genuinely_entangled,
    random_product,
    reconstruct,
)
from .oracle import coefficient_matrix, minor_test, oracle_verdict
from .permutations import (
    Bipartition,
    QubitPermutation,
    apply,
    bipartition_count,
    compose,
    enumerate_bipartitions,
    inverse,
    permutation_budget,
)
from .states import (
    PureState,
    dicke,
    dicke_pair,
    dw,
    ghz,
    ghz_plus_w,
    make_state,
    random_state,
    tensor,
    w,
    zeta3,
)
