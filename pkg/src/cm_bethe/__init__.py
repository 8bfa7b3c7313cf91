"""Bethe ansatz solutions from the completed Calogero-Moser phase space.

Pairs of complex matrices with ``rank([X, Z] + I) = 1`` give tau functions
``det(X + sum l_i (lam_i I - Z)^{-1})`` whose roots, on a two-variable
lattice section, solve the rational nested Bethe ansatz equations and move
as eigenvalues of a matrix with constant discrete-time velocity.
"""

from .errors import (
    CMBetheError,
    ConditioningError,
    ConsistencyError,
    InconsistentRootError,
    InputError,
    PairRejected,
    RankError,
    SingularityError,
    SpectralCollisionError,
    VanishingAdjugateError,
)
from .flow import Trajectory, flow_matrix, match_multisets, run_trajectory, step_matrix
from .identities import (
    ResidualReport,
    check_factorization,
    check_hirota_ratio,
    check_lemma1,
    check_rnba,
    summarize,
)
from .linalg import RankOneWitness, adjugate, extract_rank_one_witness
from .phase_space import (
    CMPair,
    Conjugate,
    RationalFunction,
    ScalarData,
    SwapTranspose,
    TranslateX,
    TranslateZ,
    Transpose,
    adjugate_witness,
    apply_symmetry,
    check_commutator,
    cm_pair_from_positions,
    evaluate_pq,
    paper_2x2_pair,
    random_cauchy_pair,
    scalar_data,
    validate_pair,
)
from .tau import (
    LatticeSection,
    MiwaPoint,
    TauPolynomial,
    closed_form_2x2,
    compare_closed_form_2x2,
    polish_roots,
    random_section,
    tau_miwa,
    tau_polynomial,
    tau_roots,
    tau_section,
)

__version__ = "0.1.0"
