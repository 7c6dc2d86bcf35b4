"""Exact order reduction of positive linear systems with non-negative factors.

A positive system (A, B, C entrywise non-negative) restricted to its
reachable space stays positive only for special projections. This package
decides when the reachable (or, by duality, observable) space admits a
projector Pi = J @ Jdag with J, Jdag >= 0, builds the factors when it
does, and otherwise enlarges the space to the smallest coordinate-product
algebra containing it, which always factors non-negatively. Reductions
built this way reproduce the original impulse response exactly and stay
positive under any positivity-preserving perturbation of the data.
"""
from .errors import (BudgetExceededError, ClosureMismatchError,
                     DimensionMismatchError, NegativeInputError,
                     NonFiniteError, NotInvariantError, NotNonnegativeError,
                     NotPositiveError, NotSquareError, PosredError,
                     RankDeficientError, SingularError, SupportFailureError,
                     UnsupportedCoordinateError, VerificationError,
                     ZeroMatrixError)
from .numerics import (DEFAULT_TOL, SubspaceBasis, Tolerances, as_matrix,
                       column_space_basis, is_nonneg, left_inverse, rank,
                       row_subsets)
from .monotone import (MonotoneCertificate, is_monotone_general,
                       is_monotone_nonneg_rect, is_monotone_nonneg_square,
                       nonneg_lstsq)
from .factorize import (DEFAULT_BUDGET, Factorization,
                        find_nonneg_factorization, verify_factorization)
from .possys import (MarkovSequence, PositiveLtiSystem, equivalent, markov,
                     markov_match, markov_parameters, observability_matrix,
                     project, reachability_matrix, reachable_subspace, reduce,
                     simulate)
from .distalg import (DistortedAlgebra, ReferenceVector, algebra_factorization,
                      choose_p, closure, is_distorted_algebra, wedge)
from .pipeline import (PerturbationRecord, ReductionReport, VerificationRecord,
                       perturbation_experiment, rpmr_observable, rpmr_reachable)
from .gen import GeneratorSpec, generate_system

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "ClosureMismatchError", "DimensionMismatchError",
    "NegativeInputError", "NonFiniteError", "NotInvariantError",
    "NotNonnegativeError", "NotPositiveError", "NotSquareError",
    "PosredError", "RankDeficientError", "SingularError",
    "SupportFailureError", "UnsupportedCoordinateError", "VerificationError",
    "ZeroMatrixError",
    "DEFAULT_TOL", "SubspaceBasis", "Tolerances", "as_matrix",
    "column_space_basis", "is_nonneg", "left_inverse", "rank", "row_subsets",
    "MonotoneCertificate", "is_monotone_general", "is_monotone_nonneg_rect",
    "is_monotone_nonneg_square", "nonneg_lstsq",
    "DEFAULT_BUDGET", "Factorization", "find_nonneg_factorization",
    "verify_factorization",
    "MarkovSequence", "PositiveLtiSystem", "equivalent", "markov",
    "markov_match", "markov_parameters", "observability_matrix", "project",
    "reachability_matrix", "reachable_subspace", "reduce", "simulate",
    "DistortedAlgebra", "ReferenceVector", "algebra_factorization", "choose_p",
    "closure", "is_distorted_algebra", "wedge",
    "PerturbationRecord", "ReductionReport", "VerificationRecord",
    "perturbation_experiment", "rpmr_observable", "rpmr_reachable",
    "GeneratorSpec", "generate_system",
]
