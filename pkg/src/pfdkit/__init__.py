"""pfdkit: exact multivariate partial fraction decompositions.

Rational functions whose denominators split into linear factors are
decomposed over the d-fold products of those factors; existence is decided
combinatorially through the flats of the arrangement's matroid, extraction
runs through cofactor-tracked Gröbner bases or exact bounded-degree solves,
and every emitted decomposition is re-verified by exact recombination.
"""

from .matroid import (
    AFFINE,
    PROJECTIVE,
    Arrangement,
    FlatSet,
    InputError,
    Partition,
    braid_arrangement,
    closure,
    dominance_leq,
    flats_min_size,
    partition_flat_size,
    rank_of_subset,
)
from .decomp import (
    PrimaryComponent,
    exists_pfd_via_flats,
    max_pfd_degree_via_flats,
    primary_decomposition,
    primary_decomposition_affine,
    primary_decomposition_projective,
    vanishing_order,
    verify_decomposition,
)
from .ideal import (
    GeneratorSpec,
    IdealWithBasis,
    ResourceGuardError,
    buchberger,
    dfold_generators,
    express_bounded_degree,
    flat_vanishing_order,
    ideal_equal,
    intersect,
    power_linear_membership,
)
from .linalg import RationalMatrix
from .parse import ParseError, ProblemFile, parse_polynomial, parse_problem, render_polynomial
from .pfd import (
    PfdOptions,
    PfdResult,
    PfdTerm,
    RationalFunction,
    full_pfd,
    iterative_pfd,
    parse_pfd_document,
    pfd,
    pfd_generic,
    reduced_exp,
    reducible_term_criterion,
    render_pfd_document,
    verify_pfd,
)
from .poly import Polynomial, poly_arith, total_degree
from .ratio import BACKEND, QQ, qq

__version__ = "0.1.0"
