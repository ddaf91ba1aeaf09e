"""Mutually unbiased bases from unextendible maximally entangled bases in C^2 (x) C^d."""
from .bases import BasisSet, build_F, build_umeb, complete_basis
from .entanglement import (
    BipartiteState,
    OptimizerConfig,
    SchmidtPair,
    Subspace,
    coefficient_matrix,
    is_maximally_entangled,
    max_entanglement_in_subspace,
    orthogonal_complement,
    schmidt_coefficients,
    verify_umeb,
)
from .kernels import BACKEND
from .linalg import Tolerance, adjoint, inner_product, is_unitary, matmul, tensor_product
from .mub import (
    MubPairSpec,
    PhaseSpec,
    build_second_basis,
    corollary_check,
    example_catalog,
    theorem_conditions,
    three_way,
    transformed_matrix,
    verify_pair_direct,
)
from .report import VerificationReport
from .search import Candidate, SearchConfig, run_search

__version__ = "0.1.0"
