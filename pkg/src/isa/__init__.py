"""Exact amenability and module-amenability certificates for finite
inverse semigroups."""

from .linalg import RationalMatrix, Subspace, lp_feasible, nullspace, rref, solve
from .semigroup import (
    FiniteInverseSemigroup,
    builtin_corpus,
    gen_brandt,
    gen_clifford,
    gen_group,
    gen_product,
    gen_semilattice_chain,
    gen_symmetric_inverse,
    validate,
)
from .congruence import GroupImage, min_group_congruence, quotient_group
from .mean import MeanCertificate, find_invariant_mean, verify_mean
from .algebra import IdealData, build_algebra, ideal_I, ideal_closure_crosscheck, omega
from .diagonal import (
    DiagonalCertificate,
    diagonal_from_mean,
    find_classical_diagonal,
    find_module_diagonal,
    pushforward_diagonal,
)
from .cohomology import CohomologyResult, FiniteBimodule, h1_dimension

__version__ = "0.1.0"
