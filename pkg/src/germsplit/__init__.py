"""germsplit: exact decomposition of polynomial germs along the commuting
singular Hamiltonian vector fields of Williamson model systems, with
deformation-cohomology witnesses and numeric flow cross-checks."""

from ._backend import backend_name, set_backend
from .cohomology import (Cochain, CocycleClass, coboundary_of, differential,
                         h1_witness, is_cocycle)
from .errors import (CocycleError, GermsplitError, InternalError, ParseError,
                     ToleranceError, ValidationError)
from .poincare import (CocycleData, CocycleReport, Decomposition,
                       JointKernelBasis, KernelExpression, check_cocycle,
                       joint_kernel_basis, joint_kernel_projection,
                       kernel_rewrite, oracle_solve, solve)
from .poly import CPoly, CRat, Monomial, Poly, poisson, substitute_linear, x, y
from .splitters import (FocusSplitResult, SplitResult, elliptic_split,
                        focus_average, focus_split, hyperbolic_obstruction,
                        hyperbolic_split)
from .williamson import (Component, Derivation, ModelSystem, WilliamsonType,
                         classify_family, monomial_eigenvalue,
                         random_symplectic_matrix, standard_basis)

__version__ = "0.1.0"

__all__ = [
    "CPoly", "CRat", "Cochain", "CocycleClass", "CocycleData", "CocycleError",
    "CocycleReport", "Component", "Decomposition", "Derivation",
    "FocusSplitResult", "GermsplitError", "InternalError", "JointKernelBasis",
    "KernelExpression", "ModelSystem", "Monomial", "ParseError", "Poly",
    "SplitResult", "ToleranceError", "ValidationError", "WilliamsonType",
    "backend_name", "check_cocycle", "classify_family", "coboundary_of",
    "differential", "elliptic_split", "focus_average", "focus_split",
    "h1_witness", "hyperbolic_obstruction", "hyperbolic_split", "is_cocycle",
    "joint_kernel_basis", "joint_kernel_projection", "kernel_rewrite",
    "monomial_eigenvalue", "oracle_solve", "poisson",
    "random_symplectic_matrix", "set_backend", "solve", "standard_basis",
    "substitute_linear", "x", "y",
]
