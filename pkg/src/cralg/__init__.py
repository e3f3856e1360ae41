"""Exact computation of automorphism algebras of model CR surfaces and their
algebraizations over finite-dimensional commutative real algebras."""

from .algebra import (
    AlgebraSpec,
    direct_sum,
    invert,
    is_invertible,
    make_algebra,
    multiply,
    nilpotency_index,
    preset_algebra,
    regular_representation,
    tensor_product,
    validate_algebra,
)
from .autalg import (
    GradedAutBasis,
    VectorFieldPoly,
    build_tangency_system,
    compute_aut,
    lie_bracket,
    s_exhaustion_report,
    s_holomorphic_component,
    solve_nullspace,
    tangency_residual,
    verify_statement13_shape,
)
from .errors import CralgError
from .flow import FormalFlow, exponentiate, s_flow_check, verify_flow_tangency
from .parse import parse_algebra_text, parse_expression, parse_surface_text
from .poly import AlgebraPoly, Poly, VarTable, scalar_expand
from .scalars import GaussianRational
from .surface import (
    ModelSurface,
    algebraize,
    algebraize_twice_equals_tensor,
    cartesian_product,
    check_fd_condition,
    check_finite_type_linear,
    check_holomorphic_nondegeneracy_bounded,
    check_quadric_nondegeneracy,
    hermitian_form,
    make_surface,
)

__version__ = "0.1.0"
