"""Twisted-type Hessian operators: algebra, certificates, solver, oracles."""

from twistpde._core import (  # noqa: F401
    ConfigError,
    NumericalError,
    OperatorSpec,
    PreconditionError,
    SymMatrix,
    Tensor3,
    check_sandwich,
    check_transform_concavity_json,
    cone_check,
    counterexample_roots_json,
    eigen_sym,
    elem_sym,
    existence_transition,
    lemma31_form,
    lemma31_sweep_json,
    op_gradient,
    op_hessian_form,
    radial_coefficient,
    radial_polynomial,
    reduction_identity_check,
    sandwich_sweep_json,
    sigma_kB,
    solve_dirichlet_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
