"""Harmonic analysis kernels for pseudo real hyperbolic spaces."""

from .core import (
    EtaVector,
    EvalResult,
    HyperfnsError,
    KType,
    Space,
    Status,
    as_eta,
)
from .eisenstein import (
    Classification,
    c_function,
    c_matrix,
    classify_bounded,
    eisenstein_closed,
    eisenstein_regularized,
    eisenstein_series,
    ode_residual,
    p_r_poly,
    pole_catalog,
    spectral_point,
)
from .fourier import (
    QuadratureConfig,
    RadialProfile,
    fourier_transform,
    hy_ratio,
    jacobian,
    paley_wiener_check,
    plancherel_check,
    rl_decay_profile,
)
from .hcseries import (
    CoeffTable,
    b_coeffs,
    cs_coeffs,
    d_coeffs,
    gamma_coeffs,
    gamma_tilde,
    phi_series,
    q_r_poly,
)
from .specfun import GammaRatioSpec, gamma_ratio, hyp2f1_nonpos, log_gamma

__version__ = "0.1.0"

__all__ = [
    "Classification", "CoeffTable", "EtaVector", "EvalResult",
    "GammaRatioSpec", "HyperfnsError", "KType", "QuadratureConfig",
    "RadialProfile", "Space", "Status", "as_eta", "b_coeffs", "c_function",
    "c_matrix", "classify_bounded", "cs_coeffs", "d_coeffs",
    "eisenstein_closed", "eisenstein_regularized", "eisenstein_series",
    "fourier_transform", "gamma_coeffs", "gamma_ratio", "gamma_tilde",
    "hy_ratio", "hyp2f1_nonpos", "jacobian", "log_gamma", "ode_residual",
    "p_r_poly", "paley_wiener_check", "phi_series", "plancherel_check",
    "pole_catalog", "q_r_poly", "rl_decay_profile", "spectral_point",
]
