//! Orthogonal-polynomial checks: `π_n` evaluation, orthogonality against the
//! Hahn measure, the expansion `e^{itA} = Σ iⁿ φ_n(t) π_n(A)`, and the
//! continuous Hahn bridge with its hypergeometric sum identity.

mod bridge;
mod expansion;
mod polynomial;
mod quadrature;

pub use bridge::{
    continuous_hahn_bridge, continuous_hahn_coefficients, hypergeometric_sum_identity_check, ChainFormCase,
    ContinuousHahnParams, BridgeValues, HahnCoefficients,
};
pub use expansion::{evolution_expansion_residual, matrix_exp_i};
pub use polynomial::{eval_pi, monic_exact, pi_values, PolyMode, PolynomialEvaluator};
pub use quadrature::{gauss_kronrod_adaptive, orthogonality_residual, QuadratureResult};
