//! Special-function primitives: complex gamma, Gauss ₂F₁, elliptic K and
//! exact Euler polynomials.

mod elliptic;
mod euler;
mod gamma;
mod hypergeometric;
mod rational_complex;

use num_complex::Complex64;

pub use elliptic::elliptic_k;
pub use euler::{euler_polynomial, euler_polynomial_bounded, euler_polynomials, EULER_MAX_DEFAULT};
pub use gamma::{
    digamma, gamma, is_nonpositive_integer, ln_gamma_real, ln_pochhammer_abs, log_gamma, pochhammer, pochhammer_exact,
    rgamma,
};
pub use hypergeometric::gauss_2f1_with_complement;
pub use hypergeometric::{gauss_2f1, gauss_2f1_real, INTEGER_SNAP, NEAR_INTEGER};
pub use rational_complex::RationalComplex;

pub type ComplexValue = Complex64;
