//! Exactly solvable Lanczos sequences and the recursion method.
//!
//! The crate is organised around the semi-infinite chain
//!
//! ```text
//! ∂_t φ_n = −b_{n+1} φ_{n+1} + b_n φ_{n−1},   φ_n(0) = δ_{n,0},  φ_{−1} = 0
//! ```
//!
//! and the families of coefficients `b_n` for which it has closed-form
//! solutions:
//!
//! - [`special_fn`]: complex log-gamma, Gauss ₂F₁, elliptic K, exact Euler polynomials.
//! - [`families`]: continuous-Hahn, Meixner–Pollaczek, alternating and Hermite
//!   sequences with their wave functions, measures and asymptotics.
//! - [`chain`]: adaptive numerical solver for the chain and Krylov complexity.
//! - [`moments`]: exact moments, Hankel determinants and moment inversion.
//! - [`deform`]: κ-deformations producing a nonzero stationary value.
//! - [`opcheck`]: orthogonal-polynomial checks and the continuous Hahn bridge.
//! - [`verify`]: a self-contained identity/property battery used by the CLI.

pub mod chain;
pub mod deform;
mod error;
pub mod families;
pub mod moments;
pub mod opcheck;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
