//! Exact moment engine: moments from Taylor series, Hankel determinants,
//! moment → Lanczos inversion and continued fractions.
//!
//! No floating point is used on the inversion path. The one float routine,
//! [`float_inversion_demo`], exists to show why.

mod continued_fraction;
mod euler;
mod hankel;
mod inversion;
mod series;
mod table;

pub use continued_fraction::{
    continued_fraction_g, continued_fraction_laurent, deformation_identity_residual, moments_from_laurent,
};
pub use euler::{
    alternating_partition_closed, euler_hankel_identity_check, euler_hankel_lhs, euler_hankel_rhs, euler_moment,
    euler_moment_table,
};
pub use hankel::{hankel_leading_minors, hankel_ledger, HankelLedger};
pub use inversion::{b_from_moments, chebyshev_recurrence, float_inversion_demo, split_b2, z_ratio_b2, Recurrence};
pub use series::{moments_from_series, taylor_coefficients, SeriesProvider};
pub use table::MomentTable;
