//! Closed-form Lanczos families: coefficients, wave functions, measures and
//! asymptotics.

mod elementary;
mod fit;
mod hahn;
mod sequence;

use serde::{Deserialize, Serialize};

pub use elementary::{
    alternating_b, alternating_b2, alternating_c, hermite_b, hermite_phi, mp_b, mp_b2, mp_complexity, mp_wavefunction,
};
pub use fit::fit_subleading;
pub use hahn::{
    asymptote_zero_crossings, complexity_prefactor, decay_regime, hahn_asymptote, hahn_asymptote_general, hahn_b,
    hahn_b2, hahn_b2_exact, hahn_b2_exact_table, hahn_ln_prefactor, hahn_measure, hahn_phi, hahn_phi_range,
    subleading_report, DecayRegime, HahnParams, HahnRational, SubleadingReport, EQUAL_PARAMS_TOL,
};
pub use sequence::{Family, LanczosSequence};

/// A wave-function value computed in log space.
///
/// `underflow` is set when the true value is nonzero but below the smallest
/// representable double, in which case `value` is `0.0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiValue {
    pub value: f64,
    pub underflow: bool,
}

impl PhiValue {
    pub fn exact(value: f64) -> Self {
        Self { value, underflow: false }
    }

    /// `sign · e^{ln_mag}` with `|sign| ≤ 1`.
    pub(crate) fn from_log(ln_mag: f64, sign: f64) -> Self {
        if ln_mag == f64::NEG_INFINITY || sign == 0.0 {
            return Self::exact(0.0);
        }
        let value = ln_mag.exp() * sign;
        Self { value, underflow: value == 0.0 }
    }
}

/// `ln cosh t` without overflow.
pub(crate) fn ln_cosh(t: f64) -> f64 {
    let t = t.abs();
    t + (-2.0 * t).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln tanh t` for `t > 0`.
pub(crate) fn ln_tanh(t: f64) -> f64 {
    let e = (-2.0 * t).exp();
    (-(-2.0 * t).exp_m1()).ln() - e.ln_1p()
}
