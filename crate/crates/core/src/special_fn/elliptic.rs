//! Complete elliptic integral of the first kind.
//!
//! **Parameter convention:** `K(m)` takes the *parameter* `m = k²`, not the
//! modulus `k`:
//!
//! ```text
//! K(m) = ∫₀^{π/2} dθ / √(1 − m sin²θ)
//! ```

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

/// `K(m)` via the arithmetic–geometric mean, `K = π / (2 AGM(1, √(1−m)))`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite("elliptic_k parameter"));
    }
    if !(0.0..1.0).contains(&m) {
        return Err(Error::Domain(format!("elliptic_k requires 0 ≤ m < 1, got {m}")));
    }
    let mut a = 1.0f64;
    let mut g = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - g).abs() <= 1e-16 * a {
            break;
        }
        let an = 0.5 * (a + g);
        g = (a * g).sqrt();
        a = an;
    }
    Ok(FRAC_PI_2 / a)
}
