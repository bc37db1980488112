//! Unitary (2,2) Padé propagator for `ẏ = M y` with `M` real skew-tridiagonal.
//!
//! `R(z) = (z² + 6z + 12)/(z² − 6z + 12)` maps the imaginary axis to the unit
//! circle, so the scheme conserves `Σ y_n²` to rounding at any step size.
//! Splitting `R(z) = 1 + A/(z−q) + Ā/(z−q̄)` with `q = 3 + i√3`,
//! `A = 6 − 6√3 i` gives `R(hM)y = y + 2 Re[A (hM − q)^{−1} y]`: one complex
//! tridiagonal solve per step.

use num_complex::Complex64;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Reusable work arrays.
#[derive(Default)]
pub(crate) struct PadeWork {
    d: Vec<Complex64>,
    g: Vec<Complex64>,
}

/// `out = R(hM) y` where `M_{n,n+1} = −b_{n+1}`, `M_{n,n−1} = b_n` and
/// `b[n] = b_n` (entry 0 unused, `len = y.len()`; the site beyond the last is
/// a hard wall).
pub(crate) fn pade_step(b: &[f64], y: &[f64], h: f64, out: &mut [f64], work: &mut PadeWork) {
    let n = y.len();
    let q = Complex64::new(3.0, SQRT3);
    let a = Complex64::new(6.0, -6.0 * SQRT3);
    work.d.resize(n, Complex64::default());
    work.g.resize(n, Complex64::default());
    let (d, g) = (&mut work.d, &mut work.g);
    // (hM − q) rows: sub h b_k, diag −q, super −h b_{k+1}
    d[0] = -q;
    g[0] = Complex64::new(y[0], 0.0);
    for k in 1..n {
        let sub = h * b[k];
        let sup_prev = -h * b[k];
        let l = sub / d[k - 1];
        d[k] = -q - l * sup_prev;
        g[k] = Complex64::new(y[k], 0.0) - l * g[k - 1];
    }
    let mut x = g[n - 1] / d[n - 1];
    out[n - 1] = y[n - 1] + 2.0 * (a * x).re;
    for k in (0..n - 1).rev() {
        let sup = -h * b[k + 1];
        x = (g[k] - sup * x) / d[k];
        out[k] = y[k] + 2.0 * (a * x).re;
    }
}
