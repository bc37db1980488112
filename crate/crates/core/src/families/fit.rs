use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

use super::hahn::SubleadingReport;

/// Least-squares fit of `b_n − n ≈ b1 + b2/n + c3/n² + c4/n³` over
/// `n ∈ [n_lo, n_hi]`, where `b[n] = b_n`.
pub fn fit_subleading(b: &[f64], n_lo: usize, n_hi: usize) -> Result<SubleadingReport> {
    if n_lo == 0 || n_hi >= b.len() || n_hi < n_lo + 4 {
        return Err(Error::InvalidParams(format!(
            "fit window [{n_lo}, {n_hi}] needs 1 ≤ n_lo, n_lo + 4 ≤ n_hi < {}",
            b.len()
        )));
    }
    let rows = n_hi - n_lo + 1;
    let design = DMatrix::from_fn(rows, 4, |i, j| ((n_lo + i) as f64).powi(-(j as i32)));
    let rhs = DVector::from_fn(rows, |i, _| b[n_lo + i] - (n_lo + i) as f64);
    let coef = design
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::NonConvergence(format!("least squares: {e}")))?;
    Ok(SubleadingReport::from_coefficients(coef[0], coef[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hahn_b, subleading_report, HahnParams};

    #[test]
    fn recovers_analytic_expansion() {
        for p in [
            HahnParams::real_pair(0.75, 1.25).unwrap(),
            HahnParams::real_pair(0.5, 0.5).unwrap(),
            HahnParams::conjugate_pair(0.5, 1.0).unwrap(),
        ] {
            let b: Vec<f64> = (0..=400).map(|n| if n == 0 { 0.0 } else { hahn_b(n, &p) }).collect();
            let fit = fit_subleading(&b, 50, 400).unwrap();
            let exact = subleading_report(&p);
            assert!((fit.b1 - exact.b1).abs() < 1e-8);
            assert!((fit.b2 - exact.b2).abs() < 1e-5);
        }
    }

    #[test]
    fn window_validation() {
        assert!(fit_subleading(&[0.0; 10], 0, 8).is_err());
        assert!(fit_subleading(&[0.0; 10], 3, 5).is_err());
    }
}
