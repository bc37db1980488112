use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::chain::{solve_chain, SolverConfig};
use crate::families::LanczosSequence;
use crate::{Error, Result};

/// `e^{itA}` for real symmetric `A` by spectral decomposition.
pub fn matrix_exp_i(a: &DMatrix<f64>, t: f64) -> Result<DMatrix<Complex64>> {
    check_symmetric(a)?;
    let eig = SymmetricEigen::new(a.clone());
    let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, t * l).exp()));
    Ok(&v * d * v.transpose())
}

fn check_symmetric(a: &DMatrix<f64>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::InvalidParams("matrix must be square".into()));
    }
    if a.iter().any(|x| !x.is_finite()) || (a - a.transpose()).amax() > 1e-14 * a.amax().max(1.0) {
        return Err(Error::InvalidParams("matrix must be finite and symmetric".into()));
    }
    Ok(())
}

fn phi_values(seq: &LanczosSequence, t: f64, n_trunc: usize) -> Result<Vec<f64>> {
    if let Some(v) = seq.phi_closed_range(n_trunc, t) {
        return v;
    }
    let cfg = SolverConfig { record_sites: Some(n_trunc + 1), ..Default::default() };
    let mut tr = solve_chain(seq, &[t], &cfg)?;
    let mut phi = tr.phi.pop().unwrap_or_default();
    phi.resize(n_trunc + 1, 0.0);
    Ok(phi)
}

/// `max |Σ_{n≤N} iⁿ φ_n(t) π_n(A) − e^{itA}|` over matrix entries.
///
/// `φ_n` comes from the closed form when the family has one, otherwise from
/// a chain solve.
pub fn evolution_expansion_residual(a: &DMatrix<f64>, seq: &LanczosSequence, t: f64, n_trunc: usize) -> Result<f64> {
    check_symmetric(a)?;
    let dim = a.nrows();
    let phi = phi_values(seq, t, n_trunc)?;
    let b = seq.coefficients(n_trunc + 1)?;
    let mut prev = DMatrix::<f64>::zeros(dim, dim);
    let mut cur = DMatrix::<f64>::identity(dim, dim);
    let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
    let mut phase = Complex64::new(1.0, 0.0);
    for n in 0..=n_trunc {
        let w = phase * phi[n];
        sum.zip_apply(&cur, |s, p| *s += w * p);
        if n == n_trunc {
            break;
        }
        let next = (a * &cur - &prev * b[n]) / b[n + 1];
        prev = std::mem::replace(&mut cur, next);
        phase *= Complex64::i();
    }
    let exact = matrix_exp_i(a, t)?;
    Ok((sum - exact).iter().map(|z| z.norm()).fold(0.0, f64::max))
}
