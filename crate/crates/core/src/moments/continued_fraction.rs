use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `G(z) = 1/(z − b_1²/(z − b_2²/(z − ⋯)))` truncated after `b_depth²`,
/// evaluated bottom-up. `b2[n] = b_n²`, index 0 unused.
pub fn continued_fraction_g(b2: &[f64], z: Complex64, depth: usize) -> Result<Complex64> {
    if depth >= b2.len() && depth > 0 {
        return Err(Error::InvalidParams(format!("depth {depth} exceeds available b² ({})", b2.len() - 1)));
    }
    let mut f = z;
    for k in (1..=depth).rev() {
        if f.norm() == 0.0 {
            return Err(Error::Pole { func: "continued_fraction_g", arg: format!("z = {z}") });
        }
        f = z - b2[k] / f;
    }
    if f.norm() == 0.0 {
        return Err(Error::Pole { func: "continued_fraction_g", arg: format!("z = {z}") });
    }
    Ok(f.inv())
}

fn series_mul(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|k| (0..=k).fold(BigRational::zero(), |acc, j| acc + &a[j] * &b[k - j]))
        .collect()
}

/// `1/(1 − x)` for a series with zero constant term.
fn geometric(x: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    out[0] = BigRational::one();
    for k in 1..len {
        out[k] = (1..=k).fold(BigRational::zero(), |acc, j| acc + &x[j] * &out[k - j]);
    }
    out
}

/// Coefficients of `u⁰..u^order` in the expansion of the depth-`depth`
/// continued fraction in `u = 1/z`.
///
/// `G_d = u`, `G_k = u / (1 − b_{k+1}² u G_{k+1})`, `G = G_0`.
pub fn continued_fraction_laurent(b2: &[BigRational], depth: usize, order: usize) -> Result<Vec<BigRational>> {
    if depth >= b2.len() && depth > 0 {
        return Err(Error::InvalidParams(format!("depth {depth} exceeds available b²")));
    }
    let len = order + 1;
    let mut u = vec![BigRational::zero(); len];
    if len > 1 {
        u[1] = BigRational::one();
    }
    let mut g = u.clone();
    for k in (0..depth).rev() {
        let ug = series_mul(&u, &g, len);
        let x: Vec<BigRational> = ug.iter().map(|c| c * &b2[k + 1]).collect();
        g = series_mul(&u, &geometric(&x, len), len);
    }
    Ok(g)
}

/// Moments `μ_k` read off `G = Σ μ_k u^{k+1}`.
pub fn moments_from_laurent(g: &[BigRational]) -> Vec<BigRational> {
    g.iter().skip(1).cloned().collect()
}

/// Coefficients of `G^{(κ)} − [κu + (1−κ)G]` through `u^{2·depth}`, using
/// depth-`depth` fractions for both sides.
///
/// Both truncations reproduce the first `2·depth` moments, so the residual
/// vanishes identically when `deformed_b2` is the κ-deformation of `b2`.
pub fn deformation_identity_residual(
    b2: &[BigRational],
    deformed_b2: &[BigRational],
    kappa: &BigRational,
    depth: usize,
) -> Result<Vec<BigRational>> {
    let order = 2 * depth;
    let g = continued_fraction_laurent(b2, depth, order)?;
    let gk = continued_fraction_laurent(deformed_b2, depth, order)?;
    let one_minus = BigRational::one() - kappa;
    Ok((0..=order)
        .map(|k| {
            let mut rhs = &g[k] * &one_minus;
            if k == 1 {
                rhs += kappa;
            }
            &gk[k] - rhs
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::{deform_b2_table, DeformationParams};

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn depth_zero_is_one_over_z() {
        let z = Complex64::new(0.3, 1.7);
        assert!((continued_fraction_g(&[0.0], z, 0).unwrap() - z.inv()).norm() < 1e-16);
    }

    #[test]
    fn sech_laurent_expansion() {
        let b2: Vec<BigRational> = (0..=6).map(|n| q(n * n, 1)).collect();
        let g = continued_fraction_laurent(&b2, 4, 7).unwrap();
        assert_eq!(g, vec![q(0, 1), q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(5, 1), q(0, 1), q(61, 1)]);
        assert_eq!(moments_from_laurent(&g)[6], q(61, 1));
    }

    #[test]
    fn float_matches_laurent_far_out() {
        let b2f: Vec<f64> = (0..=6).map(|n| (n * n) as f64).collect();
        let z = Complex64::new(40.0, 3.0);
        let g = continued_fraction_g(&b2f, z, 6).unwrap();
        let u = z.inv();
        let series = u + u.powi(3) + u.powi(5) * 5.0 + u.powi(7) * 61.0 + u.powi(9) * 1385.0;
        assert!((g - series).norm() < 1e-10 * g.norm());
    }

    #[test]
    fn deformation_identity_exact() {
        let b2: Vec<BigRational> = (0..=12).map(|n| q(n * n, 1)).collect();
        for kappa in [q(1, 4), q(1, 2), q(3, 4)] {
            let d = deform_b2_table(&b2, &DeformationParams::new(kappa.clone()).unwrap(), 10).unwrap();
            let r = deformation_identity_residual(&b2, &d, &kappa, 10).unwrap();
            assert!(r.iter().all(Zero::is_zero));
        }
    }
}
