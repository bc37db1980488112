use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

use super::{hankel_ledger, HankelLedger, MomentTable};

/// Monic three-term recurrence `P_{k+1} = (x − α_k)P_k − β_k P_{k−1}`.
///
/// `beta[0] = μ_0`; `beta[k] = b_k²` for `k ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub alpha: Vec<BigRational>,
    pub beta: Vec<BigRational>,
}

fn need(m: &MomentTable, n_max: usize) -> Result<()> {
    if m.entries.len() < 2 * n_max + 1 {
        Err(Error::TooFewMoments { need: 2 * n_max + 1, have: m.entries.len() })
    } else {
        Ok(())
    }
}

/// `b_n² = Z_{n+1}Z_{n−1}/Z_n²` for `n = 1..=n_max` (index 0 is zero).
pub fn z_ratio_b2(ledger: &HankelLedger, n_max: usize) -> Result<Vec<BigRational>> {
    if ledger.z.len() < n_max + 2 {
        return Err(Error::TooFewMoments { need: 2 * n_max + 1, have: 2 * ledger.z.len().saturating_sub(1) });
    }
    let z = &ledger.z;
    let mut out = vec![BigRational::zero()];
    for n in 1..=n_max {
        out.push(&z[n + 1] * &z[n - 1] / (&z[n] * &z[n]));
    }
    Ok(out)
}

/// Symmetric split: `b_{2n}² = A_{n+1}B_{n−1}/(A_nB_n)`,
/// `b_{2n+1}² = A_nB_{n+1}/(A_{n+1}B_n)`.
pub fn split_b2(ledger: &HankelLedger, n_max: usize) -> Result<Vec<BigRational>> {
    let (a, b) = (&ledger.a, &ledger.b);
    let mut out = vec![BigRational::zero()];
    for k in 1..=n_max {
        let n = k / 2;
        let v = if k % 2 == 0 {
            match (a.get(n + 1), b.get(n - 1), a.get(n), b.get(n)) {
                (Some(a1), Some(b0), Some(a0), Some(b1)) => a1 * b0 / (a0 * b1),
                _ => return Err(Error::TooFewMoments { need: 2 * k + 1, have: 0 }),
            }
        } else {
            match (a.get(n), b.get(n + 1), a.get(n + 1), b.get(n)) {
                (Some(a0), Some(b1), Some(a1), Some(b0)) => a0 * b1 / (a1 * b0),
                _ => return Err(Error::TooFewMoments { need: 2 * k + 1, have: 0 }),
            }
        };
        out.push(v);
    }
    Ok(out)
}

/// Chebyshev algorithm on ordinary moments, exact.
///
/// `σ_{k,l} = σ_{k−1,l+1} − α_{k−1}σ_{k−1,l} − β_{k−1}σ_{k−2,l}` with
/// `σ_{−1,l} = 0`, `σ_{0,l} = μ_l`; then `β_k = σ_{k,k}/σ_{k−1,k−1}` and
/// `α_k = σ_{k,k+1}/σ_{k,k} − σ_{k−1,k}/σ_{k−1,k−1}`.
pub fn chebyshev_recurrence(mu: &[BigRational], n_max: usize) -> Result<Recurrence> {
    if mu.len() < 2 * n_max + 1 {
        return Err(Error::TooFewMoments { need: 2 * n_max + 1, have: mu.len() });
    }
    let top = mu.len() - 1;
    if mu[0].is_zero() {
        return Err(Error::SingularMinor(1));
    }
    let mut prev: Vec<BigRational> = vec![BigRational::zero(); mu.len()];
    let mut cur: Vec<BigRational> = mu.to_vec();
    let ratio = |row: &[BigRational], k: usize| -> Option<BigRational> {
        (k < top).then(|| &row[k + 1] / &row[k])
    };
    let mut alpha = vec![ratio(&cur, 0).unwrap_or_else(BigRational::zero)];
    let mut beta = vec![mu[0].clone()];
    for k in 1..=n_max {
        let (a, b) = (alpha[k - 1].clone(), beta[k - 1].clone());
        let mut next = vec![BigRational::zero(); mu.len()];
        for l in k..=top - k {
            let mut v = &cur[l + 1] - &a * &cur[l];
            if k >= 2 {
                v -= &b * &prev[l];
            }
            next[l] = v;
        }
        if next[k].is_zero() {
            return Err(Error::SingularMinor(k + 1));
        }
        beta.push(&next[k] / &cur[k - 1]);
        let a_k = match (ratio(&next, k), ratio(&cur, k - 1)) {
            (Some(r1), Some(r0)) if k < top - k => r1 - r0,
            _ => BigRational::zero(),
        };
        alpha.push(a_k);
        prev = cur;
        cur = next;
    }
    Ok(Recurrence { alpha, beta })
}

/// Exact `b_n²`, `n = 1..=n_max`, from moments `μ_0..μ_{2n_max}`.
///
/// The Hankel Z-ratio and the Chebyshev algorithm must agree exactly; for
/// symmetric tables the A/B split is checked as well.
pub fn b_from_moments(m: &MomentTable, n_max: usize) -> Result<Vec<BigRational>> {
    m.validate()?;
    need(m, n_max)?;
    let ledger = hankel_ledger(m, n_max + 1)?;
    let z_route = z_ratio_b2(&ledger, n_max)?;
    let cheb = chebyshev_recurrence(&m.entries[..2 * n_max + 1], n_max)?;
    for n in 1..=n_max {
        if cheb.beta[n] != z_route[n] {
            return Err(Error::RouteDisagreement(n));
        }
    }
    if m.symmetric {
        let split = split_b2(&ledger, n_max)?;
        if let Some(n) = (1..=n_max).find(|&n| split[n] != z_route[n]) {
            return Err(Error::RouteDisagreement(n));
        }
    }
    Ok(z_route)
}

/// Z-ratio inversion in double precision via LU determinants.
///
/// Kept to show the factorial ill-conditioning of the float path; never used
/// for results.
pub fn float_inversion_demo(m: &MomentTable, n_max: usize) -> Result<Vec<f64>> {
    need(m, n_max)?;
    let mu: Vec<f64> = m.entries.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect();
    let det = |n: usize| -> f64 {
        if n == 0 {
            1.0
        } else {
            DMatrix::from_fn(n, n, |i, j| mu[i + j]).determinant()
        }
    };
    let z: Vec<f64> = (0..=n_max + 1).map(det).collect();
    Ok(std::iter::once(0.0).chain((1..=n_max).map(|n| z[n + 1] * z[n - 1] / (z[n] * z[n]))).collect())
}
