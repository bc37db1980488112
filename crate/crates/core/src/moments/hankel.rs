use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

use super::MomentTable;

/// Leading Hankel minors of a moment table.
///
/// `z[n] = det μ_{i+j}`, `a[n] = det μ_{2i+2j}`, `b[n] = det μ_{2i+2j+2}`,
/// `c[n] = det μ_{2i+2j+4}`, all over `0 ≤ i, j < n`, with the empty
/// determinant equal to one. Each list stops where the moments run out or
/// at `n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelLedger {
    pub z: Vec<BigRational>,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

/// Leading minors `det h_{i+j}`, `0 ≤ i,j < n`, for `n = 0..=n_max`, by
/// fraction-free elimination on the integer matrix `D·h`.
///
/// Errors with [`Error::SingularMinor`] at the first vanishing minor.
pub fn hankel_leading_minors(h: &[BigRational], n_max: usize) -> Result<Vec<BigRational>> {
    if n_max > 0 && h.len() < 2 * n_max - 1 {
        return Err(Error::TooFewMoments { need: 2 * n_max - 1, have: h.len() });
    }
    let mut out = vec![BigRational::one()];
    if n_max == 0 {
        return Ok(out);
    }
    let used = &h[..2 * n_max - 1];
    let d = used.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = used.iter().map(|q| q.numer() * (&d / q.denom())).collect();
    let mut m: Vec<Vec<BigInt>> = (0..n_max).map(|i| (0..n_max).map(|j| ints[i + j].clone()).collect()).collect();
    let mut prev = BigInt::one();
    let mut d_pow = BigInt::one();
    for k in 0..n_max {
        let pivot = m[k][k].clone();
        d_pow *= &d;
        if pivot.is_zero() {
            return Err(Error::SingularMinor(k + 1));
        }
        out.push(BigRational::new(pivot.clone(), d_pow.clone()));
        for i in k + 1..n_max {
            for j in k + 1..n_max {
                let v = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    Ok(out)
}

/// Largest `n` whose minor over `h_{s+i+j}` fits in `len` moments.
fn fit(len: usize, shift: usize, n_max: usize) -> usize {
    // needs index shift + 2(n−1) ≤ len − 1
    if len <= shift {
        return 0;
    }
    ((len - 1 - shift) / 2 + 1).min(n_max)
}

/// Hankel ledger up to index `n_max`, computed in parallel.
pub fn hankel_ledger(m: &MomentTable, n_max: usize) -> Result<HankelLedger> {
    m.validate()?;
    let mu = &m.entries;
    if mu.len() < 2 * n_max.max(1) - 1 {
        return Err(Error::TooFewMoments { need: 2 * n_max - 1, have: mu.len() });
    }
    let even: Vec<BigRational> = mu.iter().step_by(2).cloned().collect();
    let z_n = fit(mu.len(), 0, n_max);
    let a_n = fit(even.len(), 0, n_max);
    let b_n = fit(even.len(), 1, n_max);
    let c_n = fit(even.len(), 2, n_max);
    let ((z, a), (b, c)) = rayon::join(
        || rayon::join(|| hankel_leading_minors(mu, z_n), || hankel_leading_minors(&even, a_n)),
        || {
            rayon::join(
                || hankel_leading_minors(even.get(1..).unwrap_or(&[]), b_n),
                || hankel_leading_minors(even.get(2..).unwrap_or(&[]), c_n),
            )
        },
    );
    Ok(HankelLedger { z: z?, a: a?, b: b?, c: c? })
}

impl HankelLedger {
    /// Checks `Z_{2n} = A_n B_n` and `Z_{2n+1} = A_{n+1} B_n` wherever all
    /// factors are present.
    pub fn split_consistent(&self) -> bool {
        (0..self.z.len()).all(|k| {
            let n = k / 2;
            let (ai, bi) = if k % 2 == 0 { (n, n) } else { (n + 1, n) };
            match (self.a.get(ai), self.b.get(bi)) {
                (Some(a), Some(b)) => self.z[k] == a * b,
                _ => true,
            }
        })
    }
}

impl HankelLedger {
    /// Rows `n, Z_n, A_n, B_n, C_n` as exact strings.
    pub fn rows(&self) -> Vec<[String; 5]> {
        let len = self.z.len().max(self.a.len()).max(self.b.len()).max(self.c.len());
        let show = |v: &Vec<BigRational>, n: usize| v.get(n).map(|q| format!("{}/{}", q.numer(), q.denom())).unwrap_or_default();
        (0..len).map(|n| [n.to_string(), show(&self.z, n), show(&self.a, n), show(&self.b, n), show(&self.c, n)]).collect()
    }
}
