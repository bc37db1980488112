use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::special_fn::{euler_polynomial, euler_polynomials, RationalComplex};
use crate::{Error, Result};

use super::MomentTable;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `z = (1+iω)/2`.
fn half_line(omega: &BigRational) -> RationalComplex {
    let half = BigRational::new(1.into(), 2.into());
    RationalComplex::new(half.clone(), omega * half)
}

/// `μ_{2k} = (−4)^k E_{2k}((1+iω)/2)` for `C(t) = cos(ωt)/cosh t`.
pub fn euler_moment(k: usize, omega: &BigRational) -> Result<BigRational> {
    let e = euler_polynomial(2 * k, &half_line(omega))?;
    if !e.im.is_zero() {
        return Err(Error::Domain(format!("E_{}((1+iω)/2) has imaginary part {}", 2 * k, e.im)));
    }
    let mut scale = BigRational::one();
    for _ in 0..k {
        scale *= int(-4);
    }
    Ok(scale * e.re)
}

/// `μ_0..μ_{2k_max}` from Euler polynomials.
pub fn euler_moment_table(k_max: usize, omega: &BigRational) -> Result<MomentTable> {
    let mut entries = Vec::with_capacity(2 * k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            entries.push(BigRational::zero());
        }
        entries.push(euler_moment(k, omega)?);
    }
    MomentTable::new(entries, true, format!("euler(ω={omega})"))
}

/// `A_n` and `B_n` of the alternating family from
/// `A_{k+1}/A_k = ∏_{ℓ≤k} c_{0,ℓ}`, `B_{k+1}/B_k = (1+ω²)∏_{ℓ≤k} c_{1,ℓ}`,
/// `c_{η,ℓ} = 4ℓ²[ω² + (2ℓ+2η−1)²]`.
pub fn alternating_partition_closed(n_max: usize, omega: &BigRational) -> (Vec<BigRational>, Vec<BigRational>) {
    let w2 = omega * omega;
    let c = |eta: i64, l: i64| int(4 * l * l) * (&w2 + int((2 * l + 2 * eta - 1).pow(2)));
    let mut a = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let (mut pa, mut pb) = (BigRational::one(), BigRational::one());
    for k in 0..n_max {
        if k > 0 {
            pa *= c(0, k as i64);
            pb *= c(1, k as i64);
        }
        a.push(&a[k] * &pa);
        b.push(&b[k] * &pb * (BigRational::one() + &w2));
    }
    (a, b)
}

/// Determinant over a field by Gaussian elimination with nonzero pivoting.
fn det(mut m: Vec<Vec<RationalComplex>>) -> RationalComplex {
    let n = m.len();
    let mut acc = RationalComplex::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return RationalComplex::zero();
        };
        if p != k {
            m.swap(p, k);
            acc = -acc;
        }
        let pivot = m[k][k].clone();
        acc = &acc * &pivot;
        let inv = pivot.inv();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &inv;
            for j in k..n {
                let v = &m[i][j] - &(&f * &m[k][j]);
                m[i][j] = v;
            }
        }
    }
    acc
}

/// `det_{n×n} E_{2i+2j+4}(z) / det_{(n+1)×(n+1)} E_{2i+2j}(z)`.
pub fn euler_hankel_lhs(n: usize, z: &RationalComplex) -> Result<RationalComplex> {
    let e = euler_polynomials(4 * n, z);
    let shifted = (0..n).map(|i| (0..n).map(|j| e[2 * i + 2 * j + 4].clone()).collect()).collect();
    let plain = (0..=n).map(|i| (0..=n).map(|j| e[2 * i + 2 * j].clone()).collect()).collect();
    let den = det(plain);
    if den.is_zero() {
        return Err(Error::SingularMinor(n + 1));
    }
    Ok(&det(shifted) / &den)
}

/// `1 + Σ_{k=1}^n (1−z)_k (z)_k / (k!)²`, the Γ-product form expanded by
/// Pochhammer symbols.
pub fn euler_hankel_rhs(n: usize, z: &RationalComplex) -> RationalComplex {
    let one = RationalComplex::one();
    let mut term = RationalComplex::one();
    let mut sum = RationalComplex::one();
    let w = &one - z;
    for k in 1..=n {
        let kk = RationalComplex::from_integer(k as i64 - 1);
        let num = &(&w + &kk) * &(z + &kk);
        let den = RationalComplex::from_integer((k * k) as i64);
        term = &(&term * &num) / &den;
        sum = &sum + &term;
    }
    sum
}

/// Exact residual LHS − RHS of the Euler–Hankel identity.
pub fn euler_hankel_identity_check(n: usize, z: &RationalComplex) -> Result<RationalComplex> {
    Ok(&euler_hankel_lhs(n, z)? - &euler_hankel_rhs(n, z))
}

#[cfg(test)]
mod tests {
    use super::super::{hankel_ledger, moments_from_series, SeriesProvider};
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn moment_examples() {
        assert_eq!(euler_moment(0, &q(3, 7)).unwrap(), q(1, 1));
        assert_eq!(euler_moment(1, &q(1, 1)).unwrap(), q(2, 1));
        assert_eq!(euler_moment(2, &q(1, 1)).unwrap(), q(12, 1));
    }

    #[test]
    fn euler_matches_series() {
        for w in [q(1, 2), q(1, 1), q(3, 2)] {
            let a = euler_moment_table(8, &w).unwrap();
            let b = moments_from_series(&SeriesProvider::CosSech { omega: w.clone() }, 8).unwrap();
            assert_eq!(a.entries, b.entries);
        }
    }

    #[test]
    fn closed_partition_functions() {
        for w in [q(1, 2), q(1, 1), q(3, 2)] {
            let m = euler_moment_table(14, &w).unwrap();
            let l = hankel_ledger(&m, 7).unwrap();
            let (a, b) = alternating_partition_closed(6, &w);
            assert_eq!(&l.a[..7], &a[..7]);
            assert_eq!(&l.b[..7], &b[..7]);
        }
    }

    #[test]
    fn identity_examples() {
        let half = RationalComplex::from_ratios(1, 2, 0, 1);
        assert_eq!(euler_hankel_lhs(1, &half).unwrap(), RationalComplex::from_ratios(5, 4, 0, 1));
        assert!(euler_hankel_identity_check(1, &half).unwrap().is_zero());
        assert!(euler_hankel_identity_check(2, &half).unwrap().is_zero());
        let z = RationalComplex::from_ratios(1, 2, 1, 2);
        assert!(euler_hankel_identity_check(1, &z).unwrap().is_zero());
    }
}
