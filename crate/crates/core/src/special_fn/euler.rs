//! Euler polynomials in exact Gaussian-rational arithmetic.
//!
//! Defined by `2 e^{xt} / (eᵗ + 1) = Σ Eₙ(x) tⁿ / n!` and computed from
//! `Eₙ(x) = xⁿ − ½ Σ_{k<n} C(n,k) E_k(x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RationalComplex;
use crate::{Error, Result};

pub const EULER_MAX_DEFAULT: usize = 64;

/// `E_0(z), …, E_{n_max}(z)`.
pub fn euler_polynomials(n_max: usize, z: &RationalComplex) -> Vec<RationalComplex> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut out: Vec<RationalComplex> = Vec::with_capacity(n_max + 1);
    let mut zpow = RationalComplex::one();
    let mut binom: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..=n_max {
        if n > 0 {
            zpow = &zpow * z;
            let mut next = vec![BigInt::one(); n + 1];
            for k in 1..n {
                next[k] = &binom[k - 1] + &binom[k];
            }
            binom = next;
        }
        let mut acc = RationalComplex::zero();
        for (k, e) in out.iter().enumerate() {
            acc = &acc + &e.scale(&BigRational::from_integer(binom[k].clone()));
        }
        out.push(&zpow - &acc.scale(&half));
    }
    out
}

/// Exact `Eₙ(z)` for `n ≤` [`EULER_MAX_DEFAULT`].
pub fn euler_polynomial(n: usize, z: &RationalComplex) -> Result<RationalComplex> {
    euler_polynomial_bounded(n, z, EULER_MAX_DEFAULT)
}

pub fn euler_polynomial_bounded(n: usize, z: &RationalComplex, n_max: usize) -> Result<RationalComplex> {
    if n > n_max {
        return Err(Error::InvalidParams(format!("euler_polynomial order {n} exceeds maximum {n_max}")));
    }
    Ok(euler_polynomials(n, z).pop().expect("non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn small_values() {
        let z = RationalComplex::from_ratios(7, 3, -2, 5);
        assert_eq!(euler_polynomial(0, &z).unwrap(), RationalComplex::one());
        let half = RationalComplex::from_ratios(1, 2, 0, 1);
        assert_eq!(euler_polynomial(2, &half).unwrap(), RationalComplex::from_ratios(-1, 4, 0, 1));
        let zw = RationalComplex::from_ratios(1, 2, 1, 2);
        assert_eq!(euler_polynomial(4, &zw).unwrap(), RationalComplex::from_ratios(3, 4, 0, 1));
        assert!(euler_polynomial(65, &zw).is_err());
    }

    #[test]
    fn generating_function_taylor_coefficients() {
        // (eᵗ + 1) Σ Eₙ(x) tⁿ/n! = 2 e^{xt}, compared coefficient by coefficient
        let n_max = 12;
        let mut fact = vec![BigRational::one()];
        for k in 1..=n_max {
            let prev = fact[k - 1].clone();
            fact.push(prev * q(k as i64, 1));
        }
        for x in [q(0, 1), q(1, 2), q(-3, 7), q(5, 2)] {
            let z = RationalComplex::from_real(x.clone());
            let e = euler_polynomials(n_max, &z);
            let coef: Vec<BigRational> = e.iter().zip(&fact).map(|(v, f)| {
                assert!(v.is_real());
                &v.re / f
            }).collect();
            for n in 0..=n_max {
                // [tⁿ] (eᵗ + 1) G(t)
                let mut lhs = coef[n].clone();
                for k in 0..=n {
                    lhs += &coef[k] / &fact[n - k];
                }
                let rhs = q(2, 1) * num_traits::pow(x.clone(), n) / &fact[n];
                assert!((lhs - rhs).is_zero(), "x = {x}, n = {n}");
            }
        }
    }

    #[test]
    fn symmetry() {
        // Eₙ(1 − x) = (−1)ⁿ Eₙ(x)
        let z = RationalComplex::from_ratios(1, 3, 2, 7);
        let zc = &RationalComplex::one() - &z;
        let a = euler_polynomials(20, &z);
        let b = euler_polynomials(20, &zc);
        for n in 0..=20 {
            let s = if n % 2 == 0 { b[n].clone() } else { -b[n].clone() };
            assert_eq!(a[n], s);
        }
    }
}
