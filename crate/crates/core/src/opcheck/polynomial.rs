use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::families::LanczosSequence;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyMode {
    /// `x π_n = b_{n+1} π_{n+1} + b_n π_{n−1}`.
    Normalized,
    /// `P_n = π_n ∏_{k≤n} b_k`, i.e. `P_{n+1} = x P_n − b_n² P_{n−1}`.
    Monic,
}

#[derive(Clone, Debug)]
pub struct PolynomialEvaluator {
    pub seq: LanczosSequence,
    pub mode: PolyMode,
}

impl PolynomialEvaluator {
    pub fn new(seq: LanczosSequence, mode: PolyMode) -> Self {
        Self { seq, mode }
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        Ok(self.eval_all(n, x)?[n])
    }

    /// Values for degrees `0..=n_max`.
    pub fn eval_all(&self, n_max: usize, x: f64) -> Result<Vec<f64>> {
        match self.mode {
            PolyMode::Normalized => Ok(pi_values(&self.seq.coefficients(n_max + 1)?, n_max, x)),
            PolyMode::Monic => {
                let b2 = self.seq.b_squared(n_max)?;
                let mut p = vec![1.0; n_max + 1];
                if n_max >= 1 {
                    p[1] = x;
                }
                for k in 1..n_max {
                    p[k + 1] = x * p[k] - b2[k] * p[k - 1];
                }
                Ok(p)
            }
        }
    }
}

/// `π_0..π_{n_max}` at `x` from `b[k] = b_k` (`b.len() > n_max`).
pub fn pi_values(b: &[f64], n_max: usize, x: f64) -> Vec<f64> {
    let mut p = vec![0.0; n_max + 1];
    p[0] = 1.0;
    let mut prev = 0.0;
    for k in 0..n_max {
        let next = (x * p[k] - b[k] * prev) / b[k + 1];
        prev = p[k];
        p[k + 1] = next;
    }
    p
}

/// `π_n(x)` by forward recurrence.
pub fn eval_pi(seq: &LanczosSequence, n: usize, x: f64) -> Result<f64> {
    PolynomialEvaluator::new(seq.clone(), PolyMode::Normalized).eval(n, x)
}

/// Monic `P_n(x)` in rational arithmetic from `b2[k] = b_k²`.
pub fn monic_exact(b2: &[BigRational], n: usize, x: &BigRational) -> BigRational {
    let mut prev = BigRational::zero();
    let mut cur = BigRational::one();
    for k in 0..n {
        let next = x * &cur - if k == 0 { BigRational::zero() } else { &b2[k] * &prev };
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
