use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::families::HahnParams;
use crate::special_fn::gauss_2f1_real;
use crate::{Error, Result};

const CASE_TOL: f64 = 1e-12;

/// Four continuous Hahn parameters with `Re > 0`, `c = a*`, `d = b*`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuousHahnParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// The parameter slices on which `ã_n` vanishes identically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainFormCase {
    /// `a = c > 0`, `b = d > 0`.
    RealEqual,
    /// `a = d = r + iω`, `b = c = r − iω`.
    Conjugate,
    /// `a = r + iω`, `b = 1 − r − iω`, `0 < r < 1`.
    Complementary,
}

impl ContinuousHahnParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let p = Self { a, b, c, d };
        let finite = [a, b, c, d].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite || [a, b, c, d].iter().any(|z| z.re <= 0.0) {
            return Err(Error::InvalidParams(format!("continuous Hahn parameters need Re > 0: {p:?}")));
        }
        if (c - a.conj()).norm() > CASE_TOL || (d - b.conj()).norm() > CASE_TOL {
            return Err(Error::InvalidParams(format!("continuous Hahn parameters need c = a*, d = b*: {p:?}")));
        }
        Ok(p)
    }

    pub fn real_equal(a: f64, b: f64) -> Result<Self> {
        let (a, b) = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
        Self::new(a, b, a, b)
    }

    pub fn conjugate(r: f64, omega: f64) -> Result<Self> {
        let a = Complex64::new(r, omega);
        Self::new(a, a.conj(), a.conj(), a)
    }

    pub fn complementary(r: f64, omega: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidParams(format!("complementary case needs 0 < r < 1, got {r}")));
        }
        let a = Complex64::new(r, omega);
        let b = Complex64::new(1.0, 0.0) - a;
        Self::new(a, b, a.conj(), b.conj())
    }

    pub fn case(&self) -> Option<ChainFormCase> {
        let close = |x: Complex64, y: Complex64| (x - y).norm() <= CASE_TOL;
        let real = [self.a, self.b].iter().all(|z| z.im.abs() <= CASE_TOL);
        if real && close(self.a, self.c) && close(self.b, self.d) {
            return Some(ChainFormCase::RealEqual);
        }
        if close(self.a, self.d) && close(self.b, self.c) {
            return Some(ChainFormCase::Conjugate);
        }
        if close(self.a + self.b, Complex64::new(1.0, 0.0)) && self.a.re < 1.0 {
            return Some(ChainFormCase::Complementary);
        }
        None
    }

    /// The corresponding two-parameter family, when the wave functions are real.
    pub fn main_params(&self) -> Option<HahnParams> {
        match self.case()? {
            ChainFormCase::RealEqual => HahnParams::real_pair(self.a.re, self.b.re).ok(),
            ChainFormCase::Conjugate => HahnParams::conjugate_pair(self.a.re, self.a.im).ok(),
            ChainFormCase::Complementary => None,
        }
    }

    fn sum(&self) -> Complex64 {
        self.a + self.b + self.c + self.d
    }
}

/// Recurrence coefficients `A_n`, `B_n`, `C_n` of the monic-like
/// continuous Hahn recurrence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HahnCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

pub fn continuous_hahn_coefficients(p: &ContinuousHahnParams, n: usize) -> HahnCoefficients {
    let s = p.sum();
    let nf = n as f64;
    let an = if n == 0 {
        // (n+S−1)/(2n+S−1) cancels at n = 0
        -(p.a + p.c) * (p.a + p.d) / s
    } else {
        -(s + nf - 1.0) * (p.a + p.c + nf) * (p.a + p.d + nf) / ((s + 2.0 * nf - 1.0) * (s + 2.0 * nf))
    };
    let bn = (p.a + p.c + nf) * (p.a + p.d + nf) / (nf + 1.0);
    let cn = if n == 0 {
        if (s - 2.0).norm() <= CASE_TOL {
            // n/(2n+S−2) → 1/2 when S = 2
            (p.b + p.c - 1.0) * (p.b + p.d - 1.0) / (2.0 * (s - 1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    } else {
        nf * (p.b + p.c + nf - 1.0) * (p.b + p.d + nf - 1.0) / ((s + 2.0 * nf - 2.0) * (s + 2.0 * nf - 1.0))
    };
    HahnCoefficients { a: an, b: bn, c: cn }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BridgeValues {
    /// `ã_n = a + A_n + C_n` (real part; the imaginary part is within tolerance).
    pub a_tilde: f64,
    /// `b̃_n = √(−A_{n−1} C_n)`; `None` at `n = 0` or when the radicand is not
    /// a positive real.
    pub b_tilde: Option<f64>,
    /// `4 b̃_n`, the coefficient in the main-text time units.
    pub b_main: Option<f64>,
}

/// Chain-form coefficients at index `n`, failing with
/// [`Error::CaseMismatch`] unless `ã_n = 0` to 1e−12.
pub fn continuous_hahn_bridge(p: &ContinuousHahnParams, n: usize) -> Result<BridgeValues> {
    let cur = continuous_hahn_coefficients(p, n);
    let a_tilde = p.a + cur.a + cur.c;
    if p.case().is_none() || a_tilde.norm() > CASE_TOL {
        return Err(Error::CaseMismatch { n, residual: a_tilde.norm() });
    }
    let b_tilde = if n == 0 {
        None
    } else {
        let radicand = -continuous_hahn_coefficients(p, n - 1).a * cur.c;
        (radicand.re > 0.0 && radicand.im.abs() <= CASE_TOL * radicand.re.max(1.0)).then(|| radicand.re.sqrt())
    };
    Ok(BridgeValues { a_tilde: a_tilde.re, b_tilde, b_main: b_tilde.map(|b| 4.0 * b) })
}

fn poch(x: f64, n: usize) -> f64 {
    (0..n).map(|k| x + k as f64).product()
}

/// `|LHS − RHS|` of
/// `Σ_k (−1)^k C(n,k) (2a+2b−1+n)_k/(2a+2b)_k ₂F₁(a+b, 2b; 2a+2b+k; z)
///  = (a+b)_n (2b)_n/(2a+2b)_{2n} zⁿ ₂F₁(a+b+n, 2b+n; 2a+2b+2n; z)`.
pub fn hypergeometric_sum_identity_check(n: usize, a: f64, b: f64, z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) || n > 6 || !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("sum identity needs |z| < 1, n ≤ 6, a, b > 0; got n={n}, a={a}, b={b}, z={z}")));
    }
    let s2 = 2.0 * (a + b);
    let mut lhs = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        lhs += sign * binom * poch(s2 - 1.0 + n as f64, k) / poch(s2, k) * gauss_2f1_real(a + b, 2.0 * b, s2 + k as f64, z)?;
        binom *= (n - k) as f64 / (k + 1) as f64;
    }
    let nf = n as f64;
    let rhs = poch(a + b, n) * poch(2.0 * b, n) / poch(s2, 2 * n)
        * z.powi(n as i32)
        * gauss_2f1_real(a + b + nf, 2.0 * b + nf, s2 + 2.0 * nf, z)?;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::hahn_b;

    #[test]
    fn all_halves() {
        let p = ContinuousHahnParams::real_equal(0.5, 0.5).unwrap();
        assert_eq!(p.case(), Some(ChainFormCase::RealEqual));
        let v0 = continuous_hahn_bridge(&p, 0).unwrap();
        assert_eq!(v0.a_tilde, 0.0);
        assert_eq!(v0.b_tilde, None);
        let v1 = continuous_hahn_bridge(&p, 1).unwrap();
        assert!((v1.b_tilde.unwrap().powi(2) - 1.0 / 12.0).abs() < 1e-15);
        assert!((v1.b_main.unwrap().powi(2) - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn main_text_coefficients() {
        for p in [
            ContinuousHahnParams::real_equal(0.3, 0.7).unwrap(),
            ContinuousHahnParams::real_equal(0.25, 0.25).unwrap(),
            ContinuousHahnParams::conjugate(0.5, 0.8).unwrap(),
        ] {
            let main = p.main_params().unwrap();
            for n in 1..=20 {
                let v = continuous_hahn_bridge(&p, n).unwrap();
                let want = hahn_b(n, &main);
                assert!((v.b_main.unwrap() - want).abs() <= 1e-12 * want, "{p:?} n={n}");
            }
        }
    }

    #[test]
    fn complementary_case_has_vanishing_diagonal() {
        let p = ContinuousHahnParams::complementary(0.3, 0.5).unwrap();
        assert_eq!(p.case(), Some(ChainFormCase::Complementary));
        assert!(p.main_params().is_none());
        // at r = 1/2 the slice meets the conjugate one
        let q = ContinuousHahnParams::complementary(0.5, 0.5).unwrap();
        assert_eq!(q.case(), Some(ChainFormCase::Conjugate));
        for n in 0..=10 {
            assert!(continuous_hahn_bridge(&p, n).unwrap().a_tilde.abs() <= 1e-12);
            assert!(continuous_hahn_bridge(&q, n).unwrap().a_tilde.abs() <= 1e-12);
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Complex64::new(0.5, 0.3);
        let b = Complex64::new(0.8, 0.1);
        let p = ContinuousHahnParams::new(a, b, a.conj(), b.conj()).unwrap();
        assert_eq!(p.case(), None);
        assert!(matches!(continuous_hahn_bridge(&p, 2), Err(Error::CaseMismatch { n: 2, .. })));
        assert!(ContinuousHahnParams::new(a, b, a, b.conj()).is_err());
    }

    #[test]
    fn sum_identity() {
        assert_eq!(hypergeometric_sum_identity_check(0, 0.4, 0.9, 0.3).unwrap(), 0.0);
        assert!(hypergeometric_sum_identity_check(1, 0.5, 0.5, 0.5).unwrap() <= 1e-12);
        assert!(hypergeometric_sum_identity_check(3, 0.3, 0.9, 0.4).unwrap() <= 1e-10);
        assert!(hypergeometric_sum_identity_check(6, 1.1, 0.2, -0.7).unwrap() <= 1e-10);
        assert!(hypergeometric_sum_identity_check(2, 0.5, 0.5, 1.0).is_err());
    }
}
