//! Meixner–Pollaczek, alternating and Hermite sequences.

use crate::special_fn::ln_gamma_real;
use crate::{Error, Result};

use super::{ln_cosh, ln_tanh, PhiValue};

/// `b_n² = n(n − 1 + η)`.
pub fn mp_b2(n: usize, eta: f64) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0 + eta)
}

pub fn mp_b(n: usize, eta: f64) -> f64 {
    mp_b2(n, eta).sqrt()
}

fn check_eta(eta: f64) -> Result<()> {
    if eta.is_finite() && eta >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("Meixner–Pollaczek requires η ≥ 1, got {eta}")))
    }
}

/// `φ_n(t) = √((η)_n/n!) tanhⁿt / cosh^η t`.
pub fn mp_wavefunction(n: usize, t: f64, eta: f64) -> Result<PhiValue> {
    check_eta(eta)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParams(format!("mp_wavefunction requires finite t ≥ 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(PhiValue::exact(if n == 0 { 1.0 } else { 0.0 }));
    }
    let nf = n as f64;
    let ln_pref = 0.5 * (ln_gamma_real(eta + nf)? - ln_gamma_real(eta)? - ln_gamma_real(nf + 1.0)?);
    let ln_tanh_n = if n == 0 { 0.0 } else { nf * ln_tanh(t) };
    Ok(PhiValue::from_log(ln_pref + ln_tanh_n - eta * ln_cosh(t), 1.0))
}

/// `K(t) = η sinh²t` and `K^{(2)}(t) = η(η+1) sinh⁴t + η sinh²t`.
pub fn mp_complexity(t: f64, eta: f64, delta: u32) -> Result<f64> {
    check_eta(eta)?;
    let s2 = t.sinh().powi(2);
    match delta {
        0 => Ok(1.0),
        1 => Ok(eta * s2),
        2 => Ok(eta * (eta + 1.0) * s2 * s2 + eta * s2),
        _ => Err(Error::InvalidParams(format!("closed-form MP complexity only for δ ≤ 2, got {delta}"))),
    }
}

/// `b_n = n` for even `n`, `√(n² + ω²)` for odd `n`.
pub fn alternating_b2(n: usize, omega: f64) -> f64 {
    let nf = n as f64;
    if n % 2 == 0 {
        nf * nf
    } else {
        nf * nf + omega * omega
    }
}

pub fn alternating_b(n: usize, omega: f64) -> f64 {
    alternating_b2(n, omega).sqrt()
}

/// `C(t) = cos(ωt) / cosh t`.
pub fn alternating_c(t: f64, omega: f64) -> f64 {
    (omega * t).cos() * (-ln_cosh(t)).exp()
}

pub fn hermite_b(n: usize) -> f64 {
    (n as f64).sqrt()
}

/// `φ_n(t) = tⁿ e^{−t²/2} / √n!`.
pub fn hermite_phi(n: usize, t: f64) -> Result<PhiValue> {
    if !t.is_finite() {
        return Err(Error::NonFinite("hermite_phi time"));
    }
    if t == 0.0 {
        return Ok(PhiValue::exact(if n == 0 { 1.0 } else { 0.0 }));
    }
    let nf = n as f64;
    let sign = if t < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let ln = nf * t.abs().ln() - 0.5 * t * t - 0.5 * ln_gamma_real(nf + 1.0)?;
    Ok(PhiValue::from_log(ln, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_examples() {
        let v = mp_wavefunction(0, 1.0, 1.0).unwrap().value;
        assert!((v - 1.0 / 1f64.cosh()).abs() < 1e-15);
        assert!((v - 0.648_054).abs() < 1e-6);
        assert_eq!(mp_wavefunction(4, 0.0, 2.5).unwrap().value, 0.0);
        let v = mp_wavefunction(2, 1.0, 2.0).unwrap().value;
        let want = 3f64.sqrt() * 1f64.tanh().powi(2) / 1f64.cosh().powi(2);
        assert!((v - want).abs() < 1e-15);
        assert!((v - 0.421_920).abs() < 1e-6);
        assert!(mp_wavefunction(0, 1.0, 0.5).is_err());
    }

    #[test]
    fn mp_normalization_and_complexity() {
        // φ_n² = (η)_n/n! Tⁿ(1−T)^η is negative binomial
        for &eta in &[1.0, 2.0, 3.5] {
            for &t in &[0.3, 1.0, 2.0] {
                let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
                for n in 0..4000 {
                    let p = mp_wavefunction(n, t, eta).unwrap().value.powi(2);
                    let nf = n as f64;
                    s0 += p;
                    s1 += nf * p;
                    s2 += nf * nf * p;
                }
                assert!((s0 - 1.0).abs() < 1e-12);
                assert!((s1 / mp_complexity(t, eta, 1).unwrap() - 1.0).abs() < 1e-11);
                assert!((s2 / mp_complexity(t, eta, 2).unwrap() - 1.0).abs() < 1e-11);
            }
        }
        assert!((mp_complexity(1.0, 2.0, 1).unwrap() - 2.762_196).abs() < 1e-6);
        assert!((mp_complexity(1.0, 1.0, 2).unwrap() - 5.195_960).abs() < 1e-6);
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_b(2, 1.0), 2.0);
        assert!((alternating_b(1, 1.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((alternating_c(1.0, 1.0) - 1f64.cos() / 1f64.cosh()).abs() < 1e-15);
        assert!((alternating_c(1.0, 1.0) - 0.350_145).abs() < 1e-6);
    }

    #[test]
    fn hermite_chain_equation() {
        // ∂tφ_n = −√(n+1) φ_{n+1} + √n φ_{n−1}
        let h = 1e-5;
        for n in 1..10 {
            for &t in &[0.3, 1.1, 2.5] {
                let d = (hermite_phi(n, t + h).unwrap().value - hermite_phi(n, t - h).unwrap().value) / (2.0 * h);
                let rhs = -hermite_b(n + 1) * hermite_phi(n + 1, t).unwrap().value
                    + hermite_b(n) * hermite_phi(n - 1, t).unwrap().value;
                assert!((d - rhs).abs() < 1e-9);
            }
        }
    }
}
