//! Complex log-gamma, gamma, reciprocal gamma and digamma.
//!
//! `ln Γ` uses upward recurrence to `|z| ≥ 15` followed by the Stirling
//! series with ten Bernoulli terms (truncation error below 1e−22 at the
//! switch point). For `Re z < 1/2` the reflection formula is used.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::{Error, Result};

const STIRLING_SWITCH: f64 = 15.0;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2k} / (2k (2k − 1)) for k = 1..10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// B_{2k} / (2k) for k = 1..10.
const DIGAMMA_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174_611.0 / 6600.0,
];

fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// True when `z` is (to rounding) a nonpositive integer.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// ln sin(πz), avoiding overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    // sin(πz) = e^{∓iπz}(1 − e^{±2iπz}) / (∓2i), choosing the growing exponential.
    if z.im > 0.0 {
        -i * PI * z - (Complex64::new(0.0, -2.0)).ln() + (Complex64::new(1.0, 0.0) - (i * 2.0 * PI * z).exp()).ln()
    } else {
        i * PI * z - (Complex64::new(0.0, 2.0)).ln() + (Complex64::new(1.0, 0.0) - (-i * 2.0 * PI * z).exp()).ln()
    }
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING_COEFFS {
        series += term * c;
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// Principal-branch `ln Γ(z)`.
///
/// For `Re z ≥ 1/2` the result is the analytic continuation of the real
/// log-gamma along horizontal lines; for `Re z < 1/2` the imaginary part
/// comes from reflection and is only determined modulo 2π.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma argument")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { func: "gamma", arg: format!("{z}") });
    }
    if z.re < 0.5 {
        let reflected = log_gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - reflected);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < STIRLING_SWITCH {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1/Γ(z)`, which is entire: zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "rgamma argument")?;
    if is_nonpositive_integer(z) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((-log_gamma(z)?).exp())
}

/// Real `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma_real requires x > 0, got {x}")));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// Digamma ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "digamma argument")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { func: "digamma", arg: format!("{z}") });
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        let cot = (z * PI).cos() / (z * PI).sin();
        return Ok(digamma(one - z)? - cot * PI);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < STIRLING_SWITCH {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut term = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for c in DIGAMMA_COEFFS {
        series += term * c;
        term *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - series - shift)
}

/// Rising factorial `(z)_n = z (z+1) ⋯ (z+n−1)` by direct product.
pub fn pochhammer(z: Complex64, n: u32) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (z + k as f64))
}

/// Exact rising factorial over the rationals.
pub fn pochhammer_exact(z: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, k| acc * (z + BigRational::from_integer(BigInt::from(k))))
}

/// `ln |(x)_n|` for real x, usable where the product would overflow.
pub fn ln_pochhammer_abs(x: f64, n: u32) -> f64 {
    (0..n).map(|k| (x + k as f64).abs().ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert!(rel(log_gamma(c(5.0, 0.0)).unwrap().re, 24f64.ln()) < 1e-14);
        assert!(rel(log_gamma(c(0.5, 0.0)).unwrap().re, PI.sqrt().ln()) < 1e-13);
        assert!(rel(gamma(c(10.0, 0.0)).unwrap().re, 362_880.0) < 1e-13);
        assert!(rel(log_gamma(c(1000.0, 0.0)).unwrap().re, 5905.220_423_209_181) < 1e-14);
    }

    #[test]
    fn modulus_on_the_line_re_one() {
        // |Γ(1+i)|² = π / sinh π
        let g = gamma(c(1.0, 1.0)).unwrap();
        assert!(rel(g.norm_sqr(), PI / PI.sinh()) < 1e-13);
        assert!((g.norm_sqr() - 0.272_029).abs() < 1e-6);
    }

    #[test]
    fn complex_reference_values() {
        // mpmath.loggamma(3+4j), loggamma(0.25-7.5j)
        let v = log_gamma(c(3.0, 4.0)).unwrap();
        assert!((v - c(-1.756_626_784_603_784, 4.742_664_438_034_658)).norm() < 1e-12);
        // reflection region: imaginary part only defined modulo 2π
        let v = log_gamma(c(0.25, -7.5)).unwrap();
        let r = c(-11.365_620_394_646_528, -7.220_462_821_847_432);
        assert!((v.re - r.re).abs() < 1e-12);
        assert!(((v.im - r.im) / (2.0 * PI)).fract().abs().min(1.0 - ((v.im - r.im) / (2.0 * PI)).fract().abs()) < 1e-12);
    }

    #[test]
    fn reflection_region() {
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!(rel(g.re, -2.0 * PI.sqrt()) < 1e-13);
        assert!(g.im.abs() < 1e-13);
        let g = gamma(c(-2.5, 0.3)).unwrap();
        let expected = gamma(c(-1.5, 0.3)).unwrap() / c(-2.5, 0.3);
        assert!((g - expected).norm() / expected.norm() < 1e-13);
    }

    #[test]
    fn poles_are_errors() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma(c(f64::NAN, 0.0)), Err(Error::NonFinite(_))));
        assert_eq!(rgamma(c(-2.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn digamma_values() {
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap().re + euler_gamma).abs() < 1e-14);
        let half = digamma(c(0.5, 0.0)).unwrap().re;
        assert!((half + euler_gamma + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(z+1) = ψ(z) + 1/z off the real axis
        let z = c(0.3, 2.2);
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
        assert!(d.norm() < 1e-13);
        let z = c(-1.7, 0.4);
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.0, 0.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 4), c(24.0, 0.0));
        assert_eq!(pochhammer(c(0.5, 0.0), 2), c(0.75, 0.0));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(pochhammer_exact(&half, 2), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn reflection_modulus_identity_grid() {
        // |Γ(1+iy)|² sinh(πy)/(πy) = 1
        for k in 1..=100 {
            let y = 0.1 * k as f64;
            let g = gamma(c(1.0, y)).unwrap();
            let r = g.norm_sqr() * (PI * y).sinh() / (PI * y);
            assert!((r - 1.0).abs() < 1e-12, "y = {y}: {r}");
        }
    }
}
