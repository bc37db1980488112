//! The two-parameter continuous-Hahn family.
//!
//! ```text
//! b_n² = 4n (n+2a−1)(n+2b−1)(n+2a+2b−2) / ((2n+2a+2b−3)(2n+2a+2b−1))
//! φ_n(t) = F_n tanhⁿt / cosh^{4a}t · ₂F₁(a−b+½, 2a+n; a+b+n+½; tanh²t)
//! ```
//!
//! Parameters are either both real and positive or a conjugate pair
//! `a = r + iω`, `b = r − iω` with `r > 0`. All quantities depend on `(a, b)`
//! only through `s = a + b` and `ab`, which are real in both cases.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};
use serde::{Deserialize, Serialize};

use crate::special_fn::{gauss_2f1_with_complement, log_gamma, ln_gamma_real};
use crate::{Error, Result};

use super::{ln_cosh, ln_tanh, PhiValue};

/// Below this `|a − b|` real pairs are treated as the logarithmic case.
pub const EQUAL_PARAMS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum HahnParams {
    RealPair { a: f64, b: f64 },
    ConjugatePair { r: f64, omega: f64 },
}

impl HahnParams {
    pub fn real_pair(a: f64, b: f64) -> Result<Self> {
        let p = HahnParams::RealPair { a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn conjugate_pair(r: f64, omega: f64) -> Result<Self> {
        let p = HahnParams::ConjugatePair { r, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            HahnParams::RealPair { a, b } => {
                if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
                    return Err(Error::InvalidParams(format!("real pair requires a > 0 and b > 0, got a={a}, b={b}")));
                }
            }
            HahnParams::ConjugatePair { r, omega } => {
                if !(r.is_finite() && omega.is_finite() && r > 0.0 && omega != 0.0) {
                    return Err(Error::InvalidParams(format!(
                        "conjugate pair requires r > 0 and ω ≠ 0, got r={r}, ω={omega}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn a(&self) -> Complex64 {
        match *self {
            HahnParams::RealPair { a, .. } => Complex64::new(a, 0.0),
            HahnParams::ConjugatePair { r, omega } => Complex64::new(r, omega),
        }
    }

    pub fn b(&self) -> Complex64 {
        match *self {
            HahnParams::RealPair { b, .. } => Complex64::new(b, 0.0),
            HahnParams::ConjugatePair { r, omega } => Complex64::new(r, -omega),
        }
    }

    /// `a + b`.
    pub fn sum(&self) -> f64 {
        (self.a() + self.b()).re
    }

    /// `a·b`.
    pub fn product(&self) -> f64 {
        (self.a() * self.b()).re
    }

    /// `(a − b)²`, negative for conjugate pairs.
    pub fn diff_sq(&self) -> f64 {
        let d = self.a() - self.b();
        (d * d).re
    }

    /// `(a, b)` with `a ≤ b` for real pairs, so that `c − a − b ≥ 0` in ₂F₁.
    fn ordered(&self) -> (Complex64, Complex64) {
        match *self {
            HahnParams::RealPair { a, b } if a > b => (Complex64::new(b, 0.0), Complex64::new(a, 0.0)),
            _ => (self.a(), self.b()),
        }
    }

    pub fn is_conjugate(&self) -> bool {
        matches!(self, HahnParams::ConjugatePair { .. })
    }

    pub fn is_equal_pair(&self) -> bool {
        matches!(*self, HahnParams::RealPair { a, b } if (a - b).abs() < EQUAL_PARAMS_TOL)
    }
}

/// Exact counterpart of [`HahnParams`], carrying only `s = a + b` and `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnRational {
    pub sum: BigRational,
    pub product: BigRational,
}

impl HahnRational {
    pub fn real_pair(a: BigRational, b: BigRational) -> Self {
        Self { sum: &a + &b, product: a * b }
    }

    pub fn conjugate_pair(r: BigRational, omega: BigRational) -> Self {
        Self { sum: &r + &r, product: &r * &r + &omega * &omega }
    }

    /// Exact binary expansion of the float parameters.
    pub fn from_params(p: &HahnParams) -> Result<Self> {
        let q = |x: f64| BigRational::from_f64(x).ok_or(Error::NonFinite("Hahn parameter"));
        Ok(match *p {
            HahnParams::RealPair { a, b } => Self::real_pair(q(a)?, q(b)?),
            HahnParams::ConjugatePair { r, omega } => Self::conjugate_pair(q(r)?, q(omega)?),
        })
    }
}

fn b2_formula<T: Num + Clone + FromPrimitive>(n: u64, s: T, ab: T) -> T {
    let k = |v: u64| T::from_u64(v).expect("small integer");
    if n == 1 {
        // the (2s − 1) factors cancel; keeps s = ½ finite
        return k(16) * ab / (k(2) * s + k(1));
    }
    let nn = k(n);
    let m = k(n - 1);
    let pair = m.clone() * m.clone() + k(2) * s.clone() * m + k(4) * ab;
    let num = k(4) * nn.clone() * pair * (nn.clone() + k(2) * s.clone() - k(2));
    let den = (k(2) * nn.clone() + k(2) * s.clone() - k(3)) * (k(2) * nn + k(2) * s - k(1));
    num / den
}

/// `b_n²` for `n ≥ 1`.
pub fn hahn_b2(n: usize, p: &HahnParams) -> f64 {
    debug_assert!(n >= 1);
    b2_formula(n as u64, p.sum(), p.product())
}

/// Positive root of [`hahn_b2`].
pub fn hahn_b(n: usize, p: &HahnParams) -> f64 {
    hahn_b2(n, p).sqrt()
}

/// Exact `b_n²` for rational parameters.
pub fn hahn_b2_exact(n: usize, p: &HahnRational) -> BigRational {
    b2_formula(n as u64, p.sum.clone(), p.product.clone())
}

/// `ln F_n = Σ_{k≤n} ln b_k − ln n!`.
pub fn hahn_ln_prefactor(n: usize, p: &HahnParams) -> f64 {
    let mut acc = 0.0;
    for k in 1..=n {
        acc += 0.5 * hahn_b2(k, p).ln();
    }
    acc - ln_gamma_real(n as f64 + 1.0).expect("n! is finite")
}

fn hahn_phi_with_prefactor(n: usize, t: f64, p: &HahnParams, ln_pref: f64) -> Result<PhiValue> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParams(format!("hahn_phi requires finite t ≥ 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(PhiValue::exact(if n == 0 { 1.0 } else { 0.0 }));
    }
    let (a, b) = p.ordered();
    let lc = ln_cosh(t);
    let lt = ln_tanh(t);
    let ln_w = -2.0 * lc;
    let w = Complex64::new(ln_w.exp(), 0.0);
    let z = Complex64::new(t.tanh().powi(2), 0.0);
    let half = Complex64::new(0.5, 0.0);
    let nf = n as f64;
    let f = gauss_2f1_with_complement(a - b + half, a * 2.0 + nf, a + b + nf + 0.5, z, w, Complex64::new(ln_w, 0.0))?;
    if f.norm() == 0.0 {
        return Ok(PhiValue::exact(0.0));
    }
    let ln_mag = ln_pref + nf * lt - 4.0 * a.re * lc + f.norm().ln();
    let phase = -4.0 * a.im * lc + f.arg();
    Ok(PhiValue::from_log(ln_mag, phase.cos()))
}

/// `φ_n(t)` of the continuous-Hahn family, evaluated in log space.
pub fn hahn_phi(n: usize, t: f64, p: &HahnParams) -> Result<PhiValue> {
    p.validate()?;
    hahn_phi_with_prefactor(n, t, p, hahn_ln_prefactor(n, p))
}

/// `φ_0(t), …, φ_{n_max}(t)` sharing the prefactor recursion.
pub fn hahn_phi_range(n_max: usize, t: f64, p: &HahnParams) -> Result<Vec<PhiValue>> {
    p.validate()?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut ln_pref = 0.0;
    for n in 0..=n_max {
        if n > 0 {
            ln_pref += 0.5 * hahn_b2(n, p).ln() - (n as f64).ln();
        }
        out.push(hahn_phi_with_prefactor(n, t, p, ln_pref)?);
    }
    Ok(out)
}

/// Spectral density
/// `ρ(x) = Γ(2a+2b) / (8π Γ(2a)Γ(2b)Γ(a+b)²) · |Γ(a+ix/4) Γ(b+ix/4)|²`.
pub fn hahn_measure(x: f64, p: &HahnParams) -> Result<f64> {
    p.validate()?;
    let (a, b) = (p.a(), p.b());
    let s = p.sum();
    let ix = Complex64::new(0.0, x / 4.0);
    let ln_norm = ln_gamma_real(2.0 * s)?
        - (8.0 * PI).ln()
        - log_gamma(a * 2.0)?.re
        - log_gamma(b * 2.0)?.re
        - 2.0 * ln_gamma_real(s)?;
    let ln_body = 2.0 * (log_gamma(a + ix)?.re + log_gamma(b + ix)?.re);
    Ok((ln_norm + ln_body).exp())
}

/// Which late-time asymptote applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayRegime {
    /// Real `a ≠ b`: pure exponential `e^{−4 min(a,b) t}`.
    Exponential,
    /// `a = b`: extra factor of `t`.
    Logarithmic,
    /// Conjugate pair: damped oscillation.
    Oscillatory,
}

pub fn decay_regime(p: &HahnParams) -> DecayRegime {
    if p.is_conjugate() {
        DecayRegime::Oscillatory
    } else if p.is_equal_pair() {
        DecayRegime::Logarithmic
    } else {
        DecayRegime::Exponential
    }
}

/// Leading late-time behaviour of `C(t) = φ_0(t)`, dispatched on [`decay_regime`].
pub fn hahn_asymptote(t: f64, p: &HahnParams) -> Result<f64> {
    p.validate()?;
    match *p {
        HahnParams::RealPair { a, b } if (a - b).abs() < EQUAL_PARAMS_TOL => {
            let ln_c = (4.0f64).ln() + ln_gamma_real(4.0 * a)? - 2.0 * ln_gamma_real(2.0 * a)?;
            Ok(t * (ln_c - 4.0 * a * t).exp())
        }
        HahnParams::RealPair { a, b } => {
            let (a, b) = (a.min(b), a.max(b));
            let ln_c = ln_gamma_real(2.0 * a + 2.0 * b)? + ln_gamma_real(b - a)? - ln_gamma_real(a + b)? - ln_gamma_real(2.0 * b)?;
            Ok((ln_c - 4.0 * a * t).exp())
        }
        HahnParams::ConjugatePair { r, omega } => {
            let (amp, theta) = oscillation_amplitude_phase(r, omega)?;
            Ok(amp * (4.0 * omega * t + theta).cos() * (-4.0 * r * t).exp())
        }
    }
}

/// `(|X|, arg X)` for `X = 2^{4r} Γ(2r+½)/√π · Γ(2iω)/Γ(2r+2iω)`.
fn oscillation_amplitude_phase(r: f64, omega: f64) -> Result<(f64, f64)> {
    let ln_x = Complex64::new(4.0 * r * 2f64.ln() + ln_gamma_real(2.0 * r + 0.5)? - 0.5 * PI.ln(), 0.0)
        + log_gamma(Complex64::new(0.0, 2.0 * omega))?
        - log_gamma(Complex64::new(2.0 * r, 2.0 * omega))?;
    Ok((ln_x.re.exp(), ln_x.im))
}

/// The two-exponential form
/// `Γ(2a+2b)/Γ(a+b) · [Γ(a−b)e^{−4bt}/Γ(2a) + Γ(b−a)e^{−4at}/Γ(2b)]`,
/// valid for real `a ≠ b` and conjugate pairs.
pub fn hahn_asymptote_general(t: f64, p: &HahnParams) -> Result<f64> {
    p.validate()?;
    if p.is_equal_pair() {
        return Err(Error::Pole { func: "hahn_asymptote_general", arg: "a = b".into() });
    }
    let (a, b) = (p.a(), p.b());
    let pre = ln_gamma_real(2.0 * p.sum())? - ln_gamma_real(p.sum())?;
    let term = |x: Complex64, y: Complex64| -> Result<Complex64> {
        let ln = log_gamma(x - y)? - log_gamma(x * 2.0)? - y * 4.0 * t + pre;
        Ok(ln.exp())
    };
    Ok((term(a, b)? + term(b, a)?).re)
}

/// Zero crossings of the oscillatory asymptote in `[t_lo, t_hi]`:
/// `4ωt + arg(Γ(2iω)/Γ(2r+2iω)) = π/2 mod π`.
pub fn asymptote_zero_crossings(p: &HahnParams, t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
    let HahnParams::ConjugatePair { r, omega } = *p else {
        return Ok(Vec::new());
    };
    p.validate()?;
    let (_, theta) = oscillation_amplitude_phase(r, omega)?;
    let t_of = |k: f64| (PI / 2.0 + k * PI - theta) / (4.0 * omega);
    let (k_lo, k_hi) = {
        let k1 = (4.0 * omega * t_lo + theta - PI / 2.0) / PI;
        let k2 = (4.0 * omega * t_hi + theta - PI / 2.0) / PI;
        (k1.min(k2).floor() as i64, k1.max(k2).ceil() as i64)
    };
    let mut out: Vec<f64> = (k_lo..=k_hi).map(|k| t_of(k as f64)).filter(|t| *t >= t_lo && *t <= t_hi).collect();
    out.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    Ok(out)
}

/// Large-`n` expansion `b_n = n + b1 + b2/n + o(1/n)` and the sign criterion
/// `1/8 − b1²/2 − b2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubleadingReport {
    pub b1: f64,
    pub b2: f64,
    pub criterion: f64,
}

impl SubleadingReport {
    pub fn from_coefficients(b1: f64, b2: f64) -> Self {
        Self { b1, b2, criterion: 0.125 - 0.5 * b1 * b1 - b2 }
    }

    /// Positive: monotone decay; zero: logarithmic case; negative: oscillation.
    pub fn predicts_oscillation(&self, tol: f64) -> Option<bool> {
        if self.criterion > tol {
            Some(false)
        } else if self.criterion < -tol {
            Some(true)
        } else {
            None
        }
    }
}

pub fn subleading_report(p: &HahnParams) -> SubleadingReport {
    let s = p.sum();
    let b1 = s - 1.0;
    let b2 = -((s - 1.0).powi(2) + p.diff_sq() - 0.25) / 2.0;
    let report = SubleadingReport::from_coefficients(b1, b2);
    let reduced = p.diff_sq() / 2.0;
    debug_assert!((report.criterion - reduced).abs() <= 1e-12 * (1.0 + reduced.abs()));
    report
}

/// `k∞` in `K(t) ≃ k∞ e^{2t}`:
/// `Γ(2a+½)Γ(2b+½)Γ(a+b+½)² / (2Γ(2a)Γ(2b)Γ(a+b)Γ(a+b+1))`.
pub fn complexity_prefactor(p: &HahnParams) -> Result<f64> {
    p.validate()?;
    let (a, b) = (p.a(), p.b());
    let s = p.sum();
    let ln = log_gamma(a * 2.0 + 0.5)?.re + log_gamma(b * 2.0 + 0.5)?.re + 2.0 * ln_gamma_real(s + 0.5)?
        - 2f64.ln()
        - log_gamma(a * 2.0)?.re
        - log_gamma(b * 2.0)?.re
        - ln_gamma_real(s)?
        - ln_gamma_real(s + 1.0)?;
    Ok(ln.exp())
}

/// Exact `b_n²` for `n = 0..=n_max` (index 0 is zero).
pub fn hahn_b2_exact_table(n_max: usize, p: &HahnRational) -> Vec<BigRational> {
    std::iter::once(BigRational::zero()).chain((1..=n_max).map(|n| hahn_b2_exact(n, p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn coefficient_examples() {
        let p = HahnParams::real_pair(0.25, 0.25).unwrap();
        // b_n = n − ½ from n = 2 on; b_1² = μ_2 = ½
        assert!((hahn_b2(1, &p) - 0.5).abs() < 1e-15);
        for n in 2..50 {
            assert!((hahn_b(n, &p) - (n as f64 - 0.5)).abs() < 1e-12);
        }
        let p = HahnParams::real_pair(0.5, 0.5).unwrap();
        assert!((hahn_b(1, &p) - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        for n in 1..30 {
            let nf = n as f64;
            assert!((hahn_b2(n, &p) - 4.0 * nf.powi(4) / (4.0 * nf * nf - 1.0)).abs() < 1e-10 * nf * nf);
        }
    }

    #[test]
    fn conjugate_pair_coefficients() {
        // a = (1 + iω')/2 gives 4n²(n²+ω'²)/(4n²−1) with ω' = 2ω
        let p = HahnParams::conjugate_pair(0.5, 0.5).unwrap();
        assert!((hahn_b(1, &p) - (8.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let p = HahnParams::conjugate_pair(0.5, 1.0).unwrap();
        assert!((hahn_b2(1, &p) - 20.0 / 3.0).abs() < 1e-14);
        let w = 2.0;
        for n in 1..20 {
            let nf = n as f64;
            let want = 4.0 * nf * nf * (nf * nf + w * w) / (4.0 * nf * nf - 1.0);
            assert!((hahn_b2(n, &p) / want - 1.0).abs() < 1e-14);
        }
        let exact = HahnRational::conjugate_pair(q(1, 2), q(1, 1));
        assert_eq!(hahn_b2_exact(1, &exact), q(20, 3));
    }

    #[test]
    fn meixner_pollaczek_preset_is_exact() {
        // b = a + ½, η = 4a: b_n² = n(n − 1 + η)
        for (an, ad) in [(1, 4), (1, 2), (3, 4), (5, 4), (7, 3)] {
            let a = q(an, ad);
            let p = HahnRational::real_pair(a.clone(), &a + q(1, 2));
            let eta = &a * q(4, 1);
            for n in 1..=50i64 {
                let want = q(n, 1) * (q(n - 1, 1) + &eta);
                assert_eq!(hahn_b2_exact(n as usize, &p), want, "a = {a}, n = {n}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        let p = HahnParams::real_pair(0.5, 0.5).unwrap();
        assert_eq!(hahn_phi(0, 0.0, &p).unwrap().value, 1.0);
        assert_eq!(hahn_phi(3, 0.0, &p).unwrap().value, 0.0);
        let v = hahn_phi(0, 1.0, &p).unwrap().value;
        assert!((v - 2.0 / 2f64.sinh()).abs() < 1e-14, "{v}");
        let p = HahnParams::real_pair(0.25, 0.75).unwrap();
        let v = hahn_phi(1, 1.0, &p).unwrap().value;
        assert!((v - 1f64.tanh() / 1f64.cosh()).abs() < 1e-14);
        assert!((v - 0.493_554).abs() < 1e-6);
    }

    #[test]
    fn phi_swap_symmetry_and_positivity() {
        for &(a, b) in &[(0.3, 1.7), (0.5, 1.0), (2.0, 0.6), (0.25, 0.35)] {
            let p = HahnParams::real_pair(a, b).unwrap();
            let q = HahnParams::real_pair(b, a).unwrap();
            for n in 0..8 {
                for &t in &[0.1, 0.7, 1.5, 4.0, 9.0] {
                    let x = hahn_phi(n, t, &p).unwrap().value;
                    let y = hahn_phi(n, t, &q).unwrap().value;
                    assert!(x > 0.0);
                    assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300), "a={a} b={b} n={n} t={t}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn large_t_underflows_with_flag() {
        let p = HahnParams::real_pair(1.0, 2.0).unwrap();
        let v = hahn_phi(0, 500.0, &p).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.underflow);
        let v = hahn_phi(0, 20.0, &p).unwrap();
        assert!(!v.underflow && v.value > 0.0);
    }

    #[test]
    fn measure_values() {
        let p = HahnParams::real_pair(0.5, 0.5).unwrap();
        assert!((hahn_measure(0.0, &p).unwrap() - PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn asymptote_examples() {
        let p = HahnParams::real_pair(0.25, 0.75).unwrap();
        let v = hahn_asymptote(10.0, &p).unwrap();
        assert!((v / (2.0 * (-10f64).exp()) - 1.0).abs() < 1e-13);
        let exact = 1.0 / 10f64.cosh();
        assert!((exact / v - 1.0).abs() < 1e-8);
        let g = hahn_asymptote_general(10.0, &p).unwrap();
        assert!((g / v - 1.0).abs() < 1e-6);
        // logarithmic case a = b = ½: 4Γ(2)/Γ(1)² t e^{−2t}
        let p = HahnParams::real_pair(0.5, 0.5).unwrap();
        assert!((hahn_asymptote(10.0, &p).unwrap() / (40.0 * (-20f64).exp()) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn subleading_examples() {
        let r = subleading_report(&HahnParams::real_pair(0.75, 1.25).unwrap());
        assert!((r.criterion - 0.125).abs() < 1e-15);
        assert_eq!(r.predicts_oscillation(1e-9), Some(false));
        let r = subleading_report(&HahnParams::real_pair(0.6, 0.6).unwrap());
        assert!(r.criterion.abs() < 1e-15);
        assert_eq!(r.predicts_oscillation(1e-9), None);
        let r = subleading_report(&HahnParams::conjugate_pair(0.5, 1.0).unwrap());
        assert!((r.criterion + 2.0).abs() < 1e-14);
        assert_eq!(r.predicts_oscillation(1e-9), Some(true));
    }

    #[test]
    fn complexity_prefactor_values() {
        let k = |a, b| complexity_prefactor(&HahnParams::real_pair(a, b).unwrap()).unwrap();
        assert!((k(0.25, 0.75) - 0.25).abs() < 1e-14);
        assert!((k(0.5, 1.0) - 0.5).abs() < 1e-14);
        assert!((k(0.5, 0.5) - PI * PI / 32.0).abs() < 1e-14);
        // b = a + ½ is MP with η = 4a, where K = η sinh²t
        assert!((k(0.8, 1.3) - 0.8).abs() < 1e-13);
    }

    #[test]
    fn invalid_parameters() {
        assert!(HahnParams::real_pair(0.0, 1.0).is_err());
        assert!(HahnParams::conjugate_pair(-0.1, 1.0).is_err());
        assert!(HahnParams::conjugate_pair(0.5, 0.0).is_err());
    }
}
