//! Gauss hypergeometric function ₂F₁(a, b; c; z).
//!
//! Evaluation regions:
//! - `|z| ≤ 3/4`: the defining power series;
//! - `|1 − z| ≤ 1/2` otherwise: the `z → 1` connection formulas, including the
//!   logarithmic forms when `c − a − b` is an integer. Their series in `1 − z`
//!   cancel badly once `|ab(1 − z)|` is large, and there the Maclaurin series
//!   is summed instead;
//! - `|z/(z − 1)| ≤ 1/2` or `|1/(1 − z)| ≤ 1/2`: Pfaff transformation
//!   followed by one of the above (this covers the whole negative axis).
//!
//! When `c − a − b` lies within [`INTEGER_SNAP`] of an integer it is treated
//! as that integer. Within [`NEAR_INTEGER`] of an integer the two-term
//! connection formula cancels badly, so the value is instead continued from
//! `|1 − z| = 1/2` by Taylor recentering of the hypergeometric equation.

use num_complex::Complex64;

use super::gamma::{digamma, is_nonpositive_integer, log_gamma};
use crate::{Error, Result};

const MAX_TERMS: usize = 20_000;
const SERIES_TOL: f64 = 1e-17;
/// Below this radius the Maclaurin series is preferred over the connection
/// formulas, whose gamma-function prefactors cost a few digits.
const DIRECT_RADIUS: f64 = 0.75;
pub const INTEGER_SNAP: f64 = 1e-12;
pub const NEAR_INTEGER: f64 = 0.05;
const ODE_MAX_STEPS: usize = 4000;
/// Largest `|ab(1 − z)|` handed to the connection formulas.
const CONNECTION_SIZE: f64 = 1.0;
const LONG_SERIES_TERMS: usize = 4_000_000;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn terminating_degree(a: Complex64, b: Complex64) -> Option<usize> {
    let deg = |x: Complex64| is_nonpositive_integer(x).then(|| (-x.re) as usize);
    match (deg(a), deg(b)) {
        (Some(p), Some(q)) => Some(p.min(q)),
        (p, q) => p.or(q),
    }
}

/// Plain power series; `max_terms` bounds the work for slowly converging `z`.
fn power_series(a: Complex64, b: Complex64, c: Complex64, z: Complex64, max_terms: usize) -> Result<Complex64> {
    let mut term = one();
    let mut sum = one();
    let mut small = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        if term.norm() <= SERIES_TOL * sum.norm() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence(format!("2F1({a}, {b}; {c}; {z}) series after {max_terms} terms")))
}

/// Γ(num…)/Γ(den…); zero when a denominator sits on a pole.
fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    if den.iter().any(|&d| is_nonpositive_integer(d)) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &x in num {
        acc += log_gamma(x)?;
    }
    for &x in den {
        acc -= log_gamma(x)?;
    }
    Ok(acc.exp())
}

/// Connection formulas around `z = 1`, written in terms of `w = 1 − z`
/// and `ln w` (passed separately so `w` may underflow without losing the
/// logarithm).
fn near_one(a: Complex64, b: Complex64, c: Complex64, w: Complex64, ln_w: Complex64) -> Result<Complex64> {
    let m = c - a - b;
    let snapped = m.im.abs() < INTEGER_SNAP && (m.re - m.re.round()).abs() < INTEGER_SNAP;

    if ln_w.re == f64::NEG_INFINITY {
        // z = 1 exactly: Gauss summation.
        if m.re > 0.0 {
            return gamma_ratio(&[c, m], &[c - a, c - b]);
        }
        return Err(Error::Domain(format!("2F1({a}, {b}; {c}; 1) diverges (Re(c−a−b) ≤ 0)")));
    }

    if snapped {
        let m0 = m.re.round() as i64;
        return near_one_integer(a, b, m0, w, ln_w);
    }

    let dist = (m.re - m.re.round()).abs().max(m.im.abs());
    if dist < NEAR_INTEGER && w.norm() > 0.0 {
        if let Some(v) = continue_from_half(a, b, c, w)? {
            return Ok(v);
        }
    }

    let t1 = gamma_ratio(&[c, m], &[c - a, c - b])?;
    let t1 = if t1.norm() == 0.0 { t1 } else { t1 * power_series(a, b, one() - m, w, MAX_TERMS)? };
    let t2 = gamma_ratio(&[c, -m], &[a, b])?;
    let t2 = if t2.norm() == 0.0 {
        t2
    } else {
        t2 * (m * ln_w).exp() * power_series(c - a, c - b, one() + m, w, MAX_TERMS)?
    };
    Ok(t1 + t2)
}

/// Series value and derivative at `z`.
fn series_with_derivative(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let f = power_series(a, b, c, z, MAX_TERMS)?;
    let d = power_series(a + 1.0, b + 1.0, c + 1.0, z, MAX_TERMS)? * a * b / c;
    Ok((f, d))
}

/// Analytic continuation along the ray from `w = ŵ/2` to `w`, where
/// `w = 1 − z`, by repeated Taylor expansion of
/// `z(1−z)F'' + [c − (a+b+1)z]F' − abF = 0`. Each step halves `|w|`, staying
/// at half the distance to the singular point. Returns `None` when the
/// starting point is too far from the origin for the power series.
fn continue_from_half(a: Complex64, b: Complex64, c: Complex64, w: Complex64) -> Result<Option<Complex64>> {
    let dir = w / w.norm();
    let mut w0 = dir * 0.5;
    let z_start = one() - w0;
    if z_start.norm() > 0.9 {
        return Ok(None);
    }
    let (mut f, mut df) = series_with_derivative(a, b, c, z_start)?;
    let ab1 = a + b + 1.0;
    for _ in 0..ODE_MAX_STEPS {
        if (w0 - w).norm() <= 1e-15 * w.norm() {
            return Ok(Some(f));
        }
        let w1 = if w0.norm() * 0.5 > w.norm() { w0 * 0.5 } else { w };
        let h = w0 - w1;
        let z0 = one() - w0;
        let p0 = z0 * w0;
        let p1 = w0 * 2.0 - 1.0;
        let q0 = c - ab1 + ab1 * w0;
        // g_k = f_k h^k keeps the scaled coefficients O(1) however small |w| gets
        let (mut gk, mut gk1) = (f, df * h);
        let mut val = gk;
        let mut der = Complex64::new(0.0, 0.0);
        let mut small = 0;
        for k in 0..MAX_TERMS {
            let kf = k as f64;
            val += gk1;
            der += gk1 * (kf + 1.0);
            if gk1.norm() <= SERIES_TOL * val.norm() {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            if k + 1 == MAX_TERMS {
                return Err(Error::NonConvergence("2F1 Taylor continuation".into()));
            }
            let gk2 = ((a + kf) * (b + kf) * gk * h * h - (p1 * kf + q0) * (kf + 1.0) * gk1 * h) / (p0 * ((kf + 1.0) * (kf + 2.0)));
            gk = gk1;
            gk1 = gk2;
        }
        der /= h;
        f = val;
        df = der;
        w0 = w1;
    }
    Err(Error::NonConvergence("2F1 Taylor continuation step limit".into()))
}

/// Logarithmic connection formulas for `c = a + b + m` with integer `m`.
fn near_one_integer(a: Complex64, b: Complex64, m: i64, w: Complex64, ln_w: Complex64) -> Result<Complex64> {
    let k = m.unsigned_abs() as usize;
    let kf = k as f64;
    let c = a + b + m as f64;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };

    // Finite polynomial part.
    let (fa, fb, fpre) = if m >= 0 {
        (a, b, if k == 0 { Complex64::new(0.0, 0.0) } else { gamma_ratio(&[Complex64::new(kf, 0.0), c], &[a + kf, b + kf])? })
    } else {
        let pre = gamma_ratio(&[Complex64::new(kf, 0.0), c], &[a, b])? * (-kf * ln_w).exp();
        (a - kf, b - kf, pre)
    };
    let mut finite = Complex64::new(0.0, 0.0);
    if k > 0 && fpre.norm() != 0.0 {
        let mut term = one();
        for n in 0..k {
            finite += term;
            let nf = n as f64;
            term *= (fa + nf) * (fb + nf) / ((nf + 1.0) * (1.0 - kf + nf)) * w;
        }
        finite *= fpre;
    }

    // Logarithmic series.
    let (la, lb, lpre) = if m >= 0 {
        (a + kf, b + kf, -gamma_ratio(&[c], &[a, b])? * sign * (kf * ln_w).exp())
    } else {
        (a, b, -gamma_ratio(&[c], &[a - kf, b - kf])? * sign)
    };
    if lpre.norm() == 0.0 {
        return Ok(finite);
    }
    let mut psi_a = digamma(la)?;
    let mut psi_b = digamma(lb)?;
    let euler_gamma = 0.577_215_664_901_532_9;
    let mut psi_n1 = -euler_gamma; // ψ(n+1)
    let mut psi_nk1 = -euler_gamma + (1..=k).map(|j| 1.0 / j as f64).sum::<f64>(); // ψ(n+k+1)
    let mut coeff = one() / (1..=k).map(|j| j as f64).product::<f64>(); // 1/(n! (n+k)!)
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coeff * (ln_w - psi_n1 - psi_nk1 + psi_a + psi_b);
        sum += term;
        if term.norm() == 0.0 && n > 0 {
            break;
        }
        if term.norm() <= SERIES_TOL * sum.norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        if n + 1 == MAX_TERMS {
            return Err(Error::NonConvergence("logarithmic 2F1 connection series".into()));
        }
        coeff *= (la + nf) * (lb + nf) / ((nf + 1.0) * (nf + 1.0 + kf)) * w;
        psi_a += (la + nf).inv();
        psi_b += (lb + nf).inv();
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nk1 += 1.0 / (nf + 1.0 + kf);
    }
    Ok(finite + lpre * sum)
}

/// ₂F₁ for `z` in the unit disc where the caller also knows `w = 1 − z`
/// and `ln w` accurately (e.g. `z = tanh² t`, `w = sech² t`).
pub fn gauss_2f1_with_complement(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    w: Complex64,
    ln_w: Complex64,
) -> Result<Complex64> {
    for (v, what) in [(a, "2F1 a"), (b, "2F1 b"), (c, "2F1 c"), (z, "2F1 z")] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(what));
        }
    }
    let degree = terminating_degree(a, b);
    if is_nonpositive_integer(c) && degree.map_or(true, |d| d as f64 >= -c.re + 1.0) {
        return Err(Error::Pole { func: "2F1", arg: format!("c = {c}") });
    }
    if z.norm() == 0.0 {
        return Ok(one());
    }
    if let Some(d) = degree {
        return power_series(a, b, c, z, d + 1);
    }
    if z.norm() <= DIRECT_RADIUS {
        return power_series(a, b, c, z, MAX_TERMS);
    }
    if w.norm() <= 0.5 {
        if (a * b * w).norm() > CONNECTION_SIZE && z.norm() < 1.0 {
            return power_series(a, b, c, z, LONG_SERIES_TERMS);
        }
        return near_one(a, b, c, w, ln_w);
    }
    if z.norm() < 0.9 {
        return power_series(a, b, c, z, MAX_TERMS);
    }
    Err(Error::NonConvergence(format!("no transformation covers 2F1 at z = {z}")))
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z).
///
/// Errors: [`Error::Pole`] when `c` is a nonpositive integer (and the series
/// does not terminate first); [`Error::NonConvergence`] when `z` is outside
/// the regions reachable by the transformations listed in the module docs;
/// [`Error::Domain`] for a divergent value at `z = 1`.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let w = one() - z;
    if z.norm() <= 0.5 || w.norm() <= 0.5 || terminating_degree(a, b).is_some() {
        let ln_w = if w.norm() == 0.0 { Complex64::new(f64::NEG_INFINITY, 0.0) } else { w.ln() };
        return gauss_2f1_with_complement(a, b, c, z, w, ln_w);
    }
    // Pfaff: F(a,b;c;z) = (1−z)^{−a} F(a, c−b; c; z/(z−1)).
    let zp = z / (z - 1.0);
    let wp = w.inv();
    if zp.norm() <= 0.5 || wp.norm() <= 0.5 {
        let ln_w = w.ln();
        let inner = gauss_2f1_with_complement(a, c - b, c, zp, wp, -ln_w)?;
        return Ok((-a * ln_w).exp() * inner);
    }
    gauss_2f1_with_complement(a, b, c, z, w, w.ln())
}

/// Real-argument convenience wrapper; returns the real part.
pub fn gauss_2f1_real(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let r = gauss_2f1(Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(c, 0.0), Complex64::new(x, 0.0))?;
    Ok(r.re)
}
