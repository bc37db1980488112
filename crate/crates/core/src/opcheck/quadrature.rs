use crate::families::{hahn_b, hahn_measure, HahnParams};
use crate::{Error, Result};

use super::polynomial::pi_values;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss weights at the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_PANELS: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let c = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let s = f(c - r * XGK[j]) + f(c + r * XGK[j]);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * r, ((k - g) * r).abs())
}

/// Adaptive Gauss–Kronrod (7, 15): the panel with the largest error
/// estimate is bisected until the summed estimate is below `abs_tol`.
pub fn gauss_kronrod_adaptive<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, abs_tol: f64) -> Result<QuadratureResult> {
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut evaluations = 0;
    let mut eval = |a: f64, b: f64| -> Result<(f64, f64, f64, f64)> {
        let (v, e) = gk15(&f, a, b);
        evaluations += 15;
        if v.is_finite() && e.is_finite() {
            Ok((a, b, v, e))
        } else {
            Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")))
        }
    };
    panels.push(eval(lo, hi)?);
    let min_width = 1e-12 * (hi - lo).abs();
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= abs_tol {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (a, b, _, e) = panels.swap_remove(worst);
        if panels.len() >= MAX_PANELS || (b - a).abs() < min_width {
            return Err(Error::Quadrature(format!("no convergence on [{a}, {b}], estimate {e:e}, total {total_err:e}")));
        }
        let m = 0.5 * (a + b);
        panels.push(eval(a, m)?);
        panels.push(eval(m, b)?);
    }
    Ok(QuadratureResult {
        value: panels.iter().map(|p| p.2).sum(),
        error: panels.iter().map(|p| p.3).sum(),
        evaluations,
    })
}

/// `|∫ρ π_n π_m dx − δ_{nm}|` for the Hahn measure.
///
/// The interval `[−X, X]` grows until the integrand's exponential tail,
/// bounded by `|f(X)|/λ` with the local decay rate `λ`, is below 1e−14.
pub fn orthogonality_residual(p: &HahnParams, n: usize, m: usize) -> Result<f64> {
    p.validate()?;
    if n > 12 || m > 12 {
        return Err(Error::Domain(format!("orthogonality check limited to degrees ≤ 12, got ({n}, {m})")));
    }
    let top = n.max(m);
    let b: Vec<f64> = (0..=top + 1).map(|k| if k == 0 { 0.0 } else { hahn_b(k, p) }).collect();
    let f = |x: f64| -> f64 {
        let pi = pi_values(&b, top, x);
        hahn_measure(x, p).unwrap_or(f64::NAN) * pi[n] * pi[m]
    };
    let tail = |x: f64| -> f64 {
        let (f0, f1) = (f(x).abs() + f(-x).abs(), f(x + 1.0).abs() + f(-x - 1.0).abs());
        if f1 == 0.0 || f1 >= f0 {
            return if f0 == 0.0 { 0.0 } else { f64::INFINITY };
        }
        f0 / (f0 / f1).ln()
    };
    let mut x_max = 16.0;
    while tail(x_max) > 1e-14 {
        x_max *= 1.5;
        if x_max > 1e4 {
            return Err(Error::Quadrature("measure tail does not decay".into()));
        }
    }
    let panels = (x_max / 4.0).ceil() as usize;
    let w = x_max / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let (lo, hi) = (k as f64 * w, (k + 1) as f64 * w);
        let sym = |x: f64| f(x) + f(-x);
        total += gauss_kronrod_adaptive(sym, lo, hi, 1e-14 / panels as f64)?.value;
    }
    let delta = if n == m { 1.0 } else { 0.0 };
    Ok((total - delta).abs())
}
