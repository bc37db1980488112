//! Self-contained identity and property battery, one named check per
//! invariant, used by `krylov verify`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{krylov_complexity, solve_chain, sum_rule_residual, SolverConfig};
use crate::deform::{deform_b2_table, deform_moments, shifted_determinant_residuals, stationary_kappa, DeformationParams};
use crate::families::{
    complexity_prefactor, hahn_b, mp_complexity, subleading_report, HahnParams, LanczosSequence,
};
use crate::moments::{
    b_from_moments, deformation_identity_residual, euler_hankel_identity_check, hankel_ledger, moments_from_series,
    SeriesProvider,
};
use crate::opcheck::{
    continuous_hahn_bridge, evolution_expansion_residual, hypergeometric_sum_identity_check, monic_exact,
    orthogonality_residual, ContinuousHahnParams,
};
use crate::special_fn::{elliptic_k, gamma, gauss_2f1_real, RationalComplex};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub module: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn() -> Result<(bool, String)>;

fn q(p: i64, r: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(r))
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn verdict(value: f64, bound: f64, what: &str) -> (bool, String) {
    (value <= bound, format!("{what} = {value:.3e} (bound {bound:.0e})"))
}

fn gamma_modulus() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for k in 1..=50 {
        let y = 0.2 * k as f64;
        let g = gamma(Complex64::new(1.0, y))?;
        dev = dev.max((g.norm_sqr() * (PI * y).sinh() / (PI * y) - 1.0).abs());
    }
    Ok(verdict(dev, 1e-12, "max |Γ(1+iy)|² sinh(πy)/(πy) − 1"))
}

fn gauss_log_form() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for &z in &[-0.9, -0.3, 0.2, 0.5, 0.95] {
        let want = -(-z as f64).ln_1p() / z;
        dev = dev.max((gauss_2f1_real(1.0, 1.0, 2.0, z)? / want - 1.0).abs());
    }
    Ok(verdict(dev, 1e-13, "max rel |₂F₁(1,1;2;z) + ln(1−z)/z|"))
}

fn elliptic_values() -> Result<(bool, String)> {
    let d = (elliptic_k(0.0)? - PI / 2.0).abs() + (elliptic_k(0.5)? - 1.854_074_677_301_372).abs();
    Ok(verdict(d, 1e-14, "|K(0) − π/2| + |K(1/2) − ref|"))
}

fn closed_vs_chain() -> Result<(bool, String)> {
    let grid: Vec<f64> = (1..=6).map(|k| 0.5 * k as f64).collect();
    let seqs = [
        LanczosSequence::hahn(HahnParams::real_pair(0.25, 0.75)?)?,
        LanczosSequence::hahn(HahnParams::real_pair(0.5, 0.5)?)?,
        LanczosSequence::hahn(HahnParams::conjugate_pair(0.5, 1.0)?)?,
        LanczosSequence::meixner_pollaczek(2.0)?,
    ];
    let cfg = SolverConfig { record_sites: Some(21), ..Default::default() };
    let mut dev = 0.0f64;
    for seq in &seqs {
        let tr = solve_chain(seq, &grid, &cfg)?;
        for (i, &t) in grid.iter().enumerate() {
            if let Some(c) = seq.phi_closed_range(20, t) {
                dev = dev.max(worst(c?.iter().zip(&tr.phi[i]).map(|(a, b)| (a - b).abs())));
            }
        }
    }
    Ok(verdict(dev, 1e-8, "max |φ_n^chain − φ_n^closed|, n ≤ 20, t ≤ 3"))
}

fn special_case_table() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for &t in &[0.5, 1.0, 2.0] {
        let c = |s: LanczosSequence| s.autocorrelation_closed(t).expect("closed form");
        let cases = [
            (c(LanczosSequence::meixner_pollaczek(3.0)?)?, 1.0 / t.cosh().powi(3)),
            (c(LanczosSequence::hahn(HahnParams::real_pair(0.5, 0.5)?)?)?, 2.0 * t / (2.0 * t).sinh()),
            (
                c(LanczosSequence::hahn(HahnParams::real_pair(0.25, 0.25)?)?)?,
                2.0 * elliptic_k(t.tanh().powi(2))? / (PI * t.cosh()),
            ),
            (
                c(LanczosSequence::hahn(HahnParams::conjugate_pair(0.5, 0.75)?)?)?,
                (3.0 * t).sin() / (1.5 * (2.0 * t).sinh()),
            ),
        ];
        dev = dev.max(worst(cases.iter().map(|(x, y)| (x / y - 1.0).abs())));
    }
    Ok(verdict(dev, 1e-10, "max relative deviation from elementary forms"))
}

fn subleading_reduction() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for &(a, b) in &[(0.75, 1.25), (0.3, 0.9), (1.7, 0.2)] {
        let r = subleading_report(&HahnParams::real_pair(a, b)?);
        dev = dev.max((r.criterion - (a - b) * (a - b) / 2.0).abs());
    }
    Ok(verdict(dev, 1e-14, "max |criterion − (a−b)²/2|"))
}

fn prefactor_presets() -> Result<(bool, String)> {
    let d = (complexity_prefactor(&HahnParams::real_pair(0.5, 1.0)?)? - 0.5).abs()
        + (complexity_prefactor(&HahnParams::real_pair(0.5, 0.5)?)? - PI * PI / 32.0).abs();
    Ok(verdict(d, 1e-13, "k∞ deviation for MP η=2 and a=b=½"))
}

fn chain_sum_rule() -> Result<(bool, String)> {
    let grid: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
    let tr = solve_chain(&LanczosSequence::linear(), &grid, &SolverConfig { record_sites: Some(1), ..Default::default() })?;
    Ok(verdict(worst(sum_rule_residual(&tr)), 1e-9, "max |Σφ_n² − 1| for b_n = n, t ≤ 5"))
}

fn chain_mp_complexity() -> Result<(bool, String)> {
    let grid: Vec<f64> = (1..=8).map(|k| 0.5 * k as f64).collect();
    let mut dev = 0.0f64;
    for eta in [1.0, 2.0] {
        let tr = solve_chain(&LanczosSequence::meixner_pollaczek(eta)?, &grid, &SolverConfig { record_sites: Some(1), ..Default::default() })?;
        let k = krylov_complexity(&tr, 1)?;
        for (i, &t) in grid.iter().enumerate() {
            dev = dev.max((k.values[i] / mp_complexity(t, eta, 1)? - 1.0).abs());
        }
    }
    Ok(verdict(dev, 1e-6, "max relative |K − η sinh²t|, t ≤ 4"))
}

fn inversion_sech() -> Result<(bool, String)> {
    for eta in 1..=4u32 {
        let m = moments_from_series(&SeriesProvider::SechPower { eta }, 10)?;
        let b2 = b_from_moments(&m, 10)?;
        for n in 1..=10i64 {
            if b2[n as usize] != q(n * (n - 1 + eta as i64), 1) {
                return Ok((false, format!("η = {eta}: b_{n}² = {}", b2[n as usize])));
            }
        }
    }
    Ok((true, "b_n² = n(n−1+η) exactly, η = 1..4, n ≤ 10".into()))
}

fn inversion_cos_sech() -> Result<(bool, String)> {
    for (p, r) in [(1, 2), (1, 1), (3, 2)] {
        let w = q(p, r);
        let m = moments_from_series(&SeriesProvider::CosSech { omega: w.clone() }, 10)?;
        let b2 = b_from_moments(&m, 10)?;
        for n in 1..=10i64 {
            let mut want = q(n * n, 1);
            if n % 2 == 1 {
                want += &w * &w;
            }
            if b2[n as usize] != want {
                return Ok((false, format!("ω = {w}: b_{n}² = {}", b2[n as usize])));
            }
        }
    }
    Ok((true, "alternating b_n² exact, ω ∈ {1/2, 1, 3/2}, n ≤ 10".into()))
}

fn hankel_split() -> Result<(bool, String)> {
    let m = moments_from_series(&SeriesProvider::TwoTOverSinh, 12)?;
    let ok = hankel_ledger(&m, 12)?.split_consistent();
    Ok((ok, "Z_{2n} = A_nB_n, Z_{2n+1} = A_{n+1}B_n for 2t/sinh 2t".into()))
}

fn euler_hankel() -> Result<(bool, String)> {
    let points = [
        RationalComplex::from_ratios(1, 2, 1, 2),
        RationalComplex::from_ratios(1, 2, 0, 1),
        RationalComplex::from_ratios(1, 3, 0, 1),
        RationalComplex::from_ratios(1, 2, 3, 4),
        RationalComplex::from_ratios(2, 5, 0, 1),
    ];
    for z in &points {
        for n in 0..=4 {
            let r = euler_hankel_identity_check(n, z)?;
            if !r.is_zero() {
                return Ok((false, format!("n = {n}, z = {z}: residual {r}")));
            }
        }
    }
    Ok((true, "residual ≡ 0, n ≤ 4, five rational points".into()))
}

fn continued_fraction_deformation() -> Result<(bool, String)> {
    let b2: Vec<BigRational> = (0..=12).map(|n| q(n * n, 1)).collect();
    let p = DeformationParams::new(q(1, 3))?;
    let d = deform_b2_table(&b2, &p, 12)?;
    let r = deformation_identity_residual(&b2, &d, &q(1, 3), 6)?;
    Ok((r.iter().all(|x| x.is_zero()), "G^(κ) = κ/z + (1−κ)G through u^12".into()))
}

fn deform_commutes_with_inversion() -> Result<(bool, String)> {
    let base = moments_from_series(&SeriesProvider::SechPower { eta: 1 }, 8)?;
    let b2: Vec<BigRational> = (0..=8).map(|n| q(n * n, 1)).collect();
    for (p, r) in [(1, 4), (1, 2), (3, 4)] {
        let params = DeformationParams::new(q(p, r))?;
        let inv = b_from_moments(&deform_moments(&base, &params)?, 8)?;
        let fwd = deform_b2_table(&b2, &params, 8)?;
        if inv[1..=8] != fwd[1..=8] {
            return Ok((false, format!("κ = {p}/{r} differs")));
        }
    }
    Ok((true, "inversion of mixed moments = deform_b, n ≤ 8".into()))
}

fn shifted_determinants() -> Result<(bool, String)> {
    let m = moments_from_series(&SeriesProvider::SechPower { eta: 2 }, 12)?;
    let ok = shifted_determinant_residuals(&m, 6)?.iter().all(|x| x.is_zero());
    Ok((ok, "C_n = A_{n+1}δ_{n+1}, n ≤ 6".into()))
}

fn telescoping() -> Result<(bool, String)> {
    let b2: Vec<BigRational> = (0..=41).map(|n| q(n * n, 1)).collect();
    let p = DeformationParams::new(q(1, 2))?;
    let d = deform_b2_table(&b2, &p, 41)?;
    let e = stationary_kappa(&d, 20, Some((&b2, &p)))?;
    let ok = e.telescoped.as_ref() == Some(&e.estimate) && e.telescoped_limit.as_ref() == Some(&q(1, 2));
    Ok((ok, format!("raw estimate {:.6} equals telescoped form; limit κ", e.estimate.to_f64().unwrap_or(f64::NAN))))
}

fn orthogonality() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for p in [HahnParams::real_pair(0.5, 0.5)?, HahnParams::real_pair(0.25, 0.75)?, HahnParams::conjugate_pair(0.6, 0.4)?] {
        for n in 0..=4 {
            for m in n..=4 {
                dev = dev.max(orthogonality_residual(&p, n, m)?);
            }
        }
    }
    Ok(verdict(dev, 1e-9, "max |∫ρπ_nπ_m − δ_nm|, n, m ≤ 4"))
}

fn hahn_bridge() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for p in [ContinuousHahnParams::real_equal(0.3, 1.1)?, ContinuousHahnParams::conjugate(0.7, 0.4)?] {
        let main = p.main_params().expect("real case");
        for n in 1..=20 {
            let v = continuous_hahn_bridge(&p, n)?.b_main.unwrap_or(f64::NAN);
            dev = dev.max((v / hahn_b(n, &main) - 1.0).abs());
        }
    }
    Ok(verdict(dev, 1e-12, "max relative |4b̃_n − b_n|, n ≤ 20"))
}

fn sum_identity() -> Result<(bool, String)> {
    let mut dev = 0.0f64;
    for n in 0..=6 {
        for &(a, b) in &[(0.3, 0.9), (1.2, 0.4), (0.5, 0.5)] {
            for &z in &[-0.6, 0.25, 0.7] {
                dev = dev.max(hypergeometric_sum_identity_check(n, a, b, z)?);
            }
        }
    }
    Ok(verdict(dev, 1e-10, "max |LHS − RHS| on grid"))
}

fn expansion() -> Result<(bool, String)> {
    let mut a = DMatrix::from_fn(6, 6, |i, j| ((i * 7 + j * 3) as f64).sin() + ((j * 7 + i * 3) as f64).sin());
    let norm = a.clone().symmetric_eigen().eigenvalues.amax();
    a /= norm;
    let r = evolution_expansion_residual(&a, &LanczosSequence::hermite(), 1.5, 60)?;
    Ok(verdict(r, 1e-8, "‖Σ iⁿφ_nπ_n(A) − e^{itA}‖_max, Hermite, t = 1.5, N = 60"))
}

fn favard_exact() -> Result<(bool, String)> {
    let m = moments_from_series(&SeriesProvider::TwoTOverSinh, 10)?;
    let b2 = b_from_moments(&m, 10)?;
    let known: Vec<BigRational> = (0..=10i64).map(|n| if n == 0 { q(0, 1) } else { q(4 * n.pow(4), 4 * n * n - 1) }).collect();
    for x in [q(1, 3), q(-5, 2), q(7, 1)] {
        for n in 0..=10 {
            if monic_exact(&b2, n, &x) != monic_exact(&known, n, &x) {
                return Ok((false, format!("P_{n}({x}) differs")));
            }
        }
    }
    Ok((true, "monic P_n from inverted moments = from b_n², n ≤ 10".into()))
}

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("special_fn", "gamma-modulus-identity", gamma_modulus),
    ("special_fn", "gauss-2f1-log-form", gauss_log_form),
    ("special_fn", "elliptic-k-values", elliptic_values),
    ("families", "special-case-table", special_case_table),
    ("families", "subleading-criterion-reduction", subleading_reduction),
    ("families", "complexity-prefactor-presets", prefactor_presets),
    ("chain", "closed-form-equivalence", closed_vs_chain),
    ("chain", "sum-rule", chain_sum_rule),
    ("chain", "mp-complexity", chain_mp_complexity),
    ("moments", "inversion-sech-power", inversion_sech),
    ("moments", "inversion-cos-sech", inversion_cos_sech),
    ("moments", "hankel-symmetric-split", hankel_split),
    ("moments", "euler-hankel-identity", euler_hankel),
    ("moments", "continued-fraction-deformation", continued_fraction_deformation),
    ("deform", "moment-coefficient-commutation", deform_commutes_with_inversion),
    ("deform", "shifted-determinant-relation", shifted_determinants),
    ("deform", "telescoping", telescoping),
    ("opcheck", "orthogonality", orthogonality),
    ("opcheck", "continuous-hahn-bridge", hahn_bridge),
    ("opcheck", "hypergeometric-sum-identity", sum_identity),
    ("opcheck", "evolution-expansion", expansion),
    ("opcheck", "favard-exact", favard_exact),
];

/// Names of all checks, in report order.
pub fn check_names() -> Vec<String> {
    CHECKS.iter().map(|(m, n, _)| format!("{m}/{n}")).collect()
}

/// Runs the checks whose `module/name` contains `filter` (all when `None`).
pub fn run_checks(filter: Option<&str>) -> Vec<CheckOutcome> {
    CHECKS
        .par_iter()
        .filter(|(m, n, _)| filter.map_or(true, |f| format!("{m}/{n}").contains(f)))
        .map(|(module, name, f)| {
            let (passed, detail) = match f() {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome { module: module.to_string(), name: name.to_string(), passed, detail }
        })
        .collect()
}
