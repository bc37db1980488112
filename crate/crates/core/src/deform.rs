//! κ-deformation of symmetric Lanczos sequences.
//!
//! `C^{(κ)}(t) = κ + (1−κ)C(t)` adds a point mass `κ δ(x)` to the measure.
//! With `λ = κ/(1−κ)` and the ledger
//! `y_0 = 1`, `y_k = ∏_{j≤k} b_{2j−1}²/b_{2j}²`, `δ_0 = 0`, `δ_{n+1} = δ_n + y_n`,
//! the deformed coefficients are
//!
//! ```text
//! b_{2m}^{(κ)2}   = b_{2m}²   (1 + λδ_{m+1}) / (1 + λδ_m)
//! b_{2m+1}^{(κ)2} = b_{2m+1}² (1 + λδ_m)     / (1 + λδ_{m+1})
//! ```
//!
//! Everything here is generic over the scalar so the same code runs in `f64`
//! and in [`BigRational`].

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::moments::{b_from_moments, hankel_ledger, MomentTable};
use crate::{Error, Result};

/// Stationary value `κ ∈ (0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeformationParams<T> {
    kappa: T,
}

impl<T: Num + Clone + PartialOrd> DeformationParams<T> {
    pub fn new(kappa: T) -> Result<Self> {
        if kappa > T::zero() && kappa < T::one() {
            Ok(Self { kappa })
        } else {
            Err(Error::InvalidParams("κ must lie strictly between 0 and 1".into()))
        }
    }

    pub fn kappa(&self) -> &T {
        &self.kappa
    }

    /// `λ = κ/(1−κ)`.
    pub fn lambda(&self) -> T {
        self.kappa.clone() / (T::one() - self.kappa.clone())
    }
}

impl DeformationParams<BigRational> {
    /// Exact κ from a double (every finite double is a dyadic rational).
    pub fn from_f64_exact(kappa: f64) -> Result<Self> {
        let k = BigRational::from_f64(kappa).ok_or(Error::NonFinite("κ"))?;
        Self::new(k)
    }
}

/// `y_k` and `δ_n` of a sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaLedger<T> {
    /// `y_0 = 1, y_1, …, y_K`.
    pub y: Vec<T>,
    /// `δ_0 = 0, δ_1 = 1, …, δ_{K+1}`.
    pub delta: Vec<T>,
}

/// Ledger with `y_0..y_{k_max}` from `b2[n] = b_n²` (index 0 unused).
///
/// Needs `b2.len() > 2·k_max`.
pub fn delta_sequence<T: Num + Clone>(b2: &[T], k_max: usize) -> Result<DeltaLedger<T>> {
    if b2.len() <= 2 * k_max {
        return Err(Error::InvalidParams(format!(
            "δ ledger to k = {k_max} needs b² through n = {}, have {}",
            2 * k_max,
            b2.len().saturating_sub(1)
        )));
    }
    let mut y = Vec::with_capacity(k_max + 1);
    let mut delta = Vec::with_capacity(k_max + 2);
    y.push(T::one());
    delta.push(T::zero());
    delta.push(T::one());
    for k in 1..=k_max {
        let even = &b2[2 * k];
        if even.is_zero() {
            return Err(Error::ZeroCoefficient(2 * k));
        }
        let next = y[k - 1].clone() * b2[2 * k - 1].clone() / even.clone();
        delta.push(delta[k].clone() + next.clone());
        y.push(next);
    }
    Ok(DeltaLedger { y, delta })
}

/// Deformed `b_n²` for `n = 1..=n_max`, returned with index 0 set to zero.
pub fn deform_b2_table<T: Num + Clone + PartialOrd>(
    b2: &[T],
    params: &DeformationParams<T>,
    n_max: usize,
) -> Result<Vec<T>> {
    if b2.len() <= n_max {
        return Err(Error::InvalidParams(format!("need b² through n = {n_max}")));
    }
    let ledger = delta_sequence(b2, n_max / 2)?;
    let lambda = params.lambda();
    let weight = |m: usize| T::one() + lambda.clone() * ledger.delta[m].clone();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(T::zero());
    for n in 1..=n_max {
        let m = n / 2;
        let v = if n % 2 == 0 {
            b2[n].clone() * weight(m + 1) / weight(m)
        } else {
            b2[n].clone() * weight(m) / weight(m + 1)
        };
        out.push(v);
    }
    Ok(out)
}

/// Single deformed `b_n²`.
pub fn deform_b2<T: Num + Clone + PartialOrd>(b2: &[T], params: &DeformationParams<T>, n: usize) -> Result<T> {
    Ok(deform_b2_table(b2, params, n)?.swap_remove(n))
}

/// `(1/κ)[(1−κ) − 1/(1+λδ_{K+1})]`, the closed form of `Σ_{k=1}^K y_k^{(κ)}`.
pub fn telescoped_sum<T: Num + Clone + PartialOrd>(params: &DeformationParams<T>, delta_next: &T) -> T {
    let k = params.kappa().clone();
    let tail = T::one() / (T::one() + params.lambda() * delta_next.clone());
    ((T::one() - k.clone()) - tail) / k
}

/// Result of recovering κ from a deformed sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaEstimate<T> {
    /// `(1 + Σ_{k≤K} y_k)^{−1}` from the sequence alone.
    pub estimate: T,
    /// Same quantity from the telescoped closed form, when the undeformed
    /// ledger and κ are supplied.
    pub telescoped: Option<T>,
    /// Limit of the telescoped form as `δ → ∞`, which is κ itself.
    pub telescoped_limit: Option<T>,
    pub k_max: usize,
}

/// `κ ≈ 1/(1 + Σ_{k=1}^{K} y_k)` from the deformed `b_n²`.
///
/// Convergence is logarithmic in `K` for linear sequences, so `estimate` is
/// reported as is. `oracle` supplies the undeformed `b_n²` and κ for the
/// telescoped comparison.
pub fn stationary_kappa<T: Num + Clone + PartialOrd>(
    deformed_b2: &[T],
    k_max: usize,
    oracle: Option<(&[T], &DeformationParams<T>)>,
) -> Result<KappaEstimate<T>> {
    let ledger = delta_sequence(deformed_b2, k_max)?;
    // δ_{K+1} = 1 + Σ_{k=1}^K y_k
    let estimate = T::one() / ledger.delta[k_max + 1].clone();
    let (telescoped, telescoped_limit) = match oracle {
        Some((b2, params)) => {
            let base = delta_sequence(b2, k_max)?;
            let sum = telescoped_sum(params, &base.delta[k_max + 1]);
            let limit = params.kappa().clone();
            (Some(T::one() / (T::one() + sum)), Some(limit))
        }
        None => (None, None),
    };
    Ok(KappaEstimate { estimate, telescoped, telescoped_limit, k_max })
}

/// Floating-point view of an exact estimate.
pub fn kappa_estimate_to_f64(e: &KappaEstimate<BigRational>) -> KappaEstimate<f64> {
    let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
    KappaEstimate {
        estimate: f(&e.estimate),
        telescoped: e.telescoped.as_ref().map(f),
        telescoped_limit: e.telescoped_limit.as_ref().map(f),
        k_max: e.k_max,
    }
}

/// `μ_0` kept, `μ_k ↦ (1−κ)μ_k` for `k ≥ 1`.
pub fn deform_moments(m: &MomentTable, params: &DeformationParams<BigRational>) -> Result<MomentTable> {
    if !m.symmetric {
        return Err(Error::NotSymmetric);
    }
    if m.entries.first().map_or(true, |x| !x.is_one()) {
        return Err(Error::InvalidParams("moment table must have μ_0 = 1".into()));
    }
    let scale = BigRational::one() - params.kappa().clone();
    let entries = m
        .entries
        .iter()
        .enumerate()
        .map(|(k, v)| if k == 0 { v.clone() } else { v * &scale })
        .collect();
    Ok(MomentTable {
        entries,
        symmetric: true,
        source: format!("{} deformed κ={}", m.source, params.kappa()),
    })
}

/// `C_n − A_{n+1} δ_{n+1}` for `n = 0..=n_max`, where `C_n` and `A_n` are
/// the shifted and even Hankel determinants of a symmetric table and `δ`
/// comes from the inverted `b_n²`. Needs moments through `μ_{4n_max}`.
pub fn shifted_determinant_residuals(m: &MomentTable, n_max: usize) -> Result<Vec<BigRational>> {
    if !m.symmetric {
        return Err(Error::NotSymmetric);
    }
    let need = 4 * n_max + 1;
    if m.entries.len() < need {
        return Err(Error::TooFewMoments { need, have: m.entries.len() });
    }
    let b2 = b_from_moments(m, 2 * n_max)?;
    let ledger = delta_sequence(&b2, n_max)?;
    let hankel = hankel_ledger(m, n_max + 1)?;
    if hankel.c.len() <= n_max || hankel.a.len() <= n_max + 1 {
        return Err(Error::TooFewMoments { need, have: m.entries.len() });
    }
    Ok((0..=n_max).map(|n| &hankel.c[n] - &hankel.a[n + 1] * &ledger.delta[n + 1]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(r))
    }

    fn linear_b2(n_max: usize) -> Vec<BigRational> {
        (0..=n_max).map(|n| q((n * n) as i64, 1)).collect()
    }

    #[test]
    fn ledger_for_linear_sequence() {
        let l = delta_sequence(&linear_b2(8), 2).unwrap();
        assert_eq!(l.delta[1], q(1, 1));
        assert_eq!(l.y[1], q(1, 4));
        assert_eq!(l.delta[2], q(5, 4));
        assert_eq!(l.delta[3], q(89, 64));
    }

    #[test]
    fn deformed_linear_coefficients() {
        let p = DeformationParams::new(q(1, 2)).unwrap();
        let t = deform_b2_table(&linear_b2(4), &p, 3).unwrap();
        assert_eq!(&t[1..], &[q(1, 2), q(9, 2), q(8, 1)]);
        assert_eq!(deform_b2(&linear_b2(4), &p, 2).unwrap(), q(9, 2));
    }

    #[test]
    fn kappa_from_short_prefix() {
        let p = DeformationParams::new(q(1, 2)).unwrap();
        let base = linear_b2(8);
        let d = deform_b2_table(&base, &p, 4).unwrap();
        let e = stationary_kappa(&d, 1, Some((&base, &p))).unwrap();
        assert_eq!(e.estimate, q(9, 10));
        assert_eq!(e.telescoped, Some(q(9, 10)));
        assert_eq!(e.telescoped_limit, Some(q(1, 2)));
    }

    #[test]
    fn telescoping_is_exact() {
        for kappa in [q(1, 4), q(1, 2), q(3, 4), q(2, 7)] {
            let p = DeformationParams::new(kappa).unwrap();
            let base = linear_b2(42);
            let d = deform_b2_table(&base, &p, 40).unwrap();
            let dl = delta_sequence(&d, 20).unwrap();
            let bl = delta_sequence(&base, 21).unwrap();
            for k in 1..=20 {
                let raw = &dl.delta[k + 1] - BigRational::one();
                assert_eq!(raw, telescoped_sum(&p, &bl.delta[k + 1]), "K = {k}");
            }
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let pf = DeformationParams::new(0.25f64).unwrap();
        let pq = DeformationParams::new(q(1, 4)).unwrap();
        let bf: Vec<f64> = (0..=30).map(|n| (n * n) as f64).collect();
        let tf = deform_b2_table(&bf, &pf, 30).unwrap();
        let tq = deform_b2_table(&linear_b2(30), &pq, 30).unwrap();
        for n in 1..=30 {
            assert!((tf[n] - tq[n].to_f64().unwrap()).abs() < 1e-12 * tf[n]);
        }
    }

    #[test]
    fn undeformed_linear_estimate_decays() {
        let base: Vec<f64> = (0..=20_001).map(|n| (n * n) as f64).collect();
        let e1 = stationary_kappa(&base, 10, None).unwrap().estimate;
        let e2 = stationary_kappa(&base, 10_000, None).unwrap().estimate;
        assert!(e2 < e1 && e2 < 0.26);
    }

    #[test]
    fn invalid_kappa_and_zero_coefficient() {
        assert!(DeformationParams::new(1.0).is_err());
        assert!(DeformationParams::new(0.0).is_err());
        let b2 = vec![0.0, 1.0, 0.0];
        assert!(matches!(delta_sequence(&b2, 1), Err(Error::ZeroCoefficient(2))));
    }

    #[test]
    fn moment_deformation() {
        let m = MomentTable {
            entries: vec![q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(5, 1), q(0, 1), q(61, 1)],
            symmetric: true,
            source: "sech".into(),
        };
        let p = DeformationParams::new(q(1, 2)).unwrap();
        let d = deform_moments(&m, &p).unwrap();
        assert_eq!(d.entries, vec![q(1, 1), q(0, 1), q(1, 2), q(0, 1), q(5, 2), q(0, 1), q(61, 2)]);
        // κ₁ then κ₂ is κ₁ + κ₂ − κ₁κ₂
        let p2 = DeformationParams::new(q(1, 3)).unwrap();
        let twice = deform_moments(&d, &p2).unwrap();
        let once = deform_moments(&m, &DeformationParams::new(q(2, 3)).unwrap()).unwrap();
        assert_eq!(twice.entries, once.entries);
        let asym = MomentTable { symmetric: false, ..m };
        assert!(matches!(deform_moments(&asym, &p), Err(Error::NotSymmetric)));
    }

    #[test]
    fn shifted_determinant_relation() {
        use crate::moments::{moments_from_series, SeriesProvider};
        use num_traits::Zero;
        let m = moments_from_series(&SeriesProvider::SechPower { eta: 1 }, 16).unwrap();
        let r = shifted_determinant_residuals(&m, 8).unwrap();
        assert_eq!(r.len(), 9);
        assert!(r.iter().all(|x| x.is_zero()));
        let m = moments_from_series(&SeriesProvider::CosSech { omega: q(1, 2) }, 12).unwrap();
        assert!(shifted_determinant_residuals(&m, 6).unwrap().iter().all(|x| x.is_zero()));
        assert!(shifted_determinant_residuals(&m, 7).is_err());
    }
}
