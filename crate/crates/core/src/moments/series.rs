use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

use super::MomentTable;

/// Exact Taylor generators for autocorrelation functions `C(t)`.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesProvider {
    /// `sech^η t`.
    SechPower { eta: u32 },
    /// `cos(ωt) sech t`.
    CosSech { omega: BigRational },
    /// `2t / sinh 2t`.
    TwoTOverSinh,
    /// `sin(2ωt) / (ω sinh 2t)`.
    SinOverSinh { omega: BigRational },
    /// `e^{−t²/2}`.
    Gaussian,
    /// `C ≡ 1`.
    Constant,
    /// `κ + (1−κ) C(t)`.
    Mixture { kappa: BigRational, inner: Box<SeriesProvider> },
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorials(n: usize) -> Vec<BigRational> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(BigRational::one());
    for k in 1..=n {
        let next = &f[k - 1] * int(k as i64);
        f.push(next);
    }
    f
}

fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).fold(BigRational::zero(), |acc, j| acc + &a[j] * &b[k - j]))
        .collect()
}

fn reciprocal(a: &[BigRational]) -> Vec<BigRational> {
    let inv0 = a[0].recip();
    let mut out: Vec<BigRational> = Vec::with_capacity(a.len());
    out.push(inv0.clone());
    for k in 1..a.len() {
        let s = (1..=k).fold(BigRational::zero(), |acc, j| acc + &a[j] * &out[k - j]);
        out.push(-(s * &inv0));
    }
    out
}

/// Even series `Σ f(k) t^{2k}` truncated at `t^order`.
fn even_series(order: usize, f: impl Fn(usize) -> BigRational) -> Vec<BigRational> {
    (0..=order).map(|k| if k % 2 == 0 { f(k / 2) } else { BigRational::zero() }).collect()
}

fn sech(order: usize) -> Vec<BigRational> {
    let fact = factorials(order);
    reciprocal(&even_series(order, |k| fact[2 * k].recip()))
}

/// `sinh(x t)/(x t)` with `x` rational.
fn sinhc(order: usize, x: &BigRational, sign: i64) -> Vec<BigRational> {
    let fact = factorials(order + 1);
    let x2 = x * x;
    even_series(order, |k| {
        let mut v = fact[2 * k + 1].recip();
        for _ in 0..k {
            v = v * &x2 * int(sign);
        }
        v
    })
}

/// Taylor coefficients `c_0..c_order` of `C(t)`.
pub fn taylor_coefficients(p: &SeriesProvider, order: usize) -> Result<Vec<BigRational>> {
    let fact = factorials(order);
    Ok(match p {
        SeriesProvider::SechPower { eta } => {
            if *eta == 0 {
                return taylor_coefficients(&SeriesProvider::Constant, order);
            }
            let s = sech(order);
            (1..*eta).fold(s.clone(), |acc, _| mul(&acc, &s))
        }
        SeriesProvider::CosSech { omega } => {
            let w2 = omega * omega;
            let cos = even_series(order, |k| {
                let mut v = fact[2 * k].recip();
                for _ in 0..k {
                    v = -(v * &w2);
                }
                v
            });
            mul(&cos, &sech(order))
        }
        SeriesProvider::TwoTOverSinh => reciprocal(&sinhc(order, &int(2), 1)),
        SeriesProvider::SinOverSinh { omega } => {
            if omega.is_zero() {
                return Err(Error::InvalidParams("sin(2ωt)/(ω sinh 2t) needs ω ≠ 0".into()));
            }
            // [sin(2ωt)/(2ωt)] / [sinh(2t)/(2t)]
            let num = sinhc(order, &(omega * int(2)), -1);
            mul(&num, &reciprocal(&sinhc(order, &int(2), 1)))
        }
        SeriesProvider::Gaussian => {
            let half = BigRational::new((-1).into(), 2.into());
            even_series(order, |k| {
                let mut v = fact[k].recip();
                for _ in 0..k {
                    v = v * &half;
                }
                v
            })
        }
        SeriesProvider::Constant => {
            let mut v = vec![BigRational::zero(); order + 1];
            v[0] = BigRational::one();
            v
        }
        SeriesProvider::Mixture { kappa, inner } => {
            if !(kappa.is_positive() && kappa < &BigRational::one()) {
                return Err(Error::InvalidParams("mixture κ must lie in (0, 1)".into()));
            }
            let mut v: Vec<BigRational> =
                taylor_coefficients(inner, order)?.into_iter().map(|c| c * (BigRational::one() - kappa)).collect();
            v[0] = &v[0] + kappa;
            v
        }
    })
}

impl SeriesProvider {
    fn label(&self) -> String {
        match self {
            SeriesProvider::SechPower { eta } => format!("sech^{eta}"),
            SeriesProvider::CosSech { omega } => format!("cos({omega}t)sech"),
            SeriesProvider::TwoTOverSinh => "2t/sinh2t".into(),
            SeriesProvider::SinOverSinh { omega } => format!("sin({}t)/({omega}sinh2t)", omega * int(2)),
            SeriesProvider::Gaussian => "gaussian".into(),
            SeriesProvider::Constant => "constant".into(),
            SeriesProvider::Mixture { kappa, inner } => format!("{kappa}+(1-{kappa})[{}]", inner.label()),
        }
    }
}

/// `μ_0..μ_{2K}` with `μ_k = i^k k! c_k`.
pub fn moments_from_series(p: &SeriesProvider, k_max: usize) -> Result<MomentTable> {
    let order = 2 * k_max;
    let c = taylor_coefficients(p, order)?;
    let fact = factorials(order);
    let mut entries = Vec::with_capacity(order + 1);
    for (k, ck) in c.into_iter().enumerate() {
        if k % 2 == 1 {
            if !ck.is_zero() {
                return Err(Error::Domain(format!("odd Taylor coefficient c_{k} ≠ 0 gives an imaginary moment")));
            }
            entries.push(BigRational::zero());
        } else {
            let sign = if (k / 2) % 2 == 0 { int(1) } else { int(-1) };
            entries.push(sign * &fact[k] * ck);
        }
    }
    MomentTable::new(entries, true, p.label())
}
