use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Serialize};

use crate::deform::{deform_b2_table, DeformationParams};
use crate::{Error, Result};

use super::elementary::{alternating_b2, alternating_c, hermite_phi, mp_b2, mp_wavefunction};
use super::hahn::{hahn_b2, hahn_b2_exact_table, hahn_phi, hahn_phi_range, HahnParams, HahnRational};
use super::PhiValue;

/// Which rule generates `b_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    Hahn { params: HahnParams },
    MeixnerPollaczek { eta: f64 },
    Alternating { omega: f64 },
    /// `b_n = √n`.
    Hermite,
    /// `values[k] = b_{k+1}`.
    Explicit { values: Vec<f64> },
    Deformed { inner: Box<Family>, kappa: f64 },
}

/// A deterministic map `n ↦ b_n` with time scale `α`.
///
/// The scaled sequence is `α b_n`; its wave functions are `φ_n(αt)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LanczosSequence {
    pub family: Family,
    pub scale: f64,
}

fn exact(x: f64, what: &'static str) -> Result<BigRational> {
    BigRational::from_f64(x).ok_or(Error::NonFinite(what))
}

impl Family {
    fn validate(&self) -> Result<()> {
        match self {
            Family::Hahn { params } => params.validate(),
            Family::MeixnerPollaczek { eta } => {
                if eta.is_finite() && *eta >= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParams(format!("η must be ≥ 1, got {eta}")))
                }
            }
            Family::Alternating { omega } => {
                if omega.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite("ω"))
                }
            }
            Family::Hermite => Ok(()),
            Family::Explicit { values } => {
                if values.iter().all(|b| b.is_finite() && *b >= 0.0) {
                    Ok(())
                } else {
                    Err(Error::InvalidParams("explicit b_n must be finite and nonnegative".into()))
                }
            }
            Family::Deformed { inner, kappa } => {
                DeformationParams::new(*kappa)?;
                inner.validate()
            }
        }
    }

    /// Largest `n` for which `b_n` is defined.
    fn max_index(&self) -> Option<usize> {
        match self {
            Family::Explicit { values } => Some(values.len()),
            Family::Deformed { inner, .. } => inner.max_index(),
            _ => None,
        }
    }

    fn b2(&self, n_max: usize) -> Result<Vec<f64>> {
        if let Some(m) = self.max_index() {
            if n_max > m {
                return Err(Error::InvalidParams(format!("sequence defined only up to n = {m}, requested {n_max}")));
            }
        }
        let simple = |f: &dyn Fn(usize) -> f64| std::iter::once(0.0).chain((1..=n_max).map(f)).collect::<Vec<_>>();
        Ok(match self {
            Family::Hahn { params } => simple(&|n| hahn_b2(n, params)),
            Family::MeixnerPollaczek { eta } => simple(&|n| mp_b2(n, *eta)),
            Family::Alternating { omega } => simple(&|n| alternating_b2(n, *omega)),
            Family::Hermite => simple(&|n| n as f64),
            Family::Explicit { values } => simple(&|n| values[n - 1] * values[n - 1]),
            Family::Deformed { inner, kappa } => {
                let base = inner.b2(n_max)?;
                deform_b2_table(&base, &DeformationParams::new(*kappa)?, n_max)?
            }
        })
    }

    fn b2_exact(&self, n_max: usize) -> Result<Vec<BigRational>> {
        if let Some(m) = self.max_index() {
            if n_max > m {
                return Err(Error::InvalidParams(format!("sequence defined only up to n = {m}, requested {n_max}")));
            }
        }
        let int = |n: usize| BigRational::from_integer(n.into());
        let table = |f: &dyn Fn(usize) -> BigRational| {
            std::iter::once(BigRational::zero()).chain((1..=n_max).map(f)).collect::<Vec<_>>()
        };
        Ok(match self {
            Family::Hahn { params } => hahn_b2_exact_table(n_max, &HahnRational::from_params(params)?),
            Family::MeixnerPollaczek { eta } => {
                let eta = exact(*eta, "η")?;
                table(&|n| int(n) * (int(n) - BigRational::one() + eta.clone()))
            }
            Family::Alternating { omega } => {
                let w = exact(*omega, "ω")?;
                let w2 = &w * &w;
                table(&|n| if n % 2 == 0 { int(n * n) } else { int(n * n) + w2.clone() })
            }
            Family::Hermite => table(&int),
            Family::Explicit { values } => {
                let v = values.iter().map(|b| exact(*b, "b_n")).collect::<Result<Vec<_>>>()?;
                table(&|n| &v[n - 1] * &v[n - 1])
            }
            Family::Deformed { inner, kappa } => {
                let base = inner.b2_exact(n_max)?;
                deform_b2_table(&base, &DeformationParams::from_f64_exact(*kappa)?, n_max)?
            }
        })
    }

    fn autocorrelation(&self, t: f64) -> Option<Result<f64>> {
        match self {
            Family::Alternating { omega } => Some(Ok(alternating_c(t, *omega))),
            Family::Deformed { inner, kappa } => {
                inner.autocorrelation(t).map(|c| c.map(|c| kappa + (1.0 - kappa) * c))
            }
            _ => self.phi(0, t).map(|r| r.map(|p| p.value)),
        }
    }

    fn phi(&self, n: usize, t: f64) -> Option<Result<PhiValue>> {
        match self {
            Family::Hahn { params } => Some(hahn_phi(n, t, params)),
            Family::MeixnerPollaczek { eta } => Some(mp_wavefunction(n, t, *eta)),
            Family::Hermite => Some(hermite_phi(n, t)),
            Family::Alternating { .. } | Family::Deformed { .. } if n == 0 => {
                self.autocorrelation(t).map(|c| c.map(PhiValue::exact))
            }
            _ => None,
        }
    }
}

impl LanczosSequence {
    pub fn new(family: Family) -> Result<Self> {
        Self::with_scale(family, 1.0)
    }

    pub fn with_scale(family: Family, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParams(format!("scale α must be positive, got {scale}")));
        }
        family.validate()?;
        Ok(Self { family, scale })
    }

    pub fn hahn(params: HahnParams) -> Result<Self> {
        Self::new(Family::Hahn { params })
    }

    pub fn meixner_pollaczek(eta: f64) -> Result<Self> {
        Self::new(Family::MeixnerPollaczek { eta })
    }

    pub fn alternating(omega: f64) -> Result<Self> {
        Self::new(Family::Alternating { omega })
    }

    pub fn hermite() -> Self {
        Self { family: Family::Hermite, scale: 1.0 }
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        Self::new(Family::Explicit { values })
    }

    /// `b_n = n`, the Meixner–Pollaczek sequence with `η = 1`.
    pub fn linear() -> Self {
        Self { family: Family::MeixnerPollaczek { eta: 1.0 }, scale: 1.0 }
    }

    pub fn deformed(&self, kappa: f64) -> Result<Self> {
        Self::with_scale(Family::Deformed { inner: Box::new(self.family.clone()), kappa }, self.scale)
    }

    /// Largest admissible `n`, if the sequence is finite.
    pub fn max_index(&self) -> Option<usize> {
        self.family.max_index()
    }

    /// `b_n²` for `n = 0..=n_max`; entry 0 is zero and never used.
    pub fn b_squared(&self, n_max: usize) -> Result<Vec<f64>> {
        let mut v = self.family.b2(n_max)?;
        if self.scale != 1.0 {
            let s2 = self.scale * self.scale;
            v.iter_mut().for_each(|x| *x *= s2);
        }
        Ok(v)
    }

    /// `b_n` for `n = 0..=n_max`.
    pub fn coefficients(&self, n_max: usize) -> Result<Vec<f64>> {
        Ok(self.b_squared(n_max)?.into_iter().map(f64::sqrt).collect())
    }

    pub fn b(&self, n: usize) -> Result<f64> {
        Ok(self.b_squared(n)?[n].sqrt())
    }

    /// Exact `b_n²` with every double parameter read as its exact dyadic value.
    pub fn b_squared_exact(&self, n_max: usize) -> Result<Vec<BigRational>> {
        let mut v = self.family.b2_exact(n_max)?;
        if self.scale != 1.0 {
            let s = exact(self.scale, "α")?;
            let s2 = &s * &s;
            v.iter_mut().for_each(|x| *x = &*x * &s2);
        }
        Ok(v)
    }

    /// Closed-form `φ_n(t)` where the family has one.
    pub fn phi_closed(&self, n: usize, t: f64) -> Option<Result<PhiValue>> {
        self.family.phi(n, self.scale * t)
    }

    /// Closed-form `φ_0..φ_{n_max}` at `t`, or `None` if any is unavailable.
    pub fn phi_closed_range(&self, n_max: usize, t: f64) -> Option<Result<Vec<f64>>> {
        let ts = self.scale * t;
        if let Family::Hahn { params } = &self.family {
            return Some(hahn_phi_range(n_max, ts, params).map(|v| v.into_iter().map(|p| p.value).collect()));
        }
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            match self.family.phi(n, ts)? {
                Ok(p) => out.push(p.value),
                Err(e) => return Some(Err(e)),
            }
        }
        Some(Ok(out))
    }

    /// Closed-form `C(t) = φ_0(t)` where known.
    pub fn autocorrelation_closed(&self, t: f64) -> Option<Result<f64>> {
        self.family.autocorrelation(self.scale * t)
    }

    /// Short human-readable tag.
    pub fn label(&self) -> String {
        fn tag(f: &Family) -> String {
            match f {
                Family::Hahn { params: HahnParams::RealPair { a, b } } => format!("hahn(a={a},b={b})"),
                Family::Hahn { params: HahnParams::ConjugatePair { r, omega } } => format!("hahn(r={r},ω={omega})"),
                Family::MeixnerPollaczek { eta } => format!("mp(η={eta})"),
                Family::Alternating { omega } => format!("alternating(ω={omega})"),
                Family::Hermite => "hermite".into(),
                Family::Explicit { values } => format!("explicit[{}]", values.len()),
                Family::Deformed { inner, kappa } => format!("{}^(κ={kappa})", tag(inner)),
            }
        }
        if self.scale == 1.0 {
            tag(&self.family)
        } else {
            format!("{}·{}", self.scale, tag(&self.family))
        }
    }
}
