use std::fmt;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use krylov_core::families::{HahnParams, HahnRational, LanczosSequence};
use krylov_core::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// A parameter given either as a decimal (`0.25`, `1e-2`) or a fraction
/// (`1/4`). Both the double and the exact rational are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct Value {
    pub text: String,
    pub float: f64,
    pub exact: BigRational,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int}{frac}");
    let n = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigRational::from_integer(10.into());
    let scale = if shift >= 0 {
        num_traits::pow(ten, shift as usize)
    } else {
        BigRational::one() / num_traits::pow(ten, (-shift) as usize)
    };
    let q = BigRational::from_integer(n) * scale;
    Some(if neg { -q } else { q })
}

impl FromStr for Value {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let exact = match s.split_once('/') {
            Some((p, q)) => {
                let (p, q) = (parse_decimal(p.trim()), parse_decimal(q.trim()));
                match (p, q) {
                    (Some(p), Some(q)) if !q.is_zero() => p / q,
                    _ => return Err(format!("not a fraction: {s}")),
                }
            }
            None => parse_decimal(s).ok_or_else(|| format!("not a number: {s}"))?,
        };
        let float = exact.to_f64().filter(|x| x.is_finite()).ok_or_else(|| format!("out of range: {s}"))?;
        Ok(Self { text: s.to_string(), float, exact })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Continuous Hahn; `--a --b` or `--r --omega`.
    Hahn,
    /// Meixner–Pollaczek, `b_n² = n(n−1+η)`.
    Mp,
    /// `b_n² = n²` (even n), `n² + ω²` (odd n).
    Alternating,
    /// `b_n = √n`.
    Hermite,
    /// `b_n = n`.
    Linear,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub a: Option<Value>,
    #[arg(long)]
    pub b: Option<Value>,
    #[arg(long)]
    pub r: Option<Value>,
    #[arg(long)]
    pub omega: Option<Value>,
    #[arg(long)]
    pub eta: Option<Value>,
}

/// The family parameters in both number systems.
pub enum Resolved {
    Hahn(HahnParams, HahnRational),
    Mp(Value),
    Alternating(Value),
    Hermite,
    Linear,
}

fn need<'a>(v: &'a Option<Value>, flag: &str, family: &str) -> Result<&'a Value, String> {
    v.as_ref().ok_or_else(|| format!("--family {family} needs --{flag}"))
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<Resolved, String> {
        let unused = |flags: &[(&Option<Value>, &str)]| -> Result<(), String> {
            match flags.iter().find(|(v, _)| v.is_some()) {
                Some((_, f)) => Err(format!("--{f} does not apply to this family")),
                None => Ok(()),
            }
        };
        match self.family {
            FamilyKind::Hahn => {
                unused(&[(&self.eta, "eta")])?;
                match (&self.a, &self.b, &self.r, &self.omega) {
                    (Some(a), Some(b), None, None) => {
                        let p = HahnParams::real_pair(a.float, b.float).map_err(|e| e.to_string())?;
                        Ok(Resolved::Hahn(p, HahnRational::real_pair(a.exact.clone(), b.exact.clone())))
                    }
                    (None, None, Some(r), Some(w)) => {
                        let p = HahnParams::conjugate_pair(r.float, w.float).map_err(|e| e.to_string())?;
                        Ok(Resolved::Hahn(p, HahnRational::conjugate_pair(r.exact.clone(), w.exact.clone())))
                    }
                    _ => Err("--family hahn needs either --a and --b or --r and --omega".into()),
                }
            }
            FamilyKind::Mp => {
                unused(&[(&self.a, "a"), (&self.b, "b"), (&self.r, "r"), (&self.omega, "omega")])?;
                Ok(Resolved::Mp(need(&self.eta, "eta", "mp")?.clone()))
            }
            FamilyKind::Alternating => {
                unused(&[(&self.a, "a"), (&self.b, "b"), (&self.r, "r"), (&self.eta, "eta")])?;
                Ok(Resolved::Alternating(need(&self.omega, "omega", "alternating")?.clone()))
            }
            FamilyKind::Hermite | FamilyKind::Linear => {
                unused(&[(&self.a, "a"), (&self.b, "b"), (&self.r, "r"), (&self.omega, "omega"), (&self.eta, "eta")])?;
                Ok(if self.family == FamilyKind::Hermite { Resolved::Hermite } else { Resolved::Linear })
            }
        }
    }
}

impl Resolved {
    pub fn sequence(&self) -> krylov_core::Result<LanczosSequence> {
        match self {
            Resolved::Hahn(p, _) => LanczosSequence::hahn(*p),
            Resolved::Mp(eta) => LanczosSequence::meixner_pollaczek(eta.float),
            Resolved::Alternating(w) => LanczosSequence::alternating(w.float),
            Resolved::Hermite => Ok(LanczosSequence::hermite()),
            Resolved::Linear => Ok(LanczosSequence::linear()),
        }
    }

    /// Hahn parameters of the family, where it is a Hahn slice.
    pub fn hahn(&self) -> Option<HahnParams> {
        match self {
            Resolved::Hahn(p, _) => Some(*p),
            Resolved::Mp(eta) => HahnParams::real_pair(eta.float / 4.0, eta.float / 4.0 + 0.5).ok(),
            Resolved::Linear => HahnParams::real_pair(0.25, 0.75).ok(),
            _ => None,
        }
    }

    /// Exact `b_n²` for `n = 0..=n_max` (index 0 is zero), computed from the
    /// rational parameters as given.
    pub fn b2_exact(&self, n_max: usize) -> Vec<BigRational> {
        let int = |n: usize| BigRational::from_integer(n.into());
        let row = |n: usize| -> BigRational {
            match self {
                Resolved::Hahn(_, q) => krylov_core::families::hahn_b2_exact(n, q),
                Resolved::Mp(eta) => int(n) * (int(n) - BigRational::one() + &eta.exact),
                Resolved::Alternating(w) if n % 2 == 1 => int(n * n) + &w.exact * &w.exact,
                Resolved::Alternating(_) => int(n * n),
                Resolved::Hermite => int(n),
                Resolved::Linear => int(n * n),
            }
        };
        std::iter::once(BigRational::zero()).chain((1..=n_max).map(row)).collect()
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct TimeGrid {
    #[arg(long, default_value = "5")]
    pub t_max: f64,
    #[arg(long, default_value = "0.1")]
    pub t_step: f64,
}

impl TimeGrid {
    /// `0, h, 2h, …` up to `t_max` (inclusive within rounding).
    pub fn points(&self) -> Result<Vec<f64>, String> {
        if !(self.t_max.is_finite() && self.t_max >= 0.0 && self.t_step.is_finite() && self.t_step > 0.0) {
            return Err("need t-max ≥ 0 and t-step > 0".into());
        }
        let n = (self.t_max / self.t_step * (1.0 + 1e-12)).floor() as usize;
        if n > 10_000_000 {
            return Err("time grid too large".into());
        }
        Ok((0..=n).map(|k| k as f64 * self.t_step).collect())
    }
}

/// Strictly between 0 and 1.
pub fn check_kappa(k: &Value) -> Result<(), String> {
    if k.exact.is_positive() && k.exact < BigRational::one() {
        Ok(())
    } else {
        Err(format!("--kappa must lie strictly between 0 and 1, got {k}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        let v: Value = "0.25".parse().unwrap();
        assert_eq!(v.exact, BigRational::new(1.into(), 4.into()));
        assert_eq!(v.float, 0.25);
        let v: Value = "3/2".parse().unwrap();
        assert_eq!(v.exact, BigRational::new(3.into(), 2.into()));
        let v: Value = "-1.5e-1".parse().unwrap();
        assert_eq!(v.exact, BigRational::new((-3).into(), 20.into()));
        assert_eq!("0.3".parse::<Value>().unwrap().exact, BigRational::new(3.into(), 10.into()));
        assert!("1/0".parse::<Value>().is_err());
        assert!("abc".parse::<Value>().is_err());
        assert!(".".parse::<Value>().is_err());
    }

    #[test]
    fn grid_includes_endpoint() {
        let g = TimeGrid { t_max: 1.0, t_step: 0.1 }.points().unwrap();
        assert_eq!(g.len(), 11);
        assert!((g[10] - 1.0).abs() < 1e-15);
    }
}
