use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exact moments `μ_0, μ_1, …` of a spectral measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub entries: Vec<BigRational>,
    /// Odd moments vanish identically.
    pub symmetric: bool,
    /// Where the numbers came from.
    pub source: String,
}

impl MomentTable {
    /// Checks `μ_0 = 1` and, when flagged symmetric, that odd entries are zero.
    pub fn new(entries: Vec<BigRational>, symmetric: bool, source: impl Into<String>) -> Result<Self> {
        let t = Self { entries, symmetric, source: source.into() };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.first().map_or(true, |m| !m.is_one()) {
            return Err(Error::InvalidParams("moment table must start with μ_0 = 1".into()));
        }
        if self.symmetric && self.entries.iter().skip(1).step_by(2).any(|m| !m.is_zero()) {
            return Err(Error::NotSymmetric);
        }
        Ok(())
    }

    /// Point mass at the origin: `μ_k = δ_{k0}`.
    pub fn point_mass(len: usize) -> Self {
        let mut entries = vec![BigRational::zero(); len.max(1)];
        entries[0] = BigRational::one();
        Self { entries, symmetric: true, source: "constant".into() }
    }

    /// Highest available moment index.
    pub fn max_order(&self) -> usize {
        self.entries.len() - 1
    }

    /// Even moments `μ_0, μ_2, …`.
    pub fn even(&self) -> Vec<BigRational> {
        self.entries.iter().step_by(2).cloned().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct Fraction {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    entries: Vec<Fraction>,
    symmetric: bool,
    source: String,
}

impl Serialize for MomentTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            entries: self
                .entries
                .iter()
                .map(|q| Fraction { num: q.numer().to_string(), den: q.denom().to_string() })
                .collect(),
            symmetric: self.symmetric,
            source: self.source.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let mut entries = Vec::with_capacity(w.entries.len());
        for f in w.entries {
            let num: BigInt = f.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = f.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            entries.push(BigRational::new(num, den));
        }
        MomentTable::new(entries, w.symmetric, w.source).map_err(D::Error::custom)
    }
}
