use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Gaussian rational `re + i·im` with exact big-integer parts.
///
/// Both parts are kept gcd-reduced with positive denominators by
/// [`BigRational`] itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q + i·r/s` from small integers.
    pub fn from_ratios(p: i64, q: i64, r: i64, s: i64) -> Self {
        Self {
            re: BigRational::new(p.into(), q.into()),
            im: BigRational::new(r.into(), s.into()),
        }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn inv(&self) -> Self {
        let d = self.norm_sqr();
        assert!(!d.is_zero(), "division by zero in RationalComplex::inv");
        Self { re: &self.re / &d, im: -(&self.im / &d) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl Zero for RationalComplex {
    fn zero() -> Self {
        Self::from_real(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for RationalComplex {
    fn one() -> Self {
        Self::from_real(BigRational::one())
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a RationalComplex> for &'a RationalComplex {
    type Output = RationalComplex;
    fn add(self, o: &RationalComplex) -> RationalComplex {
        RationalComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a RationalComplex> for &'a RationalComplex {
    type Output = RationalComplex;
    fn sub(self, o: &RationalComplex) -> RationalComplex {
        RationalComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a RationalComplex> for &'a RationalComplex {
    type Output = RationalComplex;
    fn mul(self, o: &RationalComplex) -> RationalComplex {
        RationalComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a RationalComplex> for &'a RationalComplex {
    type Output = RationalComplex;
    fn div(self, o: &RationalComplex) -> RationalComplex {
        self * &o.inv()
    }
}

impl Neg for RationalComplex {
    type Output = RationalComplex;
    fn neg(self) -> RationalComplex {
        RationalComplex { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalComplex {
            type Output = RationalComplex;
            fn $m(self, o: RationalComplex) -> RationalComplex {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let z = RationalComplex::from_ratios(1, 2, 1, 2);
        let z2 = &z * &z;
        assert_eq!(z2, RationalComplex::from_ratios(0, 1, 1, 2));
        assert_eq!(&(&z / &z) - &RationalComplex::one(), RationalComplex::zero());
        assert_eq!(z.norm_sqr(), BigRational::new(1.into(), 2.into()));
    }
}
