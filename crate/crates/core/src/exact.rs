//! Exact arithmetic on rational multiples of `1`, `pi` and `pi^2`.
//!
//! A [`PiScalar`] is `coefficient * pi^grade` with the grade carried as data.
//! Angles and lengths are grade 1, volumes grade 2. Sums require equal
//! grades, products add grades and may not go past `pi^2`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;
use crate::Rational;

/// Build a canonical rational `num/den`: reduced, positive denominator,
/// zero as `0/1`.
pub fn rational_new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den == BigInt::ZERO {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num.into(), den))
}

/// Exponent of pi carried by a [`PiScalar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Zero = 0,
    One = 1,
    Two = 2,
}

impl Grade {
    pub fn exponent(self) -> u8 {
        self as u8
    }

    pub fn from_exponent(e: u8) -> Option<Grade> {
        match e {
            0 => Some(Grade::Zero),
            1 => Some(Grade::One),
            2 => Some(Grade::Two),
            _ => None,
        }
    }

    fn pi_power(self) -> f64 {
        match self {
            Grade::Zero => 1.0,
            Grade::One => PI,
            Grade::Two => PI * PI,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Zero => f.write_str("pi^0"),
            Grade::One => f.write_str("pi^1"),
            Grade::Two => f.write_str("pi^2"),
        }
    }
}

/// `coeff * pi^grade`.
///
/// Equality compares grade as well as coefficient, so a zero angle and a
/// zero volume are different values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiScalar<T> {
    coeff: T,
    grade: Grade,
}

impl<T: Coefficient> PiScalar<T> {
    pub fn new(coeff: T, grade: Grade) -> Self {
        PiScalar { coeff, grade }
    }

    pub fn zero(grade: Grade) -> Self {
        PiScalar::new(T::zero(), grade)
    }

    /// Grade-1 value `coeff * pi`.
    pub fn angle(coeff: T) -> Self {
        PiScalar::new(coeff, Grade::One)
    }

    pub fn coeff(&self) -> &T {
        &self.coeff
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn expect_grade(&self, expected: Grade) -> Result<()> {
        if self.grade == expected {
            Ok(())
        } else {
            Err(Error::WrongGrade {
                expected,
                got: self.grade,
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_grade("addition", rhs)?;
        Ok(PiScalar::new(
            self.coeff.clone() + rhs.coeff.clone(),
            self.grade,
        ))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_grade("subtraction", rhs)?;
        Ok(PiScalar::new(
            self.coeff.clone() - rhs.coeff.clone(),
            self.grade,
        ))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let grade = Grade::from_exponent(self.grade.exponent() + rhs.grade.exponent()).ok_or(
            Error::GradeOverflow {
                left: self.grade,
                right: rhs.grade,
            },
        )?;
        Ok(PiScalar::new(self.coeff.clone() * rhs.coeff.clone(), grade))
    }

    /// `x * x`; only defined up to grade 1.
    pub fn square(&self) -> Result<Self> {
        self.try_mul(self)
    }

    /// Multiply by a plain (grade-0) coefficient.
    pub fn scale(&self, k: &T) -> Self {
        PiScalar::new(self.coeff.clone() * k.clone(), self.grade)
    }

    /// Coefficient order; only defined within one grade.
    pub fn try_partial_cmp(&self, rhs: &Self) -> Result<Option<Ordering>> {
        self.same_grade("comparison", rhs)?;
        Ok(self.coeff.partial_cmp(&rhs.coeff))
    }

    pub fn try_lt(&self, rhs: &Self) -> Result<bool> {
        Ok(self.try_partial_cmp(rhs)? == Some(Ordering::Less))
    }

    pub fn try_gt(&self, rhs: &Self) -> Result<bool> {
        Ok(self.try_partial_cmp(rhs)? == Some(Ordering::Greater))
    }

    /// `coeff * pi^grade` as a double.
    pub fn to_float(&self) -> Result<f64> {
        let c = self
            .coeff
            .to_f64()
            .filter(|c| c.is_finite())
            .ok_or_else(|| Error::FloatOverflow(self.to_string()))?;
        let v = c * self.grade.pi_power();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::FloatOverflow(self.to_string()))
        }
    }

    fn same_grade(&self, op: &'static str, rhs: &Self) -> Result<()> {
        if self.grade == rhs.grade {
            Ok(())
        } else {
            Err(Error::GradeMismatch {
                op,
                left: self.grade,
                right: rhs.grade,
            })
        }
    }
}

impl<T: Coefficient> Neg for PiScalar<T> {
    type Output = PiScalar<T>;

    fn neg(self) -> Self::Output {
        PiScalar::new(-self.coeff, self.grade)
    }
}

/// Canonical text: `a/b`, `a/b*pi`, `a/b*pi^2`; exact zero is `0`.
impl<T: Coefficient> fmt::Display for PiScalar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return f.write_str("0");
        }
        match self.grade {
            Grade::Zero => write!(f, "{}", self.coeff),
            Grade::One => write!(f, "{}*pi", self.coeff),
            Grade::Two => write!(f, "{}*pi^2", self.coeff),
        }
    }
}

impl<T: Coefficient> Serialize for PiScalar<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PiScalar", 2)?;
        s.serialize_field("coeff", &self.coeff.to_string())?;
        s.serialize_field("grade", &self.grade.exponent())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactScalar;

    fn q(n: i64, d: i64) -> Rational {
        rational_new(n, d).unwrap()
    }

    fn pi(n: i64, d: i64, grade: Grade) -> ExactScalar {
        PiScalar::new(q(n, d), grade)
    }

    #[test]
    fn rational_canonical_forms() {
        let r = q(2, 4);
        assert_eq!((r.numer().clone(), r.denom().clone()), (1.into(), 2.into()));
        let r = q(-3, -6);
        assert_eq!((r.numer().clone(), r.denom().clone()), (1.into(), 2.into()));
        let r = q(0, 7);
        assert_eq!((r.numer().clone(), r.denom().clone()), (0.into(), 1.into()));
        let r = q(3, -9);
        assert_eq!(
            (r.numer().clone(), r.denom().clone()),
            ((-1).into(), 3.into())
        );
    }

    #[test]
    fn rational_zero_denominator() {
        assert_eq!(rational_new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn add_examples() {
        let s = pi(1, 2, Grade::One).try_add(&pi(1, 3, Grade::One)).unwrap();
        assert_eq!(s, pi(5, 6, Grade::One));

        let z = pi(1, 3, Grade::Two)
            .try_add(&pi(-1, 3, Grade::Two))
            .unwrap();
        assert_eq!(z, ExactScalar::zero(Grade::Two));
        assert_ne!(z, ExactScalar::zero(Grade::One));

        let err = pi(1, 1, Grade::Zero).try_add(&pi(1, 1, Grade::One));
        assert!(matches!(err, Err(Error::GradeMismatch { .. })));
    }

    #[test]
    fn mul_examples() {
        let third = pi(1, 3, Grade::One);
        assert_eq!(third.square().unwrap(), pi(1, 9, Grade::Two));
        assert_eq!(
            pi(3, 1, Grade::Zero)
                .try_mul(&pi(1, 3, Grade::Two))
                .unwrap(),
            pi(1, 1, Grade::Two)
        );
        assert_eq!(
            pi(1, 1, Grade::One).try_mul(&pi(1, 1, Grade::Two)),
            Err(Error::GradeOverflow {
                left: Grade::One,
                right: Grade::Two
            })
        );
    }

    #[test]
    fn to_float_examples() {
        let v = pi(1, 3, Grade::Two).to_float().unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-15);
        assert!((v - 3.2898681336964524).abs() < 1e-12);
        assert_eq!(ExactScalar::zero(Grade::One).to_float().unwrap(), 0.0);
        let v = pi(5, 3, Grade::One).to_float().unwrap();
        assert!((v - 5.235987755982989).abs() < 1e-12);
    }

    #[test]
    fn to_float_overflow() {
        let huge = Rational::from_integer(BigInt::from(10).pow(400));
        assert!(matches!(
            PiScalar::new(huge, Grade::Two).to_float(),
            Err(Error::FloatOverflow(_))
        ));
    }

    #[test]
    fn cross_grade_comparison_is_an_error() {
        assert!(pi(1, 1, Grade::One).try_lt(&pi(2, 1, Grade::Two)).is_err());
        assert!(pi(1, 1, Grade::One).try_lt(&pi(2, 1, Grade::One)).unwrap());
    }

    #[test]
    fn rendering() {
        assert_eq!(pi(7, 6, Grade::One).to_string(), "7/6*pi");
        assert_eq!(pi(2, 1, Grade::One).to_string(), "2*pi");
        assert_eq!(pi(-1, 3, Grade::Two).to_string(), "-1/3*pi^2");
        assert_eq!(pi(3, 4, Grade::Zero).to_string(), "3/4");
        assert_eq!(ExactScalar::zero(Grade::Two).to_string(), "0");
        assert_eq!(
            serde_json::to_string(&ExactScalar::zero(Grade::Two)).unwrap(),
            r#"{"coeff":"0","grade":2}"#
        );
    }

    #[test]
    fn wrong_grade_guard() {
        assert!(pi(1, 1, Grade::One).expect_grade(Grade::One).is_ok());
        assert_eq!(
            pi(1, 1, Grade::Two).expect_grade(Grade::One),
            Err(Error::WrongGrade {
                expected: Grade::One,
                got: Grade::Two
            })
        );
    }
}
