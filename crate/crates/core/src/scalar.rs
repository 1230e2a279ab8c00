//! The coefficient field the formulas are written over.
//!
//! Every formula in [`crate::invariants`] is generic over [`Coefficient`], so
//! the same code path runs on exact [`crate::Rational`] coefficients and on
//! plain `f64` (used by the finite-difference oracle and for quick float
//! evaluation).

use std::fmt;

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Coefficient:
    Clone + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
    /// `num / den` in this field. `den` must be non-zero.
    fn from_ratio(num: i64, den: u64) -> Self {
        let n = Self::from_i64(num).expect("i64 fits every coefficient type");
        let d = Self::from_u64(den).expect("u64 fits every coefficient type");
        n / d
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("i64 fits every coefficient type")
    }
}

impl<T> Coefficient for T where
    T: Clone + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display
{
}
