use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, FieldError};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

impl Field for BigRational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_i64(_: &(), n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(_: &(), q: &Rational) -> Result<Self, FieldError> {
        Ok(q.clone())
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn describe(_: &()) -> String {
        "Q".into()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if Zero::is_zero(self) {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}
