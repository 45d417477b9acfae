use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Field, FieldError, HasEps, Rational};

/// Element `c0 + c1·ε` of Q(ε), with ε² = −1 − ε.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QEps {
    pub c0: Rational,
    pub c1: Rational,
}

impl QEps {
    pub fn new(c0: Rational, c1: Rational) -> Self {
        Self { c0, c1 }
    }

    pub fn from_ints(c0: i64, c1: i64) -> Self {
        Self::new(Rational::from_integer(c0.into()), Rational::from_integer(c1.into()))
    }

    pub fn eps() -> Self {
        Self::from_ints(0, 1)
    }

    /// Galois conjugate, ε ↦ ε².
    pub fn conj(&self) -> Self {
        Self::new(&self.c0 - &self.c1, -self.c1.clone())
    }

    pub fn norm(&self) -> Rational {
        &self.c0 * &self.c0 - &self.c0 * &self.c1 + &self.c1 * &self.c1
    }
}

impl Add for QEps {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c0 + o.c0, self.c1 + o.c1)
    }
}

impl Sub for QEps {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.c0 - o.c0, self.c1 - o.c1)
    }
}

impl Mul for QEps {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let ss = &self.c1 * &o.c1;
        let c0 = &self.c0 * &o.c0 - &ss;
        let c1 = &self.c0 * &o.c1 + &self.c1 * &o.c0 - ss;
        Self::new(c0, c1)
    }
}

impl Neg for QEps {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1)
    }
}

impl Field for QEps {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn zero(_: &()) -> Self {
        Self::from_ints(0, 0)
    }

    fn one(_: &()) -> Self {
        Self::from_ints(1, 0)
    }

    fn from_i64(_: &(), n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    fn from_rational(_: &(), q: &Rational) -> Result<Self, FieldError> {
        Ok(Self::new(q.clone(), <Rational as Field>::zero(&())))
    }

    fn characteristic(_: &()) -> u64 {
        0
    }

    fn describe(_: &()) -> String {
        "Q(e)".into()
    }

    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    fn inv(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.c0 / &n, c.c1 / n))
    }
}

impl HasEps for QEps {
    fn eps(_: &()) -> Self {
        QEps::eps()
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for QEps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.c0)),
            (true, false) => write!(f, "{}*e", fmt_rational(&self.c1)),
            (false, false) => {
                let sign = if self.c1.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*e", fmt_rational(&self.c0), sign, fmt_rational(&self.c1.abs()))
            }
        }
    }
}
