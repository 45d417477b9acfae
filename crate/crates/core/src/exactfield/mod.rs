//! Exact coefficient fields.
//!
//! Every field used by the crate implements [`Field`]. Elements carry their
//! context (prime, extension modulus, indeterminate name) at runtime, so
//! constants are built through a context value rather than `Zero::zero()`.

mod binary;
mod eisenstein;
mod extension;
pub mod linalg;
mod parse;
mod point;
mod poly3;
mod prime;
mod ratfunc;
mod rational;
mod upoly;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

pub use binary::BinaryForm;
pub use eisenstein::QEps;
pub use extension::{ExtCtx, Fq};
pub use parse::{parse_element, ExprRing};
pub use point::ProjPoint;
pub(crate) use point::cross;
pub use poly3::{monomials, Poly3};
pub use prime::{Fp, PrimeCtx};
pub use ratfunc::{RatFunc, RatFuncCtx};
pub use rational::Rational;
pub use upoly::UPoly;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed field contexts: {0} vs {1}")]
    MixedContext(String, String),
    #[error("characteristic {0} is not supported here")]
    UnsupportedCharacteristic(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not irreducible")]
    Reducible(String),
    #[error("{0} contains no primitive cube root of unity")]
    NoCubeRoot(String),
    #[error("{0} is not a primitive cube root of unity")]
    NotCubeRoot(String),
    #[error("bad specialization: denominator {0} vanishes")]
    BadSpecialization(String),
    #[error("inexact division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("root extraction unsupported: {0}")]
    Unsupported(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("all coordinates vanish")]
    ZeroPoint,
}

/// An exact field with a runtime context.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    /// Image of a rational number; fails when the denominator vanishes.
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Result<Self, FieldError>;
    fn characteristic(ctx: &Self::Ctx) -> u64;
    fn describe(ctx: &Self::Ctx) -> String;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, FieldError>;

    /// All elements, for finite fields.
    fn elements(_ctx: &Self::Ctx) -> Option<Vec<Self>> {
        None
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn same_ctx(&self, other: &Self) -> Result<(), FieldError> {
        let (a, b) = (self.ctx(), other.ctx());
        if a == b {
            Ok(())
        } else {
            Err(FieldError::MixedContext(Self::describe(&a), Self::describe(&b)))
        }
    }

    fn try_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_ctx(o)?;
        Ok(self.clone() + o.clone())
    }

    fn try_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_ctx(o)?;
        Ok(self.clone() - o.clone())
    }

    fn try_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_ctx(o)?;
        Ok(self.clone() * o.clone())
    }

    fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_ctx(o)?;
        Ok(self.clone() * o.inv()?)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(&self.ctx(), n)
    }
}

/// Rejects characteristic 3 always and characteristic 2 unless allowed.
pub fn check_characteristic(p: u64, allow_char2: bool) -> Result<(), FieldError> {
    match p {
        3 => Err(FieldError::UnsupportedCharacteristic(3)),
        2 if !allow_char2 => Err(FieldError::UnsupportedCharacteristic(2)),
        _ => Ok(()),
    }
}

/// Checks that `eps` is a primitive cube root of unity.
pub fn check_eps<F: Field>(eps: &F) -> Result<(), FieldError> {
    let ctx = eps.ctx();
    let one = F::one(&ctx);
    if *eps != one && eps.pow(3) == one {
        Ok(())
    } else {
        Err(FieldError::NotCubeRoot(eps.to_string()))
    }
}

/// First primitive cube root of unity among the elements of a finite field.
pub fn find_eps<F: Field>(ctx: &F::Ctx) -> Result<F, FieldError> {
    let els = F::elements(ctx).ok_or_else(|| FieldError::NoCubeRoot(F::describe(ctx)))?;
    els.into_iter()
        .find(|e| check_eps(e).is_ok())
        .ok_or_else(|| FieldError::NoCubeRoot(F::describe(ctx)))
}

/// Fields that contain a distinguished primitive cube root of unity.
pub trait HasEps: Field {
    fn eps(ctx: &Self::Ctx) -> Self;
}

/// Ring homomorphism from Q(ε)(a) into a target field.
#[derive(Debug, Clone)]
pub struct Specializer<F: Field> {
    eps: F,
    a: F,
}

impl<F: Field> Specializer<F> {
    pub fn new(eps: F, a: F) -> Result<Self, FieldError> {
        eps.same_ctx(&a)?;
        check_eps(&eps)?;
        Ok(Self { eps, a })
    }

    pub fn eps(&self) -> &F {
        &self.eps
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn ctx(&self) -> F::Ctx {
        self.eps.ctx()
    }

    pub fn rational(&self, q: &Rational) -> Result<F, FieldError> {
        F::from_rational(&self.ctx(), q)
    }

    pub fn qeps(&self, x: &QEps) -> Result<F, FieldError> {
        Ok(self.rational(&x.c0)? + self.rational(&x.c1)? * self.eps.clone())
    }

    fn poly(&self, p: &UPoly<QEps>) -> Result<F, FieldError> {
        let mut acc = F::zero(&self.ctx());
        for c in p.coeffs().iter().rev() {
            acc = acc * self.a.clone() + self.qeps(c)?;
        }
        Ok(acc)
    }

    /// Image of an element of Q(ε)(a).
    pub fn apply(&self, x: &RatFunc<QEps>) -> Result<F, FieldError> {
        let den = self.poly(x.den())?;
        if den.is_zero() {
            return Err(FieldError::BadSpecialization(x.den().to_string()));
        }
        Ok(self.poly(x.num())? * den.inv()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_checks() {
        assert!(check_characteristic(3, true).is_err());
        assert!(check_characteristic(2, false).is_err());
        assert!(check_characteristic(2, true).is_ok());
        assert!(check_characteristic(7, false).is_ok());
    }

    #[test]
    fn eps_over_gf7() {
        let ctx = PrimeCtx::new(7).unwrap();
        assert!(check_eps(&Fp::new(2, &ctx)).is_ok());
        assert!(check_eps(&Fp::new(1, &ctx)).is_err());
        assert_eq!(find_eps::<Fp>(&ctx).unwrap(), Fp::new(2, &ctx));
    }

    #[test]
    fn t_at_a_equals_one() {
        let ctx = RatFuncCtx::new((), "a");
        let a = RatFunc::<QEps>::var(&ctx);
        let t = -((a.pow(3) + RatFunc::from_i64(&ctx, 2)).checked_div(&a).unwrap());
        let s = Specializer::new(QEps::eps(), QEps::from_i64(&(), 1)).unwrap();
        assert_eq!(s.apply(&t).unwrap(), QEps::from_i64(&(), -3));
    }

    #[test]
    fn bad_specialization_names_denominator() {
        let ctx = RatFuncCtx::new((), "a");
        let a = RatFunc::<QEps>::var(&ctx);
        let x = RatFunc::one(&ctx).checked_div(&a).unwrap();
        let s = Specializer::new(QEps::eps(), QEps::from_i64(&(), 0)).unwrap();
        match s.apply(&x) {
            Err(FieldError::BadSpecialization(d)) => assert_eq!(d, "a"),
            other => panic!("{other:?}"),
        }
    }
}
