use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{check_characteristic, Field, FieldError, Rational};

/// Context of the prime field GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeCtx {
    p: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeCtx {
    /// GF(p) for p ∉ {2, 3}.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        Self::with_char2(p, false)
    }

    pub fn with_char2(p: u64, allow_char2: bool) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(FieldError::NotPrime(p));
        }
        check_characteristic(p, allow_char2)?;
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// Residue modulo a word-sized prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: u64, ctx: &PrimeCtx) -> Self {
        Self { v: v % ctx.p, p: ctx.p }
    }

    pub fn from_signed(v: i64, ctx: &PrimeCtx) -> Self {
        Self { v: v.rem_euclid(ctx.p as i64) as u64, p: ctx.p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed field contexts GF({}) and GF({})", self.p, o.p);
    }
}

impl Add for Fp {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let s = self.v + o.v;
        Self { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}

impl Sub for Fp {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        let v = if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v };
        Self { v, p: self.p }
    }
}

impl Mul for Fp {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        Self { v: self.v * o.v % self.p, p: self.p }
    }
}

impl Neg for Fp {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}

fn reduce_big(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl Field for Fp {
    type Ctx = PrimeCtx;

    fn ctx(&self) -> PrimeCtx {
        PrimeCtx { p: self.p }
    }

    fn zero(ctx: &PrimeCtx) -> Self {
        Self { v: 0, p: ctx.p }
    }

    fn one(ctx: &PrimeCtx) -> Self {
        Self { v: 1, p: ctx.p }
    }

    fn from_i64(ctx: &PrimeCtx, n: i64) -> Self {
        Self::from_signed(n, ctx)
    }

    fn from_rational(ctx: &PrimeCtx, q: &Rational) -> Result<Self, FieldError> {
        let d = Self::new(reduce_big(q.denom(), ctx.p), ctx);
        if d.v == 0 {
            return Err(FieldError::BadSpecialization(q.denom().to_string()));
        }
        Ok(Self::new(reduce_big(q.numer(), ctx.p), ctx) * d.inv()?)
    }

    fn characteristic(ctx: &PrimeCtx) -> u64 {
        ctx.p
    }

    fn describe(ctx: &PrimeCtx) -> String {
        format!("GF({})", ctx.p)
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.v == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }

    fn elements(ctx: &PrimeCtx) -> Option<Vec<Self>> {
        Some((0..ctx.p).map(|v| Self { v, p: ctx.p }).collect())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_primes() {
        assert!(PrimeCtx::new(3).is_err());
        assert!(PrimeCtx::new(2).is_err());
        assert!(PrimeCtx::with_char2(2, true).is_ok());
        assert!(PrimeCtx::new(9).is_err());
    }

    #[test]
    fn arithmetic() {
        let c = PrimeCtx::new(13).unwrap();
        let x = Fp::new(5, &c);
        assert_eq!((x * x.inv().unwrap()).value(), 1);
        assert_eq!((-x).value(), 8);
        let half = Fp::from_rational(&c, &Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half.value(), 7);
    }

    #[test]
    fn mixed_context_is_an_error() {
        let a = Fp::new(1, &PrimeCtx::new(7).unwrap());
        let b = Fp::new(1, &PrimeCtx::new(13).unwrap());
        assert!(matches!(a.try_add(&b), Err(FieldError::MixedContext(_, _))));
    }
}
