use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, FieldError, HasEps, Rational, UPoly};

/// Context of F(v) for a named indeterminate v.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncCtx<C> {
    pub base: C,
    pub var: &'static str,
}

impl<C> RatFuncCtx<C> {
    pub fn new(base: C, var: &'static str) -> Self {
        Self { base, var }
    }
}

/// Reduced fraction of univariate polynomials with monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc<F: Field> {
    num: UPoly<F>,
    den: UPoly<F>,
}

impl<F: Field> PartialEq for RatFunc<F> {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den && self.num.var() == o.num.var()
    }
}

impl<F: Field> Eq for RatFunc<F> {}

impl<F: Field> Hash for RatFunc<F> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.num.hash(h);
        self.den.hash(h);
    }
}

impl<F: Field> RatFunc<F> {
    pub fn from_parts(num: UPoly<F>, den: UPoly<F>) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(num: UPoly<F>) -> Self {
        let den = UPoly::constant(F::one(num.ctx()), num.var());
        Self { num, den }
    }

    pub fn constant(c: F, ctx: &RatFuncCtx<F::Ctx>) -> Self {
        Self::from_poly(UPoly::new(vec![c], &ctx.base, ctx.var))
    }

    /// The indeterminate.
    pub fn var(ctx: &RatFuncCtx<F::Ctx>) -> Self {
        Self::from_poly(UPoly::x(&ctx.base, ctx.var))
    }

    pub fn num(&self) -> &UPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UPoly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value as a base-field constant, when it is one.
    pub fn as_constant(&self) -> Option<F> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    fn reduce(num: UPoly<F>, den: UPoly<F>) -> Self {
        if num.is_zero() {
            let one = UPoly::constant(F::one(den.ctx()), den.var());
            return Self { num, den: one };
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (num.divide_exact(&g).expect("gcd divides"), den.divide_exact(&g).expect("gcd divides"))
            }
        };
        let l = den.lc();
        if l.is_one() {
            Self { num, den }
        } else {
            let li = l.inv().expect("nonzero");
            Self { num: num.scale(&li), den: den.scale(&li) }
        }
    }

    /// Evaluates num/den at a base-field point.
    pub fn eval(&self, x: &F) -> Result<F, FieldError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(FieldError::BadSpecialization(self.den.to_string()));
        }
        Ok(self.num.eval(x) * d.inv()?)
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.num.var(), o.num.var(), "mixed field contexts");
        if self.den == o.den {
            return Self::reduce(&self.num + &o.num, self.den);
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::reduce(num, &self.den * &o.den)
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.num.var(), o.num.var(), "mixed field contexts");
        if self.den.is_one() && o.den.is_one() {
            let num = &self.num * &o.num;
            return Self { num, den: self.den };
        }
        Self::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { num: -&self.num, den: self.den }
    }
}

impl<F: Field> Field for RatFunc<F> {
    type Ctx = RatFuncCtx<F::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        RatFuncCtx::new(self.num.ctx().clone(), self.num.var())
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_poly(UPoly::zero(&ctx.base, ctx.var))
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::constant(F::one(&ctx.base), ctx)
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::constant(F::from_i64(&ctx.base, n), ctx)
    }

    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Result<Self, FieldError> {
        Ok(Self::constant(F::from_rational(&ctx.base, q)?, ctx))
    }

    fn characteristic(ctx: &Self::Ctx) -> u64 {
        F::characteristic(&ctx.base)
    }

    fn describe(ctx: &Self::Ctx) -> String {
        format!("{}({})", F::describe(&ctx.base), ctx.var)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
}

impl<F: HasEps> HasEps for RatFunc<F> {
    fn eps(ctx: &Self::Ctx) -> Self {
        Self::constant(F::eps(&ctx.base), ctx)
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let (n, d) = (self.num.to_string(), self.den.to_string());
            let n = if n.contains(' ') || n.contains('/') { format!("({n})") } else { n };
            let d = if d.contains(' ') || d.contains('*') { format!("({d})") } else { d };
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::QEps;

    type R = RatFunc<QEps>;

    fn ctx() -> RatFuncCtx<()> {
        RatFuncCtx::new((), "a")
    }

    #[test]
    fn normal_form() {
        let c = ctx();
        let a = R::var(&c);
        let one = R::one(&c);
        let x = (a.clone() * a.clone() - one.clone()).checked_div(&(a.clone() - one.clone())).unwrap();
        assert_eq!(x, a.clone() + one.clone());
        assert!(x.is_polynomial());
        let y = one.checked_div(&a.scale_i64(2)).unwrap();
        assert!(y.den().lc().is_one());
        assert_eq!(y.to_string(), "(1/2)/a");
    }

    #[test]
    fn t_display() {
        let c = ctx();
        let a = R::var(&c);
        let t = -(a.pow(3) + R::from_i64(&c, 2)).checked_div(&a).unwrap();
        assert_eq!(t.to_string(), "(-a^3 - 2)/a");
    }
}
