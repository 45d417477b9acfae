use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::parse::join_terms;
use super::{Field, FieldError};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct UPoly<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
    var: &'static str,
}

impl<F: Field> PartialEq for UPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<F: Field> Eq for UPoly<F> {}

impl<F: Field> Hash for UPoly<F> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl<F: Field> UPoly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F::Ctx, var: &'static str) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, ctx: ctx.clone(), var }
    }

    pub fn zero(ctx: &F::Ctx, var: &'static str) -> Self {
        Self::new(Vec::new(), ctx, var)
    }

    pub fn constant(c: F, var: &'static str) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], &ctx, var)
    }

    pub fn x(ctx: &F::Ctx, var: &'static str) -> Self {
        Self::new(vec![F::zero(ctx), F::one(ctx)], ctx, var)
    }

    /// `x − r`.
    pub fn linear_root(r: F, var: &'static str) -> Self {
        let ctx = r.ctx();
        Self::new(vec![-r, F::one(&ctx)], &ctx, var)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(), &self.ctx, self.var)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![F::zero(&self.ctx); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c, &self.ctx, self.var)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale_i64(i as i64))
            .collect();
        Self::new(c, &self.ctx, self.var)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::constant(F::one(&self.ctx), self.var);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), FieldError> {
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let linv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.ctx, self.var), self.clone()));
        }
        let mut q = vec![F::zero(&self.ctx); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * linv.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q, &self.ctx, self.var), Self::new(r, &self.ctx, self.var)))
    }

    /// Quotient of an exact division, checked by re-multiplication.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, FieldError> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() || &q * d != *self {
            return Err(FieldError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Roots lying in the coefficient field.
    ///
    /// Finite fields are scanned exhaustively. Over infinite fields only the
    /// root of a linear squarefree part is returned.
    pub fn roots_in_field(&self) -> Result<Vec<F>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::Unsupported("zero polynomial".into()));
        }
        if let Some(els) = F::elements(&self.ctx) {
            return Ok(els.into_iter().filter(|x| self.eval(x).is_zero()).collect());
        }
        let d = self.derivative();
        let sq = if d.is_zero() { self.clone() } else { self.divide_exact(&self.gcd(&d))? };
        match sq.degree() {
            Some(0) => Ok(Vec::new()),
            Some(1) => {
                let m = sq.monic();
                Ok(vec![-m.coeff(0)])
            }
            _ => Err(FieldError::Unsupported(format!("squarefree part of degree {:?}", sq.degree()))),
        }
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.coeffs.iter().map(f).collect(), ctx, self.var)
    }
}

impl<F: Field> Add for &UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        UPoly::new(c, &self.ctx, self.var)
    }
}

impl<F: Field> Sub for &UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        UPoly::new(c, &self.ctx, self.var)
    }
}

impl<F: Field> Mul for &UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx, self.var);
        }
        let mut c = vec![F::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(c, &self.ctx, self.var)
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.ctx, self.var)
    }
}

impl<F: Field> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => self.var.to_string(),
                    _ => format!("{}^{}", self.var, i),
                };
                (c.to_string(), mono)
            });
        write!(f, "{}", join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, PrimeCtx, Rational};

    fn q(c: &[i64]) -> UPoly<Rational> {
        UPoly::new(c.iter().map(|&x| Rational::from_i64(&(), x)).collect(), &(), "X")
    }

    #[test]
    fn gcd_basic() {
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])), q(&[-1, 1]));
    }

    #[test]
    fn cube_roots_mod_7() {
        let c = PrimeCtx::new(7).unwrap();
        let p = UPoly::new(vec![Fp::from_signed(-1, &c), Fp::new(0, &c), Fp::new(0, &c), Fp::new(1, &c)], &c, "X");
        let r: Vec<u64> = p.roots_in_field().unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(r, vec![1, 2, 4]);
    }

    #[test]
    fn divide_exact_checks() {
        let p = q(&[-6, 11, -6, 1]);
        let r = p.divide_exact(&q(&[-1, 1])).unwrap();
        assert_eq!(r, q(&[6, -5, 1]));
        assert_eq!(p.divide_exact(&q(&[1, 1])), Err(FieldError::InexactDivision));
    }

    #[test]
    fn linear_root_over_q() {
        let p = &q(&[-2, 1]) * &q(&[-2, 1]);
        assert_eq!(p.roots_in_field().unwrap(), vec![Rational::from_i64(&(), 2)]);
        assert!(q(&[-2, 0, 1]).roots_in_field().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[1, 0, -3]).to_string(), "-3*X^2 + 1");
    }
}
