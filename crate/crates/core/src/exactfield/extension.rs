use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::parse::join_terms;
use super::{Field, FieldError, Fp, PrimeCtx, Rational, UPoly};

/// GF(p^k) as GF(p)[g]/(f) with f monic irreducible of degree k.
#[derive(Debug, PartialEq, Eq)]
pub struct ExtCtx {
    base: PrimeCtx,
    modulus: Vec<u64>,
}

fn to_upoly(c: &[u64], base: &PrimeCtx) -> UPoly<Fp> {
    UPoly::new(c.iter().map(|&v| Fp::new(v, base)).collect(), base, "g")
}

fn is_irreducible(f: &UPoly<Fp>) -> bool {
    let k = match f.degree() {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    let ctx = *f.ctx();
    let p = ctx.p();
    let x = UPoly::x(&ctx, "g");
    let frob = |g: &UPoly<Fp>| -> UPoly<Fp> {
        let mut acc = UPoly::constant(Fp::one(&ctx), "g");
        let mut b = g.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &b).div_rem(f).unwrap().1;
            }
            b = (&b * &b).div_rem(f).unwrap().1;
            e >>= 1;
        }
        acc
    };
    let mut pows = vec![x.clone()];
    for _ in 0..k {
        let n = frob(pows.last().unwrap());
        pows.push(n);
    }
    if !(&pows[k] - &x).div_rem(f).unwrap().1.is_zero() {
        return false;
    }
    let mut n = k;
    let mut q = 2;
    let mut primes = Vec::new();
    while n > 1 {
        if n % q == 0 {
            primes.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    primes.iter().all(|q| f.gcd(&(&pows[k / q] - &x)).degree() == Some(0))
}

impl ExtCtx {
    pub fn new(base: PrimeCtx, modulus: Vec<u64>) -> Result<Arc<Self>, FieldError> {
        let f = to_upoly(&modulus, &base);
        if f.degree() != Some(modulus.len() - 1) || !f.lc().is_one() || !is_irreducible(&f) {
            return Err(FieldError::Reducible(f.to_string()));
        }
        let modulus = f.coeffs().iter().map(|c| c.value()).collect();
        Ok(Arc::new(Self { base, modulus }))
    }

    /// First monic irreducible modulus of degree k in lexicographic order.
    pub fn first(base: PrimeCtx, k: usize) -> Arc<Self> {
        let p = base.p();
        let total = p.pow(k as u32);
        for n in 0..total {
            let mut c = Vec::with_capacity(k + 1);
            let mut m = n;
            for _ in 0..k {
                c.push(m % p);
                m /= p;
            }
            c.push(1);
            if let Ok(ctx) = Self::new(base, c) {
                return ctx;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn base(&self) -> PrimeCtx {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.base.p().pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> UPoly<Fp> {
        to_upoly(&self.modulus, &self.base)
    }
}

/// Element of GF(p^k).
#[derive(Clone, Debug)]
pub struct Fq {
    c: Vec<u64>,
    ctx: Arc<ExtCtx>,
}

impl PartialEq for Fq {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && (Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx)
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.c.hash(h);
    }
}

impl Fq {
    pub fn new(coeffs: &[u64], ctx: &Arc<ExtCtx>) -> Self {
        let p = ctx.base.p();
        let mut c = vec![0; ctx.degree()];
        for (i, v) in coeffs.iter().enumerate() {
            c[i] = v % p;
        }
        Self { c, ctx: ctx.clone() }
    }

    /// The class of the indeterminate g.
    pub fn generator(ctx: &Arc<ExtCtx>) -> Self {
        if ctx.degree() == 1 {
            return Self::new(&[(ctx.base.p() - ctx.modulus[0]) % ctx.base.p()], ctx);
        }
        Self::new(&[0, 1], ctx)
    }

    pub fn from_base(x: Fp, ctx: &Arc<ExtCtx>) -> Self {
        Self::new(&[x.value()], ctx)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    fn check(&self, o: &Self) {
        assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx, "mixed field contexts");
    }
}

impl Add for Fq {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let p = self.ctx.base.p();
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect();
        Self { c, ctx: self.ctx }
    }
}

impl Sub for Fq {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        let p = self.ctx.base.p();
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + p - b) % p).collect();
        Self { c, ctx: self.ctx }
    }
}

impl Mul for Fq {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        let p = self.ctx.base.p();
        let k = self.ctx.degree();
        let mut prod = vec![0u64; 2 * k];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let m = &self.ctx.modulus;
        for i in (k..2 * k).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                prod[i - k + j] = (prod[i - k + j] + (p - c) * m[j]) % p;
            }
        }
        prod.truncate(k);
        Self { c: prod, ctx: self.ctx }
    }
}

impl Neg for Fq {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.ctx.base.p();
        let c = self.c.iter().map(|a| (p - a) % p).collect();
        Self { c, ctx: self.ctx }
    }
}

impl Field for Fq {
    type Ctx = Arc<ExtCtx>;

    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::new(&[], ctx)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::new(&[1], ctx)
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_base(Fp::from_signed(n, &ctx.base), ctx)
    }

    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Result<Self, FieldError> {
        Ok(Self::from_base(Fp::from_rational(&ctx.base, q)?, ctx))
    }

    fn characteristic(ctx: &Self::Ctx) -> u64 {
        ctx.base.p()
    }

    fn describe(ctx: &Self::Ctx) -> String {
        format!("GF({}^{})", ctx.base.p(), ctx.degree())
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.ctx.order() - 2))
    }

    fn elements(ctx: &Self::Ctx) -> Option<Vec<Self>> {
        let p = ctx.base.p();
        let k = ctx.degree();
        Some(
            (0..ctx.order())
                .map(|mut n| {
                    let mut c = vec![0; k];
                    for ci in c.iter_mut() {
                        *ci = n % p;
                        n /= p;
                    }
                    Self { c, ctx: ctx.clone() }
                })
                .collect(),
        )
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.c.iter().enumerate().rev().filter(|(_, &v)| v != 0).map(|(i, v)| {
            let m = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            (v.to_string(), m)
        });
        write!(f, "{}", join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::find_eps;

    #[test]
    fn gf4_and_gf16() {
        let two = PrimeCtx::with_char2(2, true).unwrap();
        let k2 = ExtCtx::first(two, 2);
        assert_eq!(k2.modulus().to_string(), "g^2 + g + 1");
        let eps = find_eps::<Fq>(&k2).unwrap();
        assert_eq!(eps.clone() * eps.clone() + eps.clone() + Fq::one(&k2), Fq::zero(&k2));
        let k4 = ExtCtx::first(two, 4);
        assert_eq!(k4.order(), 16);
        let g = Fq::generator(&k4);
        assert_eq!(g.pow(15), Fq::one(&k4));
        let els = Fq::elements(&k4).unwrap();
        assert!(els.iter().filter(|x| !x.is_zero()).all(|x| x.clone() * x.inv().unwrap() == Fq::one(&k4)));
    }

    #[test]
    fn rejects_reducible() {
        let c = PrimeCtx::new(7).unwrap();
        assert!(ExtCtx::new(c, vec![6, 0, 1]).is_err());
        assert!(ExtCtx::new(c, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn gf49_has_eps_over_gf5_square() {
        let c = PrimeCtx::new(5).unwrap();
        let k = ExtCtx::first(c, 2);
        assert!(find_eps::<Fq>(&k).is_ok());
        assert!(find_eps::<Fp>(&c).is_err());
    }
}
