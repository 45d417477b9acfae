use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::parse::{join_terms, parse_with, ExprRing};
use super::linalg::det_upoly;
use super::{BinaryForm, Field, FieldError, ProjPoint, Rational, UPoly};

type Exp = [u32; 3];

/// Homogeneous polynomial in x, y, z.
#[derive(Clone, Debug)]
pub struct Poly3<F: Field> {
    degree: u32,
    terms: BTreeMap<Exp, F>,
    ctx: F::Ctx,
}

impl<F: Field> PartialEq for Poly3<F> {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.terms == o.terms
    }
}

impl<F: Field> Eq for Poly3<F> {}

impl<F: Field> Hash for Poly3<F> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.degree.hash(h);
        for (e, c) in &self.terms {
            e.hash(h);
            c.hash(h);
        }
    }
}

/// All exponent triples of total degree d, in descending lexicographic order.
pub fn monomials(d: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn powers<F: Field>(x: &F, n: u32) -> Vec<F> {
    let mut v = vec![F::one(&x.ctx())];
    for _ in 0..n {
        let l = v.last().unwrap().clone() * x.clone();
        v.push(l);
    }
    v
}

impl<F: Field> Poly3<F> {
    pub fn zero(degree: u32, ctx: &F::Ctx) -> Self {
        Self { degree, terms: BTreeMap::new(), ctx: ctx.clone() }
    }

    pub fn from_terms(degree: u32, ctx: &F::Ctx, terms: impl IntoIterator<Item = (Exp, F)>) -> Result<Self, FieldError> {
        let mut p = Self::zero(degree, ctx);
        for (e, c) in terms {
            let d = e.iter().sum::<u32>();
            if d != degree {
                return Err(FieldError::DegreeMismatch(degree, d));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exp, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn monomial(c: F, e: Exp) -> Self {
        let ctx = c.ctx();
        Self::from_terms(e.iter().sum(), &ctx, [(e, c)]).expect("consistent degree")
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    /// The coordinate function x, y or z.
    pub fn var(ctx: &F::Ctx, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(F::one(ctx), e)
    }

    /// Linear form `l0·x + l1·y + l2·z`.
    pub fn linear(l: &[F; 3]) -> Self {
        let ctx = l[0].ctx();
        Self::from_terms(1, &ctx, [([1, 0, 0], l[0].clone()), ([0, 1, 0], l[1].clone()), ([0, 0, 1], l[2].clone())])
            .expect("degree one")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Exp, F> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exp) -> F {
        self.terms.get(e).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(FieldError::DegreeMismatch(self.degree, o.degree));
        }
        let mut r = if self.is_zero() { Self::zero(o.degree, &self.ctx) } else { self.clone() };
        if o.is_zero() {
            return Ok(r);
        }
        r.degree = o.degree;
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.checked_add(&-o)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree, &self.ctx);
        }
        let terms = self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())).collect();
        Self { degree: self.degree, terms, ctx: self.ctx.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(F::one(&self.ctx));
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        let px: Vec<Vec<F>> = p.iter().map(|c| powers(c, self.degree)).collect();
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            acc = acc + c.clone() * px[0][e[0] as usize].clone() * px[1][e[1] as usize].clone() * px[2][e[2] as usize].clone();
        }
        acc
    }

    pub fn vanishes_at(&self, p: &ProjPoint<F>) -> bool {
        self.eval(p.coords()).is_zero()
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut r = Self::zero(self.degree.saturating_sub(1), &self.ctx);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                r.add_term(f, c.scale_i64(e[i] as i64));
            }
        }
        r
    }

    pub fn gradient(&self, p: &[F; 3]) -> [F; 3] {
        [0, 1, 2].map(|i| self.partial(i).eval(p))
    }

    /// Substitutes x, y, z by the given forms, which share one degree.
    pub fn substitute(&self, forms: &[Poly3<F>; 3]) -> Self {
        let pw: Vec<Vec<Poly3<F>>> = forms
            .iter()
            .map(|f| {
                let mut v = vec![Self::constant(F::one(&self.ctx))];
                for _ in 0..self.degree {
                    let l = v.last().unwrap() * f;
                    v.push(l);
                }
                v
            })
            .collect();
        let mut r = Self::zero(self.degree * forms[0].degree, &self.ctx);
        for (e, c) in &self.terms {
            let m = &(&pw[0][e[0] as usize] * &pw[1][e[1] as usize]) * &pw[2][e[2] as usize];
            for (f, d) in m.terms {
                r.add_term(f, d * c.clone());
            }
        }
        r
    }

    /// Linear change of coordinates: the new polynomial is `self(M·v)`.
    pub fn transform(&self, m: &[[F; 3]; 3]) -> Self {
        let forms = [0, 1, 2].map(|i| Self::linear(&m[i]));
        self.substitute(&forms)
    }

    /// Restriction to the line `s·a + u·b`, as a binary form in (s, u).
    pub fn restrict_to_line(&self, a: &[F; 3], b: &[F; 3]) -> BinaryForm<F> {
        let m = [0, 1, 2].map(|i| [a[i].clone(), b[i].clone(), F::zero(&self.ctx)]);
        let r = self.transform(&m);
        let d = self.degree as usize;
        let mut c = vec![F::zero(&self.ctx); d + 1];
        for (e, x) in r.terms {
            c[e[0] as usize] = x;
        }
        BinaryForm::new(d, c, &self.ctx)
    }

    /// Coefficients of z^k as binary forms in (x, y), for k = 0..=degree.
    pub fn z_slices(&self) -> Vec<BinaryForm<F>> {
        let d = self.degree as usize;
        let mut out: Vec<Vec<F>> = (0..=d).map(|k| vec![F::zero(&self.ctx); d - k + 1]).collect();
        for (e, c) in &self.terms {
            out[e[2] as usize][e[0] as usize] = c.clone();
        }
        out.into_iter().enumerate().map(|(k, c)| BinaryForm::new(d - k, c, &self.ctx)).collect()
    }

    pub fn map_coeffs<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> Result<G, FieldError>) -> Result<Poly3<G>, FieldError> {
        let mut r = Poly3::zero(self.degree, ctx);
        for (e, c) in &self.terms {
            r.add_term(*e, f(c)?);
        }
        Ok(r)
    }

    /// Scalar multiple with leading coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.terms.iter().next_back() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// `Some(c)` when `o = c·self` for a nonzero constant c.
    pub fn ratio_to(&self, o: &Self) -> Option<F> {
        if self.degree != o.degree || self.is_zero() || o.is_zero() || self.terms.len() != o.terms.len() {
            return None;
        }
        let (e, c) = self.terms.iter().next_back()?;
        let r = o.terms.get(e)?.checked_div(c).ok()?;
        (self.scale(&r) == *o).then_some(r)
    }

    pub fn is_proportional(&self, o: &Self) -> bool {
        self.ratio_to(o).is_some()
    }

    /// Coefficient vector in the order of [`monomials`].
    pub fn coeff_vector(&self) -> Vec<F> {
        monomials(self.degree).iter().map(|e| self.coeff(e)).collect()
    }

    /// Resultant with respect to z, a binary form of degree deg·deg' in (x, y).
    pub fn resultant_z(&self, o: &Self) -> Result<BinaryForm<F>, FieldError> {
        let (d1, d2) = (self.degree as usize, o.degree as usize);
        if d1 == 0 || d2 == 0 {
            return Err(FieldError::DegreeMismatch(self.degree, o.degree));
        }
        let var = "u";
        let a: Vec<UPoly<F>> = self.z_slices().iter().map(|b| b.dehomogenize_with(var)).collect();
        let b: Vec<UPoly<F>> = o.z_slices().iter().map(|b| b.dehomogenize_with(var)).collect();
        let n = d1 + d2;
        let zero = UPoly::zero(&self.ctx, var);
        let mut m = vec![vec![zero; n]; n];
        for i in 0..d2 {
            for k in 0..=d1 {
                m[i][i + d1 - k] = a[k].clone();
            }
        }
        for i in 0..d1 {
            for k in 0..=d2 {
                m[d2 + i][i + d2 - k] = b[k].clone();
            }
        }
        let r = det_upoly(m, &self.ctx, var)?;
        Ok(BinaryForm::from_upoly(&r, d1 * d2))
    }

    pub fn parse(s: &str, ctx: &F::Ctx, symbols: &[(&str, F)]) -> Result<Self, FieldError> {
        let m: MPoly<F> = parse_with(
            s,
            &|q: &Rational| Ok(MPoly::constant(F::from_rational(ctx, q)?)),
            &|name: &str| match name {
                "x" => Some(MPoly::var(ctx, 0)),
                "y" => Some(MPoly::var(ctx, 1)),
                "z" => Some(MPoly::var(ctx, 2)),
                _ => symbols.iter().find(|(n, _)| *n == name).map(|(_, v)| MPoly::constant(v.clone())),
            },
        )?;
        let mut degs = m.0.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next().unwrap_or(0);
        if let Some(o) = degs.find(|&o| o != d) {
            return Err(FieldError::DegreeMismatch(d, o));
        }
        Self::from_terms(d, ctx, m.0)
    }
}

impl<F: Field> Add for &Poly3<F> {
    type Output = Poly3<F>;
    fn add(self, o: &Poly3<F>) -> Poly3<F> {
        self.checked_add(o).expect("degrees agree")
    }
}

impl<F: Field> Sub for &Poly3<F> {
    type Output = Poly3<F>;
    fn sub(self, o: &Poly3<F>) -> Poly3<F> {
        self.checked_sub(o).expect("degrees agree")
    }
}

impl<F: Field> Neg for &Poly3<F> {
    type Output = Poly3<F>;
    fn neg(self) -> Poly3<F> {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Poly3 { degree: self.degree, terms, ctx: self.ctx.clone() }
    }
}

impl<F: Field> Mul for &Poly3<F> {
    type Output = Poly3<F>;
    fn mul(self, o: &Poly3<F>) -> Poly3<F> {
        let mut r = Poly3::zero(self.degree + o.degree, &self.ctx);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                r.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a.clone() * b.clone());
            }
        }
        r
    }
}

fn mono_string(e: &Exp) -> String {
    let mut parts = Vec::new();
    for (v, n) in ["x", "y", "z"].iter().zip(e) {
        match n {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{n}")),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Poly3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(e, c)| (c.to_string(), mono_string(e)));
        write!(f, "{}", join_terms(terms))
    }
}

/// Not necessarily homogeneous polynomial, used while parsing.
#[derive(Clone)]
struct MPoly<F: Field>(BTreeMap<Exp, F>);

impl<F: Field> MPoly<F> {
    fn constant(c: F) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Self(m)
    }

    fn var(ctx: &F::Ctx, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self(BTreeMap::from([(e, F::one(ctx))]))
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let c = if sign { c.clone() } else { -c.clone() };
            let s = match m.remove(e) {
                Some(x) => x + c,
                None => c,
            };
            if !s.is_zero() {
                m.insert(*e, s);
            }
        }
        Self(m)
    }
}

impl<F: Field> ExprRing for MPoly<F> {
    fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    fn mul(&self, o: &Self) -> Self {
        let mut r = Self(BTreeMap::new());
        for (e, a) in &self.0 {
            for (f, b) in &o.0 {
                let t = Self(BTreeMap::from([([e[0] + f[0], e[1] + f[1], e[2] + f[2]], a.clone() * b.clone())]));
                r = r.combine(&t, true);
            }
        }
        r
    }

    fn neg(&self) -> Self {
        Self(self.0.iter().map(|(e, c)| (*e, -c.clone())).collect())
    }

    fn div(&self, o: &Self) -> Result<Self, FieldError> {
        match o.0.iter().next() {
            Some((e, c)) if o.0.len() == 1 && *e == [0, 0, 0] => {
                let ci = c.inv()?;
                Ok(Self(self.0.iter().map(|(e, x)| (*e, x.clone() * ci.clone())).collect()))
            }
            None => Err(FieldError::DivisionByZero),
            _ => Err(FieldError::Parse("division by a non-constant".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, PrimeCtx, QEps, RatFunc, RatFuncCtx};

    type R = RatFunc<QEps>;

    fn syms() -> (RatFuncCtx<()>, Vec<(&'static str, R)>) {
        let c = RatFuncCtx::new((), "a");
        let s = vec![("a", R::var(&c)), ("e", R::constant(QEps::eps(), &c))];
        (c, s)
    }

    #[test]
    fn flex_on_hesse_member() {
        let (c, s) = syms();
        let t = crate::exactfield::parse_element("-(a^3 + 2)/a", &c, &s).unwrap();
        let mut s2 = s.clone();
        s2.push(("t", t));
        let f = Poly3::parse("x^3 + y^3 + z^3 + t*x*y*z", &c, &s2).unwrap();
        let p = ProjPoint::from_i64(&c, [0, 1, -1]).unwrap();
        assert!(f.vanishes_at(&p));
    }

    #[test]
    fn product_and_partial() {
        let (c, s) = syms();
        let f = Poly3::parse("x*y - a*z^2", &c, &s).unwrap();
        let g = Poly3::parse("x*z - a*y^2", &c, &s).unwrap();
        let h = &f * &g;
        assert_eq!(h.degree(), 4);
        assert!(h.terms().len() <= 9);
        let xyz = Poly3::parse("x*y*z", &c, &s).unwrap();
        assert_eq!(xyz.partial(0), Poly3::parse("y*z", &c, &s).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let (c, s) = syms();
        let f = Poly3::parse("x^2 + (e*a + e)*x*y + (-1 - e)*y^2 + (a+1)/a*y*z + e*z^2", &c, &s).unwrap();
        let text = f.to_string();
        assert_eq!(Poly3::parse(&text, &c, &s).unwrap(), f);
    }

    #[test]
    fn add_degree_mismatch() {
        let c = PrimeCtx::new(7).unwrap();
        let x = Poly3::<Fp>::var(&c, 0);
        assert!(matches!(x.checked_add(&(&x * &x)), Err(FieldError::DegreeMismatch(1, 2))));
        assert!(Poly3::<Fp>::parse("x^2 + y", &c, &[]).is_err());
    }

    #[test]
    fn resultant_of_two_conics() {
        let c = PrimeCtx::new(13).unwrap();
        let f = Poly3::<Fp>::parse("x^2 + y^2 - z^2", &c, &[]).unwrap();
        let g = Poly3::<Fp>::parse("x*y - z^2 + 2*x^2", &c, &[]).unwrap();
        let r = f.resultant_z(&g).unwrap();
        assert_eq!(r.degree(), 4);
        for (u, v) in r.roots().unwrap() {
            let h = &f * &Poly3::constant(Fp::one(&c));
            let on = (0..13).any(|w| {
                let p = [u, v, Fp::new(w, &c)];
                h.eval(&p).is_zero() && g.eval(&p).is_zero()
            });
            assert!(on);
        }
    }

    #[test]
    fn restriction() {
        let c = PrimeCtx::new(13).unwrap();
        let f = Poly3::<Fp>::parse("x^3 + y^3 + z^3", &c, &[]).unwrap();
        let a = [1, 0, 0].map(|v| Fp::from_i64(&c, v));
        let b = [0, 1, 0].map(|v| Fp::from_i64(&c, v));
        let r = f.restrict_to_line(&a, &b);
        assert_eq!(r.coeffs().iter().map(|x| x.value()).collect::<Vec<_>>(), vec![1, 0, 0, 1]);
    }
}
