use std::fmt;

use super::parse::join_terms;
use super::{Field, FieldError, UPoly};

/// Binary form `Σ c_i·u^i·v^(deg−i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<F: Field> {
    deg: usize,
    c: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(deg: usize, mut c: Vec<F>, ctx: &F::Ctx) -> Self {
        c.resize(deg + 1, F::zero(ctx));
        Self { deg, c, ctx: ctx.clone() }
    }

    /// The linear form vanishing at (u0 : v0).
    pub fn vanishing_at(root: &(F, F)) -> Self {
        let ctx = root.0.ctx();
        Self::new(1, vec![-root.0.clone(), root.1.clone()], &ctx)
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn eval(&self, u: &F, v: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        let mut up = F::one(&self.ctx);
        let vp: Vec<F> = {
            let mut w = vec![F::one(&self.ctx)];
            for _ in 0..self.deg {
                let l = w.last().unwrap().clone() * v.clone();
                w.push(l);
            }
            w
        };
        for (i, c) in self.c.iter().enumerate() {
            acc = acc + c.clone() * up.clone() * vp[self.deg - i].clone();
            up = up * u.clone();
        }
        acc
    }

    pub(crate) fn dehomogenize_with(&self, var: &'static str) -> UPoly<F> {
        UPoly::new(self.c.clone(), &self.ctx, var)
    }

    /// Restriction to v = 1 together with the multiplicity of (1 : 0).
    pub fn dehomogenize(&self) -> (UPoly<F>, usize) {
        let p = UPoly::new(self.c.clone(), &self.ctx, "u");
        let k = match p.degree() {
            Some(d) => self.deg - d,
            None => 0,
        };
        (p, k)
    }

    pub fn from_upoly(p: &UPoly<F>, deg: usize) -> Self {
        Self::new(deg, p.coeffs().to_vec(), p.ctx())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, ka) = self.dehomogenize();
        let (b, kb) = o.dehomogenize();
        let _ = (ka, kb);
        Self::from_upoly(&(&a * &b), self.deg + o.deg)
    }

    /// Exact quotient, checked by re-multiplication.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, FieldError> {
        if d.deg > self.deg {
            return Err(FieldError::InexactDivision);
        }
        let (a, ka) = self.dehomogenize();
        let (b, kb) = d.dehomogenize();
        if b.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if a.is_zero() {
            return Ok(Self::new(self.deg - d.deg, vec![], &self.ctx));
        }
        if kb > ka {
            return Err(FieldError::InexactDivision);
        }
        let q = Self::from_upoly(&a.divide_exact(&b)?, self.deg - d.deg);
        if q.mul(d) != *self {
            return Err(FieldError::InexactDivision);
        }
        Ok(q)
    }

    /// Greatest common divisor, normalized to be monic in u where possible.
    pub fn gcd(&self, o: &Self) -> Self {
        let (a, ka) = self.dehomogenize();
        let (b, kb) = o.dehomogenize();
        let g = a.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        let k = ka.min(kb);
        Self::from_upoly(&g, gd + k)
    }

    pub fn is_squarefree(&self) -> bool {
        let (a, k) = self.dehomogenize();
        !a.is_zero() && k <= 1 && a.is_squarefree()
    }

    /// Zeros in P¹ over the coefficient field, each listed once.
    pub fn roots(&self) -> Result<Vec<(F, F)>, FieldError> {
        let (a, k) = self.dehomogenize();
        let one = F::one(&self.ctx);
        let mut r: Vec<(F, F)> = a.roots_in_field()?.into_iter().map(|x| (x, one.clone())).collect();
        if k > 0 {
            r.push((one, F::zero(&self.ctx)));
        }
        Ok(r)
    }
}

impl<F: Field> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.c.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let j = self.deg - i;
            let mut m = Vec::new();
            match i {
                0 => {}
                1 => m.push("u".to_string()),
                _ => m.push(format!("u^{i}")),
            }
            match j {
                0 => {}
                1 => m.push("v".to_string()),
                _ => m.push(format!("v^{j}")),
            }
            (c.to_string(), m.join("*"))
        });
        write!(f, "{}", join_terms(terms))
    }
}
