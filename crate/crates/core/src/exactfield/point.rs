use std::fmt;

use super::{Field, FieldError};

/// Point of the projective plane; the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint<F: Field> {
    c: [F; 3],
}

impl<F: Field> ProjPoint<F> {
    pub fn new(c: [F; 3]) -> Result<Self, FieldError> {
        c[0].same_ctx(&c[1])?;
        c[0].same_ctx(&c[2])?;
        let k = c.iter().position(|x| !x.is_zero()).ok_or(FieldError::ZeroPoint)?;
        if c[k].is_one() {
            return Ok(Self { c });
        }
        let s = c[k].inv()?;
        Ok(Self { c: c.map(|x| x * s.clone()) })
    }

    pub fn from_i64(ctx: &F::Ctx, c: [i64; 3]) -> Result<Self, FieldError> {
        Self::new(c.map(|v| F::from_i64(ctx, v)))
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.c
    }

    pub fn ctx(&self) -> F::Ctx {
        self.c[0].ctx()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G, FieldError>) -> Result<ProjPoint<G>, FieldError> {
        ProjPoint::new([f(&self.c[0])?, f(&self.c[1])?, f(&self.c[2])?])
    }

    /// Linear form vanishing at both points.
    pub fn join(&self, o: &Self) -> [F; 3] {
        cross(&self.c, &o.c)
    }

    /// Whether the three points lie on a line.
    pub fn collinear(&self, q: &Self, r: &Self) -> bool {
        let l = self.join(q);
        dot(&l, &r.c).is_zero()
    }
}

pub(crate) fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    let m = |i: usize, j: usize| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
    [m(1, 2), m(2, 0), m(0, 1)]
}

pub(crate) fn dot<F: Field>(a: &[F; 3], b: &[F; 3]) -> F {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.c[0], self.c[1], self.c[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, PrimeCtx};

    #[test]
    fn canonical() {
        let c = PrimeCtx::new(7).unwrap();
        let p = ProjPoint::<Fp>::from_i64(&c, [0, 3, 5]).unwrap();
        assert_eq!(p.coords()[1].value(), 1);
        assert_eq!(p, ProjPoint::from_i64(&c, [0, 6, 3]).unwrap());
        assert!(ProjPoint::<Fp>::from_i64(&c, [0, 0, 0]).is_err());
    }
}
