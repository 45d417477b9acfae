//! Hesse cubics, their flexes and the chord–tangent group law.

use crate::error::{ensure, Error, Result};
use crate::exactfield::{check_eps, BinaryForm, Field, Poly3, ProjPoint};

/// Labels of the nine flexes in F_3^4.
pub const FLEX_F3: [[u8; 4]; 9] = [
    [0, 0, 0, 0],
    [0, 1, 2, 1],
    [0, 2, 1, 2],
    [1, 1, 0, 2],
    [1, 2, 2, 0],
    [1, 0, 1, 1],
    [2, 2, 0, 1],
    [2, 1, 1, 0],
    [2, 0, 2, 2],
];

/// The flexes x_1, …, x_9 of every member of the Hesse pencil.
pub fn hesse_flexes<F: Field>(eps: &F) -> Result<Vec<ProjPoint<F>>> {
    check_eps(eps)?;
    let ctx = eps.ctx();
    let z = F::zero(&ctx);
    let o = F::one(&ctx);
    let e2 = eps.square();
    let m = |x: &F| -x.clone();
    let raw = [
        [z.clone(), o.clone(), m(&o)],
        [z.clone(), o.clone(), m(eps)],
        [z.clone(), o.clone(), m(&e2)],
        [o.clone(), z.clone(), m(&o)],
        [o.clone(), z.clone(), m(&e2)],
        [o.clone(), z.clone(), m(eps)],
        [o.clone(), m(&o), z.clone()],
        [o.clone(), m(eps), z.clone()],
        [o.clone(), m(&e2), z.clone()],
    ];
    raw.into_iter().map(|c| ProjPoint::new(c).map_err(Error::from)).collect()
}

/// The twelve lines of the four triangles, grouped by member.
///
/// The first triple is xyz; triple k (k = 1, 2, 3) is formed by the lines
/// x + ε^i·y + ε^j·z with i + j ≡ k − 1 (mod 3).
pub fn hesse_singular_fibers<F: Field>(eps: &F) -> Result<[[Poly3<F>; 3]; 4]> {
    check_eps(eps)?;
    let ctx = eps.ctx();
    let pw = [F::one(&ctx), eps.clone(), eps.square()];
    let line = |i: usize, j: usize| Poly3::linear(&[F::one(&ctx), pw[i].clone(), pw[j].clone()]);
    let tri = |s: usize| {
        let mut v: Vec<Poly3<F>> = (0..3).map(|i| line(i, (s + 3 - i) % 3)).collect();
        [v.remove(0), v.remove(0), v.remove(0)]
    };
    Ok([[0, 1, 2].map(|i| Poly3::var(&ctx, i)), tri(0), tri(1), tri(2)])
}

/// `(λ : μ)` with `f = λ(x³+y³+z³) + μ·xyz`, if f is a Hesse member.
pub fn hesse_member<F: Field>(f: &Poly3<F>) -> Option<(F, F)> {
    if f.degree() != 3 {
        return None;
    }
    let l = f.coeff(&[3, 0, 0]);
    let m = f.coeff(&[1, 1, 1]);
    let ctx = f.ctx();
    let mut g = Poly3::from_terms(3, ctx, [([3, 0, 0], l.clone()), ([0, 3, 0], l.clone()), ([0, 0, 3], l.clone())]).ok()?;
    g = &g + &Poly3::monomial(m.clone(), [1, 1, 1]);
    (g == *f && !f.is_zero()).then_some((l, m))
}

/// The member x³ + y³ + z³ + t·xyz.
#[derive(Clone, Debug, PartialEq)]
pub struct HesseCubic<F: Field> {
    t: F,
    poly: Poly3<F>,
}

impl<F: Field> HesseCubic<F> {
    pub fn new(t: F) -> Self {
        let ctx = t.ctx();
        let o = F::one(&ctx);
        let poly = Poly3::from_terms(
            3,
            &ctx,
            [([3, 0, 0], o.clone()), ([0, 3, 0], o.clone()), ([0, 0, 3], o), ([1, 1, 1], t.clone())],
        )
        .expect("cubic terms");
        Self { t, poly }
    }

    pub fn t(&self) -> &F {
        &self.t
    }

    pub fn poly(&self) -> &Poly3<F> {
        &self.poly
    }

    /// Smooth iff t³ ≠ −27.
    pub fn is_smooth(&self) -> bool {
        let c = self.t.pow(3) + F::from_i64(&self.t.ctx(), 27);
        !c.is_zero()
    }

    pub fn contains(&self, p: &ProjPoint<F>) -> bool {
        self.poly.vanishes_at(p)
    }
}

/// The chord–tangent group on a smooth plane cubic with a chosen zero.
#[derive(Clone, Debug)]
pub struct CubicGroup<F: Field> {
    curve: Poly3<F>,
    zero: ProjPoint<F>,
    zz: ProjPoint<F>,
}

fn point_on_line<F: Field>(l: &[F; 3], avoid: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let ctx = l[0].ctx();
    for k in 0..3 {
        let mut e = [F::zero(&ctx), F::zero(&ctx), F::zero(&ctx)];
        e[k] = F::one(&ctx);
        let c = crate::exactfield::cross(l, &e);
        if let Ok(p) = ProjPoint::new(c) {
            if &p != avoid {
                return Ok(p);
            }
        }
    }
    Err(Error::Invalid("degenerate line".into()))
}

impl<F: Field> CubicGroup<F> {
    pub fn new(curve: &HesseCubic<F>, zero: ProjPoint<F>) -> Result<Self> {
        if !curve.is_smooth() {
            return Err(Error::Singular(format!("t = {}", curve.t())));
        }
        Self::on_cubic(curve.poly().clone(), zero)
    }

    /// Group law on an arbitrary cubic, which must be smooth at every point used.
    pub fn on_cubic(curve: Poly3<F>, zero: ProjPoint<F>) -> Result<Self> {
        if curve.degree() != 3 {
            return Err(Error::Invalid("not a cubic".into()));
        }
        if !curve.vanishes_at(&zero) {
            return Err(Error::OffCurve(zero.to_string()));
        }
        let mut g = Self { curve, zz: zero.clone(), zero };
        g.zz = g.third_intersection(&g.zero, &g.zero)?;
        Ok(g)
    }

    pub fn zero(&self) -> &ProjPoint<F> {
        &self.zero
    }

    pub fn curve(&self) -> &Poly3<F> {
        &self.curve
    }

    fn check_on(&self, p: &ProjPoint<F>) -> Result<()> {
        ensure_on(&self.curve, p)
    }

    /// The third intersection of the line PQ (the tangent if P = Q) with the curve.
    pub fn third_intersection(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        self.check_on(p)?;
        self.check_on(q)?;
        let ctx = self.curve.ctx().clone();
        let one = F::one(&ctx);
        let zero = F::zero(&ctx);
        let at_p = BinaryForm::vanishing_at(&(one.clone(), zero.clone()));
        let (b, known) = if p == q {
            let grad = self.curve.gradient(p.coords());
            if grad.iter().all(|g| g.is_zero()) {
                return Err(Error::Singular(p.to_string()));
            }
            (point_on_line(&grad, p)?, at_p.mul(&at_p))
        } else {
            (q.clone(), at_p.mul(&BinaryForm::vanishing_at(&(zero.clone(), one.clone()))))
        };
        let g = self.curve.restrict_to_line(p.coords(), b.coords());
        if g.is_zero() {
            return Err(Error::Singular(format!("line through {p} and {b} is a component")));
        }
        let lin = g.divide_exact(&known)?;
        let (s, u) = (-lin.coeffs()[0].clone(), lin.coeffs()[1].clone());
        let c = [0, 1, 2].map(|i| s.clone() * p.coords()[i].clone() + u.clone() * b.coords()[i].clone());
        let r = ProjPoint::new(c)?;
        ensure(self.curve.vanishes_at(&r), || format!("third point {r} off the curve"))?;
        Ok(r)
    }

    pub fn add(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        let r = self.third_intersection(p, q)?;
        self.third_intersection(&self.zero, &r)
    }

    pub fn neg(&self, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        self.third_intersection(p, &self.zz)
    }

    pub fn sub(&self, p: &ProjPoint<F>, q: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        self.add(p, &self.neg(q)?)
    }

    pub fn scalar_mul(&self, n: i64, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        self.check_on(p)?;
        let mut base = if n < 0 { self.neg(p)? } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.zero.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Least n ≤ bound with nP = 0.
    pub fn torsion_order(&self, p: &ProjPoint<F>, bound: u64) -> Result<Option<u64>> {
        if bound < 1 {
            return Err(Error::Invalid("bound must be at least 1".into()));
        }
        let mut q = p.clone();
        for k in 1..=bound {
            if q == self.zero {
                return Ok(Some(k));
            }
            q = self.add(&q, p)?;
        }
        Ok(None)
    }

    pub fn sum(&self, pts: &[ProjPoint<F>]) -> Result<ProjPoint<F>> {
        pts.iter().try_fold(self.zero.clone(), |acc, p| self.add(&acc, p))
    }

    /// Invariants (n, m) with E ≅ Z/n × Z/m and m | n, for a finite point set.
    pub fn group_structure(&self, points: &[ProjPoint<F>]) -> Result<(u64, u64)> {
        let n = points.len() as u64;
        let mut exp = 1u64;
        for p in points {
            let o = self.torsion_order(p, n)?.ok_or_else(|| Error::Check(format!("{p} has no order ≤ {n}")))?;
            exp = num_integer::lcm(exp, o);
        }
        ensure(n % exp == 0, || format!("exponent {exp} does not divide {n}"))?;
        Ok((exp, n / exp))
    }
}

pub(crate) fn ensure_on<F: Field>(c: &Poly3<F>, p: &ProjPoint<F>) -> Result<()> {
    if c.vanishes_at(p) {
        Ok(())
    } else {
        Err(Error::OffCurve(p.to_string()))
    }
}

/// All points of P² over a finite field, canonical and duplicate-free.
pub fn plane_points<F: Field>(ctx: &F::Ctx) -> Result<Vec<ProjPoint<F>>> {
    let els = F::elements(ctx).ok_or_else(|| Error::Invalid(format!("{} is not finite", F::describe(ctx))))?;
    let (z, o) = (F::zero(ctx), F::one(ctx));
    let mut out = Vec::with_capacity(els.len() * els.len() + els.len() + 1);
    for b in &els {
        for c in &els {
            out.push(ProjPoint::new([o.clone(), b.clone(), c.clone()])?);
        }
    }
    for c in &els {
        out.push(ProjPoint::new([z.clone(), o.clone(), c.clone()])?);
    }
    out.push(ProjPoint::new([z.clone(), z, o])?);
    Ok(out)
}

/// Rational points of a plane curve over a finite field.
pub fn rational_points<F: Field>(c: &Poly3<F>) -> Result<Vec<ProjPoint<F>>> {
    let els = F::elements(c.ctx()).ok_or_else(|| Error::Invalid("not a finite field".into()))?;
    let ctx = c.ctx();
    let (z, o) = (F::zero(ctx), F::one(ctx));
    let mut out = Vec::new();
    // Dehomogenized scan keeps the inner loop cheap.
    for b in &els {
        for cc in &els {
            if c.eval(&[o.clone(), b.clone(), cc.clone()]).is_zero() {
                out.push(ProjPoint::new([o.clone(), b.clone(), cc.clone()])?);
            }
        }
    }
    for cc in &els {
        if c.eval(&[z.clone(), o.clone(), cc.clone()]).is_zero() {
            out.push(ProjPoint::new([z.clone(), o.clone(), cc.clone()])?);
        }
    }
    if c.eval(&[z.clone(), z.clone(), o.clone()]).is_zero() {
        out.push(ProjPoint::new([z.clone(), z, o])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{find_eps, Fp, PrimeCtx};

    fn gf(p: u64) -> (PrimeCtx, Fp) {
        let c = PrimeCtx::new(p).unwrap();
        let e = find_eps::<Fp>(&c).unwrap();
        (c, e)
    }

    #[test]
    fn flexes_on_pencil() {
        let (c, e) = gf(7);
        let fl = hesse_flexes(&e).unwrap();
        assert_eq!(fl[6], ProjPoint::from_i64(&c, [1, -1, 0]).unwrap());
        let f = Poly3::<Fp>::parse("x^3 + y^3 + z^3", &c, &[]).unwrap();
        let g = Poly3::<Fp>::parse("x*y*z", &c, &[]).unwrap();
        assert!(fl.iter().all(|p| f.vanishes_at(p) && g.vanishes_at(p)));
    }

    #[test]
    fn triangles_are_members() {
        let (_, e) = gf(13);
        let fl = hesse_flexes(&e).unwrap();
        let fib = hesse_singular_fibers(&e).unwrap();
        let mut on_lines = [0; 9];
        for tri in &fib {
            let prod = &(&tri[0] * &tri[1]) * &tri[2];
            assert!(hesse_member(&prod).is_some());
            for l in tri {
                let hits: Vec<usize> = (0..9).filter(|&i| l.vanishes_at(&fl[i])).collect();
                assert_eq!(hits.len(), 3);
                for i in hits {
                    on_lines[i] += 1;
                }
            }
        }
        assert_eq!(on_lines, [4; 9]);
    }

    fn label_lines(tab: &[[u8; 4]; 9]) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 0..9 {
            for j in i + 1..9 {
                for k in j + 1..9 {
                    if (0..4).all(|c| (tab[i][c] + tab[j][c] + tab[k][c]) % 3 == 0) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn flex_labels() {
        for i in 0..9 {
            for j in i + 1..9 {
                let zeros = (0..4).filter(|&c| FLEX_F3[i][c] == FLEX_F3[j][c]).count();
                assert_eq!(zeros, 1);
            }
        }
        assert_eq!(label_lines(&FLEX_F3).len(), 12);
    }

    #[test]
    fn flex_lines_match_labels_up_to_swapping_last_two() {
        let (_, e) = gf(7);
        let fl = hesse_flexes(&e).unwrap();
        let mut geo = Vec::new();
        for i in 0..9 {
            for j in i + 1..9 {
                for k in j + 1..9 {
                    if fl[i].collinear(&fl[j], &fl[k]) {
                        geo.push([i, j, k]);
                    }
                }
            }
        }
        assert_eq!(geo.len(), 12);
        assert_ne!(geo, label_lines(&FLEX_F3));
        let mut t = FLEX_F3;
        t.swap(7, 8);
        assert_eq!(geo, label_lines(&t));
    }

    #[test]
    fn flex_orders_divide_three() {
        let (c, e) = gf(13);
        let t = Fp::new(1, &c);
        let h = HesseCubic::new(t);
        let fl = hesse_flexes(&e).unwrap();
        let g = CubicGroup::new(&h, fl[0].clone()).unwrap();
        for x in &fl {
            let o = g.torsion_order(x, 24).unwrap().unwrap();
            assert_eq!(3 % o, 0);
        }
    }

    #[test]
    fn hasse_window_and_structure() {
        let (c, e) = gf(13);
        let fl = hesse_flexes(&e).unwrap();
        for t in 0..13 {
            let h = HesseCubic::new(Fp::new(t, &c));
            if !h.is_smooth() {
                continue;
            }
            let pts = rational_points(h.poly()).unwrap();
            assert!((7..=21).contains(&pts.len()));
            let g = CubicGroup::new(&h, fl[6].clone()).unwrap();
            let (n, m) = g.group_structure(&pts).unwrap();
            assert_eq!(n % m, 0);
            assert_eq!(12 % m, 0);
        }
    }

    #[test]
    fn two_torsion_points() {
        let (c, e) = gf(13);
        let fl = hesse_flexes(&e).unwrap();
        for av in 2..13i64 {
            let a = Fp::from_i64(&c, av);
            let t = -(a.pow(3) + Fp::from_i64(&c, 2)) * a.inv().unwrap();
            let h = HesseCubic::new(t);
            if !h.is_smooth() {
                continue;
            }
            let g = CubicGroup::new(&h, fl[6].clone()).unwrap();
            let p = ProjPoint::new([Fp::one(&c), Fp::one(&c), a]).unwrap();
            assert_eq!(g.torsion_order(&p, 24).unwrap(), Some(2));
        }
    }

    #[test]
    fn identity_and_inverse() {
        let (c, e) = gf(19);
        let h = HesseCubic::new(Fp::new(4, &c));
        let fl = hesse_flexes(&e).unwrap();
        let g = CubicGroup::new(&h, fl[0].clone()).unwrap();
        for p in rational_points(h.poly()).unwrap() {
            assert_eq!(g.add(&p, g.zero()).unwrap(), p);
            assert_eq!(&g.add(&p, &g.neg(&p).unwrap()).unwrap(), g.zero());
            assert_eq!(g.scalar_mul(0, &p).unwrap(), *g.zero());
        }
        let off = ProjPoint::from_i64(&c, [1, 1, 1]).unwrap();
        assert!(matches!(g.add(&off, &off), Err(Error::OffCurve(_))));
    }
}
