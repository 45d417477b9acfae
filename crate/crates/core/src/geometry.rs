//! Intersections of plane curves and local singularity analysis.

use crate::error::{ensure, Error, Result};
use crate::exactfield::linalg::{inverse3, mat_vec3};
use crate::exactfield::{cross, BinaryForm, Field, Poly3, ProjPoint};

/// Points common to two curves, each with its intersection multiplicity.
#[derive(Clone, Debug)]
pub struct Meet<F: Field> {
    pub points: Vec<(ProjPoint<F>, usize)>,
    /// Degree of the part of the resultant whose roots lie outside the field.
    pub unresolved: usize,
    /// That part, in the coordinates of `center`.
    pub residual: BinaryForm<F>,
    /// Coordinate change whose third column was the projection center.
    pub center: [[F; 3]; 3],
}

impl<F: Field> Meet<F> {
    pub fn total(&self) -> usize {
        self.points.iter().map(|(_, m)| m).sum::<usize>() + self.unresolved
    }
}

/// Coordinate changes whose third column is the projection center.
fn centers<F: Field>(ctx: &F::Ctx) -> Vec<[[F; 3]; 3]> {
    let n = |v: i64| F::from_i64(ctx, v);
    let mut out = vec![
        [[n(1), n(0), n(0)], [n(0), n(1), n(0)], [n(0), n(0), n(1)]],
        [[n(1), n(0), n(0)], [n(0), n(0), n(1)], [n(0), n(1), n(0)]],
        [[n(0), n(0), n(1)], [n(1), n(0), n(0)], [n(0), n(1), n(0)]],
    ];
    let grid: Vec<F> = match F::elements(ctx) {
        Some(els) => els.into_iter().take(12).collect(),
        None => (-4..=4).map(n).collect(),
    };
    for c0 in &grid {
        for c1 in &grid {
            out.push([[n(1), n(0), c0.clone()], [n(0), n(1), c1.clone()], [n(0), n(0), n(1)]]);
        }
    }
    out
}

fn proj_form<F: Field>(p: &[F; 3]) -> Option<BinaryForm<F>> {
    if p[0].is_zero() && p[1].is_zero() {
        None
    } else {
        Some(BinaryForm::vanishing_at(&(p[0].clone(), p[1].clone())))
    }
}

fn divide_out<F: Field>(r: &mut BinaryForm<F>, l: &BinaryForm<F>) -> usize {
    let mut k = 0;
    while let Ok(q) = r.divide_exact(l) {
        if r.is_zero() {
            break;
        }
        *r = q;
        k += 1;
    }
    k
}

fn top_coeff<F: Field>(c: &Poly3<F>) -> F {
    c.coeff(&[0, 0, c.degree()])
}

/// Attempts one projection; `None` means the center is unsuitable.
fn meet_with<F: Field>(
    c1: &Poly3<F>,
    c2: &Poly3<F>,
    known: &[ProjPoint<F>],
    m: &[[F; 3]; 3],
) -> Result<Option<Meet<F>>> {
    let (g1, g2) = (c1.transform(m), c2.transform(m));
    if top_coeff(&g1).is_zero() || top_coeff(&g2).is_zero() {
        return Ok(None);
    }
    let minv = inverse3(m)?;
    let common: Vec<&ProjPoint<F>> = known.iter().filter(|p| c1.vanishes_at(p) && c2.vanishes_at(p)).collect();
    let mut forms = Vec::new();
    for p in &common {
        let q = mat_vec3(&minv, p.coords());
        let Some(l) = proj_form(&q) else { return Ok(None) };
        if forms.iter().any(|f: &BinaryForm<F>| f.divide_exact(&l).is_ok()) {
            return Ok(None);
        }
        forms.push(l);
    }
    let mut r = g1.resultant_z(&g2)?;
    if r.is_zero() {
        return Err(Error::Invalid(format!("{c1} and {c2} share a component")));
    }
    let ctx = c1.ctx().clone();
    let (zero, one) = (F::zero(&ctx), F::one(&ctx));
    let b = [zero.clone(), zero.clone(), one.clone()];
    let over = |u: &F, v: &F| {
        let a = [u.clone(), v.clone(), zero.clone()];
        g1.restrict_to_line(&a, &b).gcd(&g2.restrict_to_line(&a, &b))
    };
    for p in &common {
        let q = mat_vec3(&minv, p.coords());
        if over(&q[0], &q[1]).degree() != 1 {
            return Ok(None);
        }
    }
    let mut points = Vec::new();
    for (p, l) in common.iter().zip(&forms) {
        let k = divide_out(&mut r, l);
        ensure(k >= 1, || format!("common point {p} missing from the resultant"))?;
        points.push(((*p).clone(), k));
    }
    let mut unresolved = r.degree();
    if r.degree() > 0 {
        let roots = match r.roots() {
            Ok(v) => v,
            Err(_) => return Ok(Some(Meet { points, unresolved, residual: r, center: m.clone() })),
        };
        for (u, v) in roots {
            let l = BinaryForm::vanishing_at(&(u.clone(), v.clone()));
            let k = divide_out(&mut r, &l);
            let h = over(&u, &v);
            let a = [u, v, zero.clone()];
            if h.degree() != 1 {
                return Ok(None);
            }
            let (s, t) = h.roots()?.into_iter().next().ok_or_else(|| Error::Check("no lift".into()))?;
            let q = [0, 1, 2].map(|i| s.clone() * a[i].clone() + t.clone() * b[i].clone());
            let p = ProjPoint::new(mat_vec3(m, &q))?;
            ensure(c1.vanishes_at(&p) && c2.vanishes_at(&p), || format!("lifted point {p} off the curves"))?;
            points.push((p, k));
        }
        unresolved = r.degree();
    }
    Ok(Some(Meet { points, unresolved, residual: r, center: m.clone() }))
}

/// Intersection of two curves without common components.
///
/// Points of `known` on both curves are divided out of the resultant first;
/// remaining roots are extracted where the field allows.
pub fn meet<F: Field>(c1: &Poly3<F>, c2: &Poly3<F>, known: &[ProjPoint<F>]) -> Result<Meet<F>> {
    for m in centers::<F>(c1.ctx()) {
        if let Some(r) = meet_with(c1, c2, known, &m)? {
            return Ok(r);
        }
    }
    Err(Error::NotFound(format!("no admissible projection center for {c1} and {c2}")))
}

/// Whether the two curves cross transversally at a common smooth point.
pub fn transversal<F: Field>(c1: &Poly3<F>, c2: &Poly3<F>, p: &ProjPoint<F>) -> bool {
    let g1 = c1.gradient(p.coords());
    let g2 = c2.gradient(p.coords());
    cross(&g1, &g2).iter().any(|x| !x.is_zero())
}

/// Local type of a singular point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularKind {
    Node,
    Cusp,
    /// Double point with square tangent cone and contact beyond a cusp.
    Tacnode,
    Triple,
    Higher,
}

#[derive(Clone, Debug)]
pub struct SingularPoint<F: Field> {
    pub point: ProjPoint<F>,
    pub multiplicity: u32,
    pub kind: SingularKind,
}

/// Homogeneous parts of the local expansion of f at p, by degree.
fn local_parts<F: Field>(f: &Poly3<F>, p: &ProjPoint<F>) -> Vec<BinaryForm<F>> {
    let ctx = f.ctx().clone();
    let k = p.coords().iter().position(|c| !c.is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let mut m: [[F; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| F::zero(&ctx)));
    for i in 0..3 {
        m[i][0] = p.coords()[i].clone();
    }
    m[others[0]][1] = F::one(&ctx);
    m[others[1]][2] = F::one(&ctx);
    let g = f.transform(&m);
    let d = f.degree() as usize;
    let mut parts: Vec<Vec<F>> = (0..=d).map(|j| vec![F::zero(&ctx); j + 1]).collect();
    for (e, c) in g.terms() {
        let j = (e[1] + e[2]) as usize;
        parts[j][e[1] as usize] = c.clone();
    }
    parts.into_iter().enumerate().map(|(j, c)| BinaryForm::new(j, c, &ctx)).collect()
}

/// Multiplicity and type of f at a point of the curve.
pub fn classify_point<F: Field>(f: &Poly3<F>, p: &ProjPoint<F>) -> Result<(u32, Option<SingularKind>)> {
    let parts = local_parts(f, p);
    let m = parts.iter().position(|b| !b.is_zero()).ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    ensure(m >= 1, || format!("{p} is not on the curve"))?;
    let kind = match m {
        1 => None,
        2 => {
            let q = &parts[2];
            if q.is_squarefree() {
                Some(SingularKind::Node)
            } else {
                let dir = q.roots()?.into_iter().next().ok_or_else(|| Error::Check("tangent direction".into()))?;
                let c3 = parts.get(3).map(|b| b.eval(&dir.0, &dir.1));
                match c3 {
                    Some(v) if !v.is_zero() => Some(SingularKind::Cusp),
                    _ => Some(SingularKind::Tacnode),
                }
            }
        }
        3 => Some(SingularKind::Triple),
        _ => Some(SingularKind::Higher),
    };
    Ok((m as u32, kind))
}

/// Singular points of a curve over a finite field, by exhaustive scan.
pub fn singular_census<F: Field>(f: &Poly3<F>) -> Result<Vec<SingularPoint<F>>> {
    let parts = [f.partial(0), f.partial(1), f.partial(2)];
    let mut out = Vec::new();
    for p in crate::cubic::plane_points::<F>(f.ctx())? {
        if f.vanishes_at(&p) && parts.iter().all(|d| d.vanishes_at(&p)) {
            let (multiplicity, kind) = classify_point(f, &p)?;
            let kind = kind.ok_or_else(|| Error::Check(format!("{p} has vanishing gradient but multiplicity 1")))?;
            out.push(SingularPoint { point: p, multiplicity, kind });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Fp, PrimeCtx, Rational};

    fn q(s: &str) -> Poly3<Rational> {
        Poly3::parse(s, &(), &[]).unwrap()
    }

    #[test]
    fn conic_line_meet() {
        let c = PrimeCtx::new(13).unwrap();
        let f = |s: &str| Poly3::<Fp>::parse(s, &c, &[]).unwrap();
        let m = meet(&f("x^2 + y^2 - z^2"), &f("x"), &[]).unwrap();
        assert_eq!(m.unresolved, 0);
        assert_eq!(m.points.len(), 2);
        assert!(m.points.contains(&(ProjPoint::from_i64(&c, [0, 1, -1]).unwrap(), 1)));
    }

    #[test]
    fn tangent_meet_has_multiplicity_two() {
        let c = q("x*z - y^2");
        let l = q("x");
        let o = ProjPoint::from_i64(&(), [0, 0, 1]).unwrap();
        let m = meet(&c, &l, &[o.clone()]).unwrap();
        assert_eq!(m.points, vec![(o.clone(), 2)]);
        assert!(!transversal(&c, &l, &o));
    }

    #[test]
    fn irrational_points_left_unresolved() {
        let m = meet(&q("x^2 - 2*z^2"), &q("y"), &[]).unwrap();
        assert_eq!((m.points.len(), m.unresolved), (0, 2));
    }

    #[test]
    fn census_types() {
        let c = PrimeCtx::new(13).unwrap();
        let conic = Poly3::<Fp>::parse("x^2 + y^2 - z^2", &c, &[]).unwrap();
        assert!(singular_census(&conic).unwrap().is_empty());
        let cusp = Poly3::<Fp>::parse("z*y^2 - x^3", &c, &[]).unwrap();
        let s = singular_census(&cusp).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].point, ProjPoint::from_i64(&c, [0, 0, 1]).unwrap());
        assert_eq!(s[0].kind, SingularKind::Cusp);
        let node = Poly3::<Fp>::parse("z*y^2 - x^3 - x^2*z", &c, &[]).unwrap();
        assert_eq!(singular_census(&node).unwrap()[0].kind, SingularKind::Node);
        let tac = Poly3::<Fp>::parse("y^2*z^2 - x^4", &c, &[]).unwrap();
        let s = singular_census(&tac).unwrap();
        assert!(s.iter().any(|p| p.kind == SingularKind::Tacnode));
    }
}
