//! The (-1)-classes and the structures acting on them.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::exactfield::linalg::kernel;
use crate::exactfield::{monomials, Field, Poly3, ProjPoint};

use super::smith::CosetLabeler;
use super::{PicClass, SurfaceLattice};

/// For the i-th exceptional class, the 16 classes E_i − Σ_{f∈I} R_f⁽⁰⁾ + |I|·F_0
/// keyed by the bitmask of I.
pub fn exceptional_family(l: &SurfaceLattice, i: usize) -> Result<Vec<(u8, PicClass)>> {
    let e = PicClass::e(i);
    let lab = l.labeling(&e)?;
    let f0 = l.half_fiber();
    Ok((0u8..16)
        .map(|mask| {
            let d = (0..4).filter(|f| mask >> f & 1 == 1).fold(e, |d, f| d - l.minus2()[lab[f][0]] + f0);
            (mask, d)
        })
        .collect())
}

pub fn enumerate_minus1_generative(l: &SurfaceLattice) -> Result<Vec<PicClass>> {
    if l.index() != 2 {
        return Err(Error::Invalid(format!("generative enumeration needs index 2, got {}", l.index())));
    }
    let mut set = BTreeSet::new();
    for i in 1..10 {
        for (_, d) in exceptional_family(l, i)? {
            ensure(l.is_exceptional(&d), || format!("{d} is not an exceptional class"))?;
            set.insert(d);
        }
    }
    ensure(set.len() == 144, || format!("{} classes instead of 144", set.len()))?;
    Ok(set.into_iter().collect())
}

/// All m_1..m_9 with Σm = s and Σm² = q, in lexicographic order.
fn mult_vectors(s: i64, q: i64) -> Vec<[i64; 9]> {
    fn go(k: usize, s: i64, q: i64, cur: &mut [i64; 9], out: &mut Vec<[i64; 9]>) {
        let left = (9 - k) as i64;
        if left == 0 {
            if s == 0 && q == 0 {
                out.push(*cur);
            }
            return;
        }
        // Cauchy–Schwarz: s² ≤ left·q
        if q < 0 || s * s > left * q {
            return;
        }
        let b = (q as f64).sqrt() as i64 + 1;
        for m in -b..=b {
            if m * m > q {
                continue;
            }
            cur[k] = m;
            go(k + 1, s - m, q - m * m, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, s, q, &mut [0; 9], &mut out);
    out
}

/// Integer solutions of 3d − Σm = 1, d² − Σm² = −1 with 0 ≤ d ≤ d_max,
/// optionally meeting every (-2)-class nonnegatively; sorted.
pub fn enumerate_minus1_bruteforce(l: &SurfaceLattice, d_max: i64, constrained: bool) -> Vec<PicClass> {
    let mut out: Vec<PicClass> = (0..=d_max)
        .into_par_iter()
        .flat_map_iter(|d| {
            mult_vectors(3 * d - 1, d * d + 1).into_iter().map(move |m| {
                let mut c = [0; 10];
                c[0] = d;
                for i in 0..9 {
                    c[i + 1] = -m[i];
                }
                PicClass(c)
            })
        })
        .filter(|c| !constrained || l.is_nef_on_minus2(c))
        .collect();
    out.sort();
    out
}

/// One integer point of the per-fiber polytope: coefficients on [R⁽⁰⁾, R⁽¹⁾, R⁽²⁾]
/// with maximum 0, together with the resulting class Σ a·R.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LtropPoint {
    pub coeffs: Vec<[i64; 3]>,
    pub class: PicClass,
}

#[derive(Clone, Debug)]
pub struct Ltrop {
    pub base: PicClass,
    pub points: Vec<LtropPoint>,
}

impl Ltrop {
    /// The curve class E + v + k·F_0 with k fixed by (E + v + kF_0)² = −1.
    pub fn curve(&self, p: &LtropPoint, l: &SurfaceLattice) -> Result<PicClass> {
        let e = self.base;
        let v = p.class;
        let num = -(2 * e.inner(&v) + v.square());
        let ef = e.inner(&l.half_fiber());
        ensure(ef != 0 && num % (2 * ef) == 0, || format!("no integral F_0-shift for {v}"))?;
        Ok(e + v + (num / (2 * ef)) * l.half_fiber())
    }

    pub fn curves(&self, l: &SurfaceLattice) -> Result<Vec<PicClass>> {
        self.points.iter().map(|p| self.curve(p, l)).collect()
    }
}

/// Integer points of the tropical Riemann–Roch polytope of E modulo m·K.
pub fn ltrop(e: &PicClass, l: &SurfaceLattice) -> Result<Ltrop> {
    if !e.is_minus1() {
        return Err(Error::Invalid(format!("{e} is not a (-1)-class")));
    }
    const BOX: i64 = 4;
    let mut per_fiber: Vec<Vec<[i64; 3]>> = Vec::new();
    for f in 0..4 {
        let r = l.fiber(f);
        let mut pts = Vec::new();
        // normalized by a_2 = 0, then shifted so the maximum is 0
        for a0 in -BOX..=BOX {
            for a1 in -BOX..=BOX {
                let a = [a0, a1, 0];
                let d = *e + (0..3).map(|k| a[k] * r[k]).sum::<PicClass>();
                if r.iter().all(|rk| d.inner(rk) >= 0) {
                    ensure(a0.abs() < BOX && a1.abs() < BOX, || format!("polytope on fiber {} touches the search box", f + 1))?;
                    let mx = *a.iter().max().unwrap();
                    pts.push(a.map(|x| x - mx));
                }
            }
        }
        pts.sort();
        ensure(!pts.is_empty(), || format!("empty polytope on fiber {}", f + 1))?;
        per_fiber.push(pts);
    }
    let mut points = vec![LtropPoint { coeffs: vec![], class: PicClass::ZERO }];
    for (f, pts) in per_fiber.iter().enumerate() {
        let r = l.fiber(f);
        points = points
            .into_iter()
            .flat_map(|p| {
                pts.iter().map(move |a| {
                    let mut coeffs = p.coeffs.clone();
                    coeffs.push(*a);
                    LtropPoint { coeffs, class: p.class + (0..3).map(|k| a[k] * r[k]).sum::<PicClass>() }
                })
            })
            .collect();
    }
    points.sort();
    let set: BTreeSet<&Vec<[i64; 3]>> = points.iter().map(|p| &p.coeffs).collect();
    for p in &points {
        for q in &points {
            let m: Vec<[i64; 3]> = p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| std::array::from_fn(|k| a[k].max(b[k]))).collect();
            ensure(set.contains(&m), || "tropical sum leaves the set".into())?;
        }
    }
    Ok(Ltrop { base: *e, points })
}

/// The two translation generators acting on the nine points.
pub const MW_GENERATORS: [&str; 2] = ["(1 9 5)(2 7 6)(3 8 4)", "(1 8 6)(2 9 4)(3 7 5)"];

/// A permutation of e_1, …, e_9 fixing e_0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasePerm(pub [usize; 10]);

impl BasePerm {
    pub fn identity() -> Self {
        BasePerm(std::array::from_fn(|i| i))
    }

    pub fn from_cycles(s: &str) -> Result<Self> {
        let mut p = Self::identity().0;
        let mut seen = [false; 10];
        for cyc in s.split(')').map(|c| c.trim().trim_start_matches('(')).filter(|c| !c.is_empty()) {
            let xs: Vec<usize> = cyc
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&x| (1..10).contains(&x)))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Invalid(format!("bad cycle ({cyc})")))?;
            for (k, &x) in xs.iter().enumerate() {
                if seen[x] {
                    return Err(Error::Invalid(format!("{x} repeated in {s}")));
                }
                seen[x] = true;
                p[x] = xs[(k + 1) % xs.len()];
            }
        }
        Ok(BasePerm(p))
    }

    /// self ∘ o.
    pub fn compose(&self, o: &Self) -> Self {
        BasePerm(std::array::from_fn(|i| self.0[o.0[i]]))
    }

    pub fn order(&self) -> usize {
        let mut q = *self;
        let mut n = 1;
        while q != Self::identity() {
            q = q.compose(self);
            n += 1;
        }
        n
    }

    pub fn apply(&self, c: &PicClass) -> PicClass {
        c.permuted(&self.0)
    }
}

/// The group generated by the translation generators, after checking that they
/// commute, have order 3 and permute the (-2)-classes.
pub fn mw_group(l: &SurfaceLattice) -> Result<Vec<BasePerm>> {
    let g: Vec<BasePerm> = MW_GENERATORS.iter().map(|s| BasePerm::from_cycles(s)).collect::<Result<_>>()?;
    ensure(g[0].compose(&g[1]) == g[1].compose(&g[0]), || "generators do not commute".into())?;
    for x in &g {
        ensure(x.order() == 3, || format!("generator of order {}", x.order()))?;
        for i in 0..10 {
            for j in 0..10 {
                let (a, b) = (PicClass::e(i), PicClass::e(j));
                ensure(x.apply(&a).inner(&x.apply(&b)) == a.inner(&b), || "not an isometry".into())?;
            }
        }
        let m2: BTreeSet<PicClass> = l.minus2().iter().copied().collect();
        ensure(l.minus2().iter().all(|r| m2.contains(&x.apply(r))), || "(-2)-classes not preserved".into())?;
    }
    let mut group = BTreeSet::from([BasePerm::identity()]);
    let mut frontier = vec![BasePerm::identity()];
    while let Some(h) = frontier.pop() {
        for x in &g {
            let n = x.compose(&h);
            if group.insert(n) {
                frontier.push(n);
            }
        }
    }
    Ok(group.into_iter().collect())
}

/// Orbits of the translation group, each sorted, ordered by their least element.
pub fn mw_orbits(classes: &[PicClass], l: &SurfaceLattice) -> Result<Vec<Vec<PicClass>>> {
    let group = mw_group(l)?;
    let set: BTreeSet<PicClass> = classes.iter().copied().collect();
    let mut done = BTreeSet::new();
    let mut orbits = Vec::new();
    for c in &set {
        if done.contains(c) {
            continue;
        }
        let orbit: BTreeSet<PicClass> = group.iter().map(|g| g.apply(c)).collect();
        if let Some(out) = orbit.iter().find(|x| !set.contains(x)) {
            return Err(Error::Check(format!("{c} maps to {out} outside the input")));
        }
        done.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

/// Cosets of the (-1)-classes modulo Λ and modulo Λ + Z·F_0.
#[derive(Clone, Debug, Serialize)]
pub struct ResPartition {
    pub modulo_lambda: Vec<Vec<PicClass>>,
    pub modulo_lambda_f0: Vec<Vec<PicClass>>,
}

fn partition_by(classes: &[PicClass], q: &CosetLabeler) -> Vec<Vec<PicClass>> {
    let mut m: BTreeMap<Vec<i64>, Vec<PicClass>> = BTreeMap::new();
    for c in classes {
        m.entry(q.label(&c.0)).or_default().push(*c);
    }
    let mut out: Vec<Vec<PicClass>> = m.into_values().map(|mut v| { v.sort(); v }).collect();
    out.sort();
    out
}

pub fn res_partition(classes: &[PicClass], l: &SurfaceLattice) -> Result<ResPartition> {
    if let Some(c) = classes.iter().find(|c| !c.is_minus1()) {
        return Err(Error::Invalid(format!("{c} is not a (-1)-class")));
    }
    let lambda: Vec<Vec<i64>> = l.minus2().iter().map(|r| r.0.to_vec()).collect();
    let mut with_f0 = lambda.clone();
    with_f0.push(l.half_fiber().0.to_vec());
    let q1 = CosetLabeler::new(&lambda, 10)?;
    let q2 = CosetLabeler::new(&with_f0, 10)?;
    for q in [&q1, &q2] {
        ensure(q.smith().rank() == 9, || format!("span has rank {}", q.smith().rank()))?;
    }
    Ok(ResPartition { modulo_lambda: partition_by(classes, &q1), modulo_lambda_f0: partition_by(classes, &q2) })
}

/// F_0 + (e_0 − e_i) − E.
pub fn bertini_pair(e: &PicClass, i: usize, l: &SurfaceLattice) -> Result<PicClass> {
    if !(1..10).contains(&i) {
        return Err(Error::Invalid(format!("base point index {i}")));
    }
    let b = PicClass::e(0) - PicClass::e(i);
    let out = l.half_fiber() + b - *e;
    ensure(l.is_exceptional(&out), || format!("{out} paired with {e} is not an exceptional class"))?;
    Ok(out)
}

/// The pairing E ↦ F_0 + B − E on the 144 classes, where B is the branch class
/// of the base point whose family contains E. Returned as (E, E') for every E.
pub fn bertini_involution(classes: &[PicClass], l: &SurfaceLattice) -> Result<Vec<(PicClass, PicClass)>> {
    let mut base = BTreeMap::new();
    for i in 1..10 {
        for (_, d) in exceptional_family(l, i)? {
            if base.insert(d, i).is_some() {
                return Err(Error::Check(format!("{d} lies in two families")));
            }
        }
    }
    let set: BTreeSet<PicClass> = classes.iter().copied().collect();
    let mut out = Vec::new();
    for c in classes {
        let i = *base.get(c).ok_or_else(|| Error::NotFound(format!("family of {c}")))?;
        let p = bertini_pair(c, i, l)?;
        ensure(set.contains(&p), || format!("{p} is not in the input"))?;
        ensure(base.get(&p) == Some(&i), || format!("{p} left the family of e{i}"))?;
        ensure(bertini_pair(&p, i, l)? == *c, || format!("pairing of {c} is not an involution"))?;
        ensure(c.inner(&p) == 3, || format!("{c} and {p} meet in {}", c.inner(&p)))?;
        ensure(c.degree() + p.degree() == 4, || format!("degrees {} and {}", c.degree(), p.degree()))?;
        out.push((*c, p));
    }
    Ok(out)
}

pub fn max_intersection(classes: &[PicClass]) -> Option<i64> {
    classes.iter().enumerate().flat_map(|(i, a)| classes[i + 1..].iter().map(move |b| a.inner(b))).max()
}

/// Row of the table of (-1)-classes, relative to the double plane of e_1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub deg: i64,
    pub n: i64,
    pub v_c: usize,
    pub u_c: usize,
    pub split: bool,
    pub class: PicClass,
}

pub fn table_rows(classes: &[PicClass], l: &SurfaceLattice) -> Result<Vec<TableRow>> {
    let e1 = PicClass::e(1);
    let lab = l.labeling(&e1)?;
    let r0: Vec<PicClass> = lab.iter().map(|t| l.minus2()[t[0]]).collect();
    let fixed: BTreeSet<PicClass> = exceptional_family(l, 1)?.into_iter().map(|(_, d)| d).collect();
    let mut rows: Vec<TableRow> = classes
        .iter()
        .map(|c| {
            let meets: Vec<i64> = r0.iter().map(|r| c.inner(r)).collect();
            let ones = meets.iter().filter(|&&x| x == 1).count();
            let twos = meets.iter().filter(|&&x| x == 2).count();
            let split = !fixed.contains(c);
            TableRow {
                deg: c.degree(),
                n: c.mult(1),
                v_c: if split { ones } else { ones + twos },
                u_c: if split { twos } else { 0 },
                split,
                class: *c,
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.split, r.n, r.deg, r.class));
    Ok(rows)
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("deg,n,v_C,split,class\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{}\n", r.deg, r.n, r.v_c, if r.split { "yes" } else { "no" }, r.class));
    }
    s
}

/// For each class of degree 1 or 2, the curve through its simple points is
/// unique, irreducible and avoids the other points. Returns how many were checked.
pub fn realize_low_degree<F: Field>(classes: &[PicClass], points: &[ProjPoint<F>]) -> Result<usize> {
    if points.len() != 9 {
        return Err(Error::Invalid(format!("{} points", points.len())));
    }
    let ctx = points[0].ctx();
    let mut checked = 0;
    for c in classes.iter().filter(|c| (1..=2).contains(&c.degree())) {
        let d = c.degree() as u32;
        ensure((1..10).all(|i| (0..=1).contains(&c.mult(i))), || format!("{c} has a multiple point"))?;
        let mons = monomials(d);
        let rows: Vec<Vec<F>> = (1..10)
            .filter(|&i| c.mult(i) == 1)
            .map(|i| mons.iter().map(|e| Poly3::monomial(F::one(&ctx), *e).eval(points[i - 1].coords())).collect())
            .collect();
        let ker = kernel(&rows, mons.len(), &ctx);
        ensure(ker.len() == 1, || format!("{c}: {} independent curves", ker.len()))?;
        let curve = Poly3::from_terms(d, &ctx, mons.iter().copied().zip(ker[0].iter().cloned()))?;
        for i in (1..10).filter(|&i| c.mult(i) == 0) {
            ensure(!curve.vanishes_at(&points[i - 1]), || format!("{c}: curve passes through p{i}"))?;
        }
        if d == 2 {
            ensure(!conic_det(&curve).is_zero(), || format!("{c}: conic is reducible"))?;
        }
        checked += 1;
    }
    Ok(checked)
}

/// Determinant of the symmetric matrix of a conic, up to the factor 1/4.
fn conic_det<F: Field>(q: &Poly3<F>) -> F {
    let two = F::from_i64(q.ctx(), 2);
    let c = |e: [u32; 3]| q.coeff(&e);
    let m = [
        [two.clone() * c([2, 0, 0]), c([1, 1, 0]), c([1, 0, 1])],
        [c([1, 1, 0]), two.clone() * c([0, 2, 0]), c([0, 1, 1])],
        [c([1, 0, 1]), c([0, 1, 1]), two * c([0, 0, 2])],
    ];
    crate::exactfield::linalg::det3(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piclattice::chilean_lattice;

    #[test]
    fn generative_count_and_degrees() {
        let l = chilean_lattice().unwrap();
        let s = enumerate_minus1_generative(&l).unwrap();
        assert_eq!(s.len(), 144);
        let mut h = BTreeMap::new();
        for c in &s {
            *h.entry(c.degree()).or_insert(0) += 1;
        }
        assert_eq!(h, BTreeMap::from([(0, 9), (1, 36), (2, 54), (3, 36), (4, 9)]));
    }

    #[test]
    fn ltrop_of_e9() {
        let l = chilean_lattice().unwrap();
        let t = ltrop(&PicClass::e(9), &l).unwrap();
        assert_eq!(t.points.len(), 16);
        assert!(t.points.iter().any(|p| p.class == PicClass::ZERO));
        let fam: BTreeSet<PicClass> = exceptional_family(&l, 9).unwrap().into_iter().map(|(_, d)| d).collect();
        assert_eq!(t.curves(&l).unwrap().into_iter().collect::<BTreeSet<_>>(), fam);
    }

    #[test]
    fn ltrop_rejects_non_minus1() {
        let l = chilean_lattice().unwrap();
        assert!(ltrop(&PicClass::e(0), &l).is_err());
    }

    #[test]
    fn cycles_parse() {
        let g = BasePerm::from_cycles("(1 9 5)(2 7 6)(3 8 4)").unwrap();
        assert_eq!(g.0[1], 9);
        assert_eq!(g.0[5], 1);
        assert_eq!(g.order(), 3);
        assert!(BasePerm::from_cycles("(1 2)(2 3)").is_err());
        assert!(BasePerm::from_cycles("(1 x)").is_err());
    }

    #[test]
    fn quartic_partner_of_e1() {
        let l = chilean_lattice().unwrap();
        let p = bertini_pair(&PicClass::e(1), 1, &l).unwrap();
        assert_eq!(p, PicClass([4, -3, -1, -1, -1, -1, -1, -1, -1, -1]));
        assert_eq!(bertini_pair(&p, 1, &l).unwrap(), PicClass::e(1));
        assert_eq!(p.inner(&PicClass::e(1)), 3);
    }

    #[test]
    fn bertini_pair_rejects_wrong_branch() {
        let l = chilean_lattice().unwrap();
        assert!(bertini_pair(&PicClass::e(1), 2, &l).is_err());
    }

    #[test]
    fn small_multiplicity_search() {
        // d = 1: a line through two of the nine points
        assert_eq!(mult_vectors(2, 2).len(), 36);
        assert_eq!(mult_vectors(-1, 1).len(), 9);
    }

    #[test]
    fn csv_header() {
        let l = chilean_lattice().unwrap();
        let s = enumerate_minus1_generative(&l).unwrap();
        let csv = table_csv(&table_rows(&s, &l).unwrap());
        assert!(csv.starts_with("deg,n,v_C,split,class\n0,-1,0,no,e1\n"));
        assert_eq!(csv.lines().count(), 145);
    }
}
