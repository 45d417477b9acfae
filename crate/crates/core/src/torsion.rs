//! Torsion loci on the Hesse cubic and the curves of higher index.
//!
//! All loci are taken with zero x_7 = (1 : −1 : 0) on x³ + y³ + z³ + t·xyz.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cubic::{hesse_flexes, rational_points, CubicGroup, HesseCubic};
use crate::error::{ensure, Error, Result};
use crate::exactfield::linalg::kernel;
use crate::exactfield::{find_eps, monomials, ExtCtx, Field, Fp, Fq, Poly3, PrimeCtx, ProjPoint};

pub const LOCUS_4: &str = "x*y^3 - y^4 - t*x*y^2*z - x*z^3 - 2*y*z^3";

pub const LOCUS_5: &str = "2*x^2*y^6 - x*y^7 + 2*y^8 - x^2*y^3*z^3 - x*y^4*z^3 + 5*y^5*z^3 - x^2*z^6 + 2*x*y*z^6 + 2*y^2*z^6 \
    + t*(-x^2*y^5*z + 3*x*y^6*z - y^7*z + x^2*y^2*z^4 + 3*x*y^3*z^4 + y*z^7) \
    + t^2*(x^2*y^4*z^2 - x*y^5*z^2 + x*y^2*z^5)";

/// Cubics cutting out the points of order 9; `e` is ε.
pub const NINE_TORSION_CUBICS: [&str; 8] = [
    "x*y^2 + e*x^2*z + e^2*y*z^2",
    "x*y^2 + e^2*x^2*z + e*y*z^2",
    "x*y^2 + x^2*z + y*z^2",
    "x^2*y + e^2*y^2*z + e*x*z^2",
    "x^2*y + e*y^2*z + e^2*x*z^2",
    "x^2*y + y^2*z + x*z^2",
    "3*x^3 + (e + 2)*t*x*y*z - 3*e^2*z^3",
    "3*x^3 + (-e + 1)*t*x*y*z - 3*e*z^3",
];

/// The group zero x_7 = (1 : −1 : 0).
pub fn x7<F: Field>(ctx: &F::Ctx) -> Result<ProjPoint<F>> {
    Ok(ProjPoint::from_i64(ctx, [1, -1, 0])?)
}

fn parse_t<F: Field>(s: &str, eps: &F, t: &F) -> Result<Poly3<F>> {
    Ok(Poly3::parse(s, &eps.ctx(), &[("e", eps.clone()), ("t", t.clone())])?)
}

#[derive(Clone, Debug)]
pub struct TorsionLocus<F: Field> {
    pub m: u64,
    pub poly: Poly3<F>,
    /// Points of exact order m over an algebraic closure.
    pub expected_intersection_count: usize,
}

impl<F: Field> TorsionLocus<F> {
    pub fn new(m: u64, eps: &F, t: &F) -> Result<Self> {
        let (src, expected) = match m {
            4 => (LOCUS_4, 12),
            5 => (LOCUS_5, 24),
            _ => return Err(Error::Invalid(format!("no locus for m = {m}"))),
        };
        let poly = parse_t(src, eps, t)?;
        ensure(poly.degree() as usize * 3 == expected, || format!("locus of degree {}", poly.degree()))?;
        Ok(Self { m, poly, expected_intersection_count: expected })
    }
}

pub fn nine_torsion_cubics<F: Field>(eps: &F, t: &F) -> Result<Vec<Poly3<F>>> {
    NINE_TORSION_CUBICS.iter().map(|s| parse_t(s, eps, t)).collect()
}

/// The exact order of P, given that it divides n.
pub fn exact_order<F: Field>(g: &CubicGroup<F>, p: &ProjPoint<F>, n: u64) -> Result<u64> {
    ensure(g.scalar_mul(n as i64, p)? == *g.zero(), || format!("order of {p} does not divide {n}"))?;
    let mut ord = n;
    let mut rest = n;
    let mut q = 2;
    while rest > 1 {
        if rest % q == 0 {
            while rest % q == 0 {
                rest /= q;
            }
            while ord % q == 0 && g.scalar_mul((ord / q) as i64, p)? == *g.zero() {
                ord /= q;
            }
        }
        q += 1;
    }
    Ok(ord)
}

/// Rational points of a finite curve with their orders.
#[derive(Clone, Debug)]
pub struct PointCensus<F: Field> {
    pub group: CubicGroup<F>,
    pub points: Vec<(ProjPoint<F>, u64)>,
}

impl<F: Field> PointCensus<F> {
    pub fn new(t: &F) -> Result<Self> {
        let curve = HesseCubic::new(t.clone());
        let group = CubicGroup::new(&curve, x7(&t.ctx())?)?;
        let pts = rational_points(curve.poly())?;
        let n = pts.len() as u64;
        let points = pts.into_iter().map(|p| exact_order(&group, &p, n).map(|o| (p, o))).collect::<Result<_>>()?;
        Ok(Self { group, points })
    }

    pub fn order(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for (_, o) in &self.points {
            *h.entry(*o).or_insert(0) += 1;
        }
        h
    }

    /// (n1, n2) with the group ≅ Z/n1 × Z/n2, n2 | n1.
    pub fn structure(&self) -> (u64, u64) {
        let exp = self.points.iter().fold(1, |a, (_, o)| num_integer::lcm(a, *o));
        (exp, self.order() / exp)
    }

    pub fn of_order(&self, m: u64) -> impl Iterator<Item = &ProjPoint<F>> {
        self.points.iter().filter(move |(_, o)| *o == m).map(|(p, _)| p)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Specialization {
    pub p: u64,
    pub t: u64,
    pub eps: u64,
    pub m: u64,
    pub witness: [u64; 3],
    pub group_order: u64,
    pub structure: (u64, u64),
    /// Values of t tried, singular members included.
    pub curves_scanned: usize,
}

impl Specialization {
    pub fn ctx(&self) -> Result<PrimeCtx> {
        Ok(PrimeCtx::new(self.p)?)
    }

    pub fn fields(&self) -> Result<(Fp, Fp)> {
        let c = self.ctx()?;
        Ok((Fp::new(self.eps, &c), Fp::new(self.t, &c)))
    }

    pub fn witness_point(&self) -> Result<ProjPoint<Fp>> {
        let c = self.ctx()?;
        Ok(ProjPoint::new(self.witness.map(|v| Fp::new(v, &c)))?)
    }
}

fn primes_one_mod_three(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(7)..=hi).filter(|&p| p % 3 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn scan_curve(m: u64, tv: u64, eps: &Fp) -> Result<Option<Specialization>> {
    let ctx = eps.ctx();
    let t = Fp::new(tv, &ctx);
    if !HesseCubic::new(t).is_smooth() {
        return Ok(None);
    }
    let census = PointCensus::new(&t)?;
    let w = census.of_order(m).next().map(|w| w.coords().clone());
    Ok(w.map(|c| Specialization {
        p: ctx.p(),
        t: tv,
        eps: eps.value(),
        m,
        witness: [c[0].value(), c[1].value(), c[2].value()],
        group_order: census.order(),
        structure: census.structure(),
        curves_scanned: 0,
    }))
}

/// First (p, t) with a rational point of exact order m: primes p ≡ 1 (mod 3)
/// in [7, p_max] ascending, each scanned over t in parallel.
pub fn find_specialization(m: u64, p_max: u64) -> Result<Specialization> {
    if ![2, 4, 5, 9].contains(&m) {
        return Err(Error::Invalid(format!("m = {m} is not one of 2, 4, 5, 9")));
    }
    let primes = primes_one_mod_three(7, p_max);
    let mut scanned = 0;
    for &p in &primes {
        let ctx = PrimeCtx::new(p)?;
        let eps = find_eps::<Fp>(&ctx)?;
        let hits: Vec<Option<Specialization>> = (0..p).into_par_iter().map(|tv| scan_curve(m, tv, &eps)).collect::<Result<_>>()?;
        if let Some(k) = hits.iter().position(Option::is_some) {
            let mut s = hits[k].clone().unwrap();
            s.curves_scanned = scanned + k + 1;
            return Ok(s);
        }
        scanned += p as usize;
    }
    Err(Error::NotFound(format!("no point of order {m} on the Hesse cubics over {} primes ≤ {p_max} ({scanned} values of t)", primes.len())))
}

/// Two-way comparison of a locus with the points of a given order.
#[derive(Clone, Debug, Serialize)]
pub struct LocusCheck {
    pub m: u64,
    pub group_order: u64,
    /// Order census of the rational points on the locus.
    pub on_locus: BTreeMap<u64, usize>,
    pub of_order_m: usize,
    pub expected_over_closure: usize,
}

impl LocusCheck {
    /// Whether every rational point on the locus has exact order m.
    pub fn primitive(&self) -> bool {
        self.on_locus.keys().all(|&o| o == self.m)
    }
}

fn compare<F: Field>(census: &PointCensus<F>, m: u64, on: impl Fn(&ProjPoint<F>) -> bool, expected: usize) -> Result<LocusCheck> {
    let mut on_locus = BTreeMap::new();
    for (p, o) in &census.points {
        let hit = on(p);
        if hit {
            *on_locus.entry(*o).or_insert(0) += 1;
        }
        if hit && (*o == 1 || m % *o != 0) {
            return Err(Error::Check(format!("{p} on the locus has order {o}")));
        }
        if !hit && *o == m {
            return Err(Error::Check(format!("{p} of order {m} is off the locus")));
        }
    }
    let of_order_m = census.of_order(m).count();
    ensure(of_order_m <= expected, || format!("{of_order_m} points of order {m}"))?;
    Ok(LocusCheck { m, group_order: census.order(), on_locus, of_order_m, expected_over_closure: expected })
}

fn check_order_char<F: Field>(m: u64, t: &F) -> Result<()> {
    let c = F::characteristic(&t.ctx());
    if c != 0 && m % c == 0 {
        return Err(Error::Invalid(format!("order {m} in characteristic {c}")));
    }
    Ok(())
}

/// The same comparison over GF(p²) for a specialization over GF(p).
pub fn verify_over_quadratic_extension(s: &Specialization) -> Result<LocusCheck> {
    let q = ExtCtx::first(s.ctx()?, 2);
    let (eps, t) = s.fields()?;
    let (eps, t) = (Fq::from_base(eps, &q), Fq::from_base(t, &q));
    match s.m {
        4 | 5 => verify_torsion_locus(s.m, &eps, &t),
        9 => verify_nine_torsion_cubics(&eps, &t),
        m => Err(Error::Invalid(format!("no locus for m = {m}"))),
    }
}

/// Points on the locus have exact order m and every point of order m is on it.
pub fn verify_torsion_locus<F: Field>(m: u64, eps: &F, t: &F) -> Result<LocusCheck> {
    check_order_char(m, t)?;
    let locus = TorsionLocus::new(m, eps, t)?;
    let census = PointCensus::new(t)?;
    compare(&census, m, |p| locus.poly.vanishes_at(p), locus.expected_intersection_count)
}

pub fn verify_nine_torsion_cubics<F: Field>(eps: &F, t: &F) -> Result<LocusCheck> {
    check_order_char(9, t)?;
    let cubics = nine_torsion_cubics(eps, t)?;
    let census = PointCensus::new(t)?;
    compare(&census, 9, |p| cubics.iter().any(|c| c.vanishes_at(p)), 72)
}

/// Multiplicity pattern of the curves of index m on the nine translated flexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSpec {
    pub m: u32,
    pub k: u32,
    /// Multiplicity on the Hesse-collinear triple.
    pub on_triple: u32,
    /// Multiplicity on the remaining six points.
    pub off_triple: u32,
}

impl IndexSpec {
    pub fn new(m: u32) -> Result<Self> {
        let k = m / 3;
        let (on_triple, off_triple) = match m % 3 {
            1 => (k + 1, k),
            2 => (k, k + 1),
            _ => return Err(Error::Invalid(format!("m = {m} is a multiple of 3"))),
        };
        let s = Self { m, k, on_triple, off_triple };
        ensure(s.self_intersection() == -2, || format!("self-intersection {}", s.self_intersection()))?;
        ensure(s.k_degree() == 0, || format!("K-degree {}", s.k_degree()))?;
        Ok(s)
    }

    pub fn self_intersection(&self) -> i64 {
        let (m, a, b) = (self.m as i64, self.on_triple as i64, self.off_triple as i64);
        m * m - 3 * a * a - 6 * b * b
    }

    pub fn k_degree(&self) -> i64 {
        -3 * self.m as i64 + 3 * self.on_triple as i64 + 6 * self.off_triple as i64
    }

    pub fn multiplicities(&self, triple: [usize; 3]) -> [u32; 9] {
        std::array::from_fn(|i| if triple.contains(&i) { self.on_triple } else { self.off_triple })
    }
}

/// The twelve collinear triples of flexes, by index, in lexicographic order.
pub fn hesse_lines<F: Field>(eps: &F) -> Result<Vec<[usize; 3]>> {
    let x = hesse_flexes(eps)?;
    let mut out = Vec::new();
    for i in 0..9 {
        for j in i + 1..9 {
            for k in j + 1..9 {
                if x[i].collinear(&x[j], &x[k]) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    ensure(out.len() == 12, || format!("{} collinear triples", out.len()))?;
    Ok(out)
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

/// Rows of the conditions "all partials of order < r vanish at P" on degree-d coefficients.
pub fn multiplicity_conditions<F: Field>(d: u32, p: &ProjPoint<F>, r: u32) -> Vec<Vec<F>> {
    let ctx = p.ctx();
    let mons = monomials(d);
    let c = p.coords();
    let mut rows = Vec::new();
    for o in 0..r.min(d + 1) {
        for der in monomials(o) {
            rows.push(
                mons.iter()
                    .map(|e| {
                        if (0..3).any(|v| e[v] < der[v]) {
                            return F::zero(&ctx);
                        }
                        let coef = (0..3).map(|v| falling(e[v], der[v])).product::<i64>();
                        (0..3).fold(F::from_i64(&ctx, coef), |acc, v| acc * c[v].pow((e[v] - der[v]) as u64))
                    })
                    .collect(),
            );
        }
    }
    rows
}

#[derive(Clone, Debug, Serialize)]
pub struct CollinearCurve {
    pub triple: [usize; 3],
    pub kernel_dim: usize,
    pub balanced: bool,
}

/// For each Hesse-collinear triple, the degree-m system with the prescribed
/// multiplicities at p_i := x_i + η (zero x_7) and the group-law balance with zero x_1.
pub fn hesse_collinear_curves<F: Field>(spec: &IndexSpec, eps: &F, t: &F, eta: &ProjPoint<F>) -> Result<Vec<CollinearCurve>> {
    let curve = HesseCubic::new(t.clone());
    let x = hesse_flexes(eps)?;
    let g7 = CubicGroup::new(&curve, x7(&t.ctx())?)?;
    let g1 = CubicGroup::new(&curve, x[0].clone())?;
    let pts: Vec<ProjPoint<F>> = x.iter().map(|xi| g7.add(xi, eta)).collect::<Result<_>>()?;
    for i in 0..9 {
        for j in 0..i {
            ensure(pts[i] != pts[j], || format!("translated points p{} and p{} coincide", j + 1, i + 1))?;
        }
    }
    let ctx = t.ctx();
    let ncoef = monomials(spec.m).len();
    let mut out = Vec::new();
    for triple in hesse_lines(eps)? {
        let mult = spec.multiplicities(triple);
        let rows: Vec<Vec<F>> = (0..9).flat_map(|i| multiplicity_conditions(spec.m, &pts[i], mult[i])).collect();
        let kernel_dim = kernel(&rows, ncoef, &ctx).len();
        ensure(kernel_dim >= 1, || format!("no curve for triple {:?}", triple.map(|i| i + 1)))?;
        let mut acc = g1.zero().clone();
        for i in 0..9 {
            acc = g1.add(&acc, &g1.scalar_mul(mult[i] as i64, &pts[i])?)?;
        }
        out.push(CollinearCurve { triple, kernel_dim, balanced: acc == *g1.zero() });
    }
    Ok(out)
}

/// Columns (a, b) ∈ Z/9 × Z/3 of p_i − p_1 on the index-3 cubic.
pub const INDEX3_SECTION: [(u64, u64); 9] = [(0, 0), (0, 1), (0, 2), (1, 0), (4, 1), (1, 2), (5, 0), (5, 1), (5, 2)];

#[derive(Clone, Debug, Serialize)]
pub struct SectionCheck {
    pub reductions: Vec<(u64, u64)>,
    pub column_sum: (u64, u64),
}

/// The columns reduce bijectively onto (Z/3)² and their sum generates the kernel 3Z/9 × 0.
pub fn index3_section_check() -> Result<SectionCheck> {
    let reductions: Vec<(u64, u64)> = INDEX3_SECTION.iter().map(|&(a, b)| (a % 3, b % 3)).collect();
    let mut sorted = reductions.clone();
    sorted.sort();
    sorted.dedup();
    ensure(sorted.len() == 9, || "reduction is not injective".into())?;
    let sum = INDEX3_SECTION.iter().fold((0, 0), |(a, b), &(x, y)| ((a + x) % 9, (b + y) % 3));
    ensure(sum.1 == 0 && sum.0 % 3 == 0 && sum.0 != 0, || format!("column sum {sum:?} does not generate the kernel"))?;
    Ok(SectionCheck { reductions, column_sum: sum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_specs() {
        for m in [4, 5, 7, 8, 2] {
            let s = IndexSpec::new(m).unwrap();
            assert_eq!(s.self_intersection(), -2);
        }
        assert_eq!(IndexSpec::new(4).unwrap().multiplicities([0, 1, 2]), [2, 2, 2, 1, 1, 1, 1, 1, 1]);
        assert_eq!(IndexSpec::new(5).unwrap().multiplicities([0, 1, 2]), [1, 1, 1, 2, 2, 2, 2, 2, 2]);
        assert!(IndexSpec::new(6).is_err());
    }

    #[test]
    fn section_matrix() {
        let r = index3_section_check().unwrap();
        assert_eq!(r.column_sum, (3, 0));
        assert_eq!(r.reductions[4], (1, 1));
    }

    #[test]
    fn nine_torsion_cubic_misses_zero() {
        let ctx = PrimeCtx::new(19).unwrap();
        let eps = find_eps::<Fp>(&ctx).unwrap();
        let c = nine_torsion_cubics(&eps, &Fp::new(1, &ctx)).unwrap();
        assert_eq!(c[0].eval(x7::<Fp>(&ctx).unwrap().coords()), Fp::new(1, &ctx));
    }

    #[test]
    fn multiplicity_two_means_singular() {
        let ctx = PrimeCtx::new(13).unwrap();
        let p = ProjPoint::from_i64(&ctx, [0, 0, 1]).unwrap();
        let rows = multiplicity_conditions::<Fp>(2, &p, 2);
        // conics singular at (0:0:1) are the binary quadratics in x, y
        assert_eq!(kernel(&rows, 6, &ctx).len(), 3);
    }
}
