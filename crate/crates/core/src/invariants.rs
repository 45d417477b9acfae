//! Arrangement combinatorics, log Chern numbers, Harbourne constants and
//! the binary code of the characteristic-2 configuration.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_rational::Ratio;
use serde::Serialize;

use crate::chilean::{ChileanData, DegenerateChilean};
use crate::cubic::hesse_singular_fibers;
use crate::error::{ensure, Error, Result};
use crate::exactfield::linalg::det3;
use crate::exactfield::{find_eps, ExtCtx, Field, Fq, Poly3, PrimeCtx, ProjPoint, QEps, Specializer};
use crate::geometry::{meet, singular_census, transversal};
use crate::QEpsA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveData {
    pub degree: i64,
    pub genus: i64,
    pub self_intersection: i64,
}

impl CurveData {
    /// A smooth plane curve of degree d.
    pub fn plane(d: i64) -> Self {
        Self { degree: d, genus: (d - 1) * (d - 2) / 2, self_intersection: d * d }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementCombinatorics {
    pub curves: Vec<CurveData>,
    /// n ↦ t_n for n ≥ 2.
    pub t_counts: BTreeMap<usize, usize>,
}

impl ArrangementCombinatorics {
    pub fn plane(conics: usize, lines: usize, t: &[(usize, usize)]) -> Self {
        let curves = std::iter::repeat_n(CurveData::plane(2), conics).chain(std::iter::repeat_n(CurveData::plane(1), lines)).collect();
        Self { curves, t_counts: t.iter().copied().collect() }
    }

    /// Σ C(n, 2)·t_n.
    pub fn pair_count(&self) -> i64 {
        self.t_counts.iter().map(|(&n, &t)| binomial(n as i64, 2) * t as i64).sum()
    }

    /// Σ_{i<j} d_i·d_j, the number of pairwise intersections in the plane.
    pub fn bezout_count(&self) -> i64 {
        let d: Vec<i64> = self.curves.iter().map(|c| c.degree).collect();
        let s: i64 = d.iter().sum();
        (s * s - d.iter().map(|x| x * x).sum::<i64>()) / 2
    }

    pub fn is_consistent(&self) -> bool {
        self.pair_count() == self.bezout_count()
    }
}

fn is_smooth<F: Field>(c: &Poly3<F>) -> Result<bool> {
    match c.degree() {
        1 => Ok(true),
        2 if F::characteristic(c.ctx()) != 2 => {
            let ctx = c.ctx();
            let half = F::from_i64(ctx, 2).inv()?;
            let k = |e: [u32; 3]| c.coeff(&e);
            let h = |e: [u32; 3]| k(e) * half.clone();
            let m = [
                [k([2, 0, 0]), h([1, 1, 0]), h([1, 0, 1])],
                [h([1, 1, 0]), k([0, 2, 0]), h([0, 1, 1])],
                [h([1, 0, 1]), h([0, 1, 1]), k([0, 0, 2])],
            ];
            Ok(!det3(&m).is_zero())
        }
        d => {
            if F::elements(c.ctx()).is_none() {
                return Err(Error::Invalid(format!("smoothness of a degree-{d} curve needs a finite field")));
            }
            Ok(singular_census(c)?.is_empty())
        }
    }
}

fn tangent_error(i: usize, j: usize, what: &str) -> Error {
    Error::NotSimpleCrossings(format!("curves {} and {} {what}", i + 1, j + 1))
}

/// Intersection through the resultant; returns field points and the number of certified others.
fn meet_general<F: Field>(curves: &[Poly3<F>], i: usize, j: usize, points: &[ProjPoint<F>]) -> Result<(Vec<ProjPoint<F>>, usize)> {
    let m = meet(&curves[i], &curves[j], points)?;
    if let Some((p, _)) = m.points.iter().find(|(_, k)| *k != 1) {
        return Err(tangent_error(i, j, &format!("meet with multiplicity > 1 at {p}")));
    }
    if m.unresolved > 0 {
        if !m.residual.is_squarefree() {
            return Err(tangent_error(i, j, "meet with multiplicity > 1 off the field"));
        }
        let gi = curves[i].transform(&m.center);
        for (k, c) in curves.iter().enumerate() {
            if k != i && k != j {
                let r = gi.resultant_z(&c.transform(&m.center))?;
                ensure(m.residual.gcd(&r).degree() == 0, || {
                    format!("cannot separate the points of curves {} and {} off the field from curve {}", i + 1, j + 1, k + 1)
                })?;
            }
        }
    }
    Ok((m.points.into_iter().map(|(p, _)| p).collect(), m.unresolved))
}

/// Two points spanning the line l.
fn line_basis<F: Field>(l: &[F; 3]) -> ([F; 3], [F; 3]) {
    let ctx = l[0].ctx();
    let (z, o) = (F::zero(&ctx), F::one(&ctx));
    let units = [[o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), z.clone(), o.clone()]];
    let mut out: Vec<[F; 3]> = Vec::new();
    for u in &units {
        let c = crate::exactfield::cross(l, u);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(prev) = out.first() {
            if crate::exactfield::cross(prev, &c).iter().all(|x| x.is_zero()) {
                continue;
            }
        }
        out.push(c);
    }
    (out[0].clone(), out[1].clone())
}

/// Parameter (s : t) of a point p = s·a + t·b.
fn line_param<F: Field>(a: &[F; 3], b: &[F; 3], p: &[F; 3]) -> Result<(F, F)> {
    for (r, c) in [(0, 1), (0, 2), (1, 2)] {
        let det = a[r].clone() * b[c].clone() - a[c].clone() * b[r].clone();
        if !det.is_zero() {
            let s = p[r].clone() * b[c].clone() - p[c].clone() * b[r].clone();
            let t = a[r].clone() * p[c].clone() - a[c].clone() * p[r].clone();
            return Ok((s, t));
        }
    }
    Err(Error::Invalid("degenerate line basis".into()))
}

/// Intersection by restricting to the line among the two curves.
fn meet_on_line<F: Field>(curves: &[Poly3<F>], i: usize, j: usize, points: &[ProjPoint<F>]) -> Result<(Vec<ProjPoint<F>>, usize)> {
    let (li, other) = if curves[i].degree() == 1 { (i, j) } else { (j, i) };
    let l: [F; 3] = std::array::from_fn(|v| {
        let mut e = [0; 3];
        e[v] = 1;
        curves[li].coeff(&e)
    });
    let (a, b) = line_basis(&l);
    let mut r = curves[other].restrict_to_line(&a, &b);
    if r.is_zero() {
        return Err(Error::Invalid(format!("curves {} and {} share a component", i + 1, j + 1)));
    }
    let point_at = |s: &F, t: &F| ProjPoint::new(std::array::from_fn(|v| s.clone() * a[v].clone() + t.clone() * b[v].clone()));
    let mut out = Vec::new();
    let mut take = |r: &mut crate::exactfield::BinaryForm<F>, st: (F, F)| -> Result<()> {
        let f = crate::exactfield::BinaryForm::vanishing_at(&st);
        *r = r.divide_exact(&f).map_err(|_| Error::Check("point missing from the restriction".into()))?;
        if r.divide_exact(&f).is_ok() && !r.is_zero() && r.degree() > 0 {
            return Err(tangent_error(i, j, &format!("are tangent at {}", point_at(&st.0, &st.1).map(|p| p.to_string()).unwrap_or_default())));
        }
        out.push(point_at(&st.0, &st.1)?);
        Ok(())
    };
    for p in points {
        if curves[i].vanishes_at(p) && curves[j].vanishes_at(p) {
            take(&mut r, line_param(&a, &b, p.coords())?)?;
        }
    }
    if r.degree() > 0 {
        if let Ok(roots) = r.roots() {
            for st in roots {
                take(&mut r, st)?;
            }
        }
    }
    let unresolved = r.degree();
    if unresolved > 0 {
        if !r.is_squarefree() {
            return Err(tangent_error(i, j, "meet with multiplicity > 1 off the field"));
        }
        for (k, c) in curves.iter().enumerate() {
            if k != i && k != j {
                ensure(r.gcd(&c.restrict_to_line(&a, &b)).degree() == 0, || {
                    format!("cannot separate the points of curves {} and {} off the field from curve {}", i + 1, j + 1, k + 1)
                })?;
            }
        }
    }
    Ok((out, unresolved))
}

/// Counts n-points of a simple crossings arrangement.
///
/// Intersection points are taken from `points` and from rational roots of the
/// resultants; the rest are certified to be simple and off every third curve.
pub fn extract_combinatorics<F: Field>(points: &[ProjPoint<F>], curves: &[Poly3<F>]) -> Result<ArrangementCombinatorics> {
    for (i, c) in curves.iter().enumerate() {
        ensure(is_smooth(c)?, || format!("curve {} is singular", i + 1))?;
    }
    let mut found: Vec<ProjPoint<F>> = Vec::new();
    let mut extra_two_points = 0usize;
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let (pts, unresolved) = if curves[i].degree() == 1 || curves[j].degree() == 1 {
                meet_on_line(curves, i, j, points)?
            } else {
                meet_general(curves, i, j, points)?
            };
            for p in pts {
                if !transversal(&curves[i], &curves[j], &p) {
                    return Err(Error::NotSimpleCrossings(format!("curves {} and {} are tangent at {p}", i + 1, j + 1)));
                }
                if !found.contains(&p) {
                    found.push(p);
                }
            }
            extra_two_points += unresolved;
        }
    }
    let mut t_counts = BTreeMap::new();
    for p in &found {
        let n = curves.iter().filter(|c| c.vanishes_at(p)).count();
        *t_counts.entry(n).or_insert(0) += 1;
    }
    if extra_two_points > 0 {
        *t_counts.entry(2).or_insert(0) += extra_two_points;
    }
    let out = ArrangementCombinatorics {
        curves: curves.iter().map(|c| CurveData::plane(c.degree() as i64)).collect(),
        t_counts,
    };
    ensure(out.is_consistent(), || format!("Σ C(n,2) t_n = {} but Σ d_i d_j = {}", out.pair_count(), out.bezout_count()))?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LogChern {
    #[serde(serialize_with = "as_string")]
    pub c1sq: Ratio<i64>,
    #[serde(serialize_with = "as_string")]
    pub c2: Ratio<i64>,
}

fn as_string<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl LogChern {
    pub fn slope(&self) -> Option<Ratio<i64>> {
        (self.c2 != Ratio::from_integer(0)).then(|| self.c1sq / self.c2)
    }
}

pub fn log_chern(a: &ArrangementCombinatorics, ambient_c1sq: i64, ambient_c2: i64) -> LogChern {
    let sq: i64 = a.curves.iter().map(|c| c.self_intersection).sum();
    let g: i64 = a.curves.iter().map(|c| c.genus - 1).sum();
    let t1: i64 = a.t_counts.iter().map(|(&n, &t)| (3 * n as i64 - 4) * t as i64).sum();
    let t2: i64 = a.t_counts.iter().map(|(&n, &t)| (n as i64 - 1) * t as i64).sum();
    LogChern {
        c1sq: Ratio::from_integer(ambient_c1sq - sq + t1 + 4 * g),
        c2: Ratio::from_integer(ambient_c2 + t2 + 2 * g),
    }
}

/// (C² − Σ mult²)/s over the s singular points.
pub fn harbourne(c_sq_total: i64, multiplicities: &[i64]) -> Result<Ratio<i64>> {
    if multiplicities.is_empty() {
        return Err(Error::Invalid("no singular points".into()));
    }
    ensure(multiplicities.iter().all(|&m| m >= 2), || "multiplicities must be at least 2".into())?;
    let s: i64 = multiplicities.iter().map(|m| m * m).sum();
    Ok(Ratio::new(c_sq_total - s, multiplicities.len() as i64))
}

/// Harbourne constant of the nine 2-sections and the four reducible fibers.
pub fn harbourne_chilean() -> Result<Ratio<i64>> {
    harbourne(-9 + 9 * 16, &[2; 84])
}

/// The same for the degenerate configuration.
pub fn harbourne_degenerate() -> Result<Ratio<i64>> {
    harbourne(-9 + 14 * 9, &[2; 75])
}

/// A named arrangement with the points it is known to pass through.
#[derive(Clone, Debug)]
pub struct Arrangement<F: Field> {
    pub name: &'static str,
    pub points: Vec<ProjPoint<F>>,
    pub curves: Vec<Poly3<F>>,
}

impl<F: Field> Arrangement<F> {
    pub fn combinatorics(&self) -> Result<ArrangementCombinatorics> {
        extract_combinatorics(&self.points, &self.curves)
    }
}

/// The 12 conics, and the 12 conics with the 9 lines.
pub fn chilean_arrangements<F: Field>(d: &ChileanData<F>) -> Result<[Arrangement<F>; 2]> {
    let nodes = d.fiber_nodes()?;
    let lines = d.dual_hesse_lines(&nodes)?;
    let mut points = d.base_points().to_vec();
    points.extend(nodes.iter().map(|n| n.point.clone()));
    let conics = d.conics().to_vec();
    Ok([
        Arrangement { name: "chilean", points: points.clone(), curves: conics.clone() },
        Arrangement { name: "A1", points, curves: conics.into_iter().chain(lines).collect() },
    ])
}

fn constant_lines(sym: &ChileanData<QEpsA>, at: &Specializer<QEps>) -> Result<(Vec<Poly3<QEps>>, Vec<ProjPoint<QEps>>)> {
    let nodes = sym.fiber_nodes()?;
    let lines = sym.dual_hesse_lines(&nodes)?;
    let map = |p: &Poly3<QEpsA>| p.map_coeffs(&(), |c| at.apply(c));
    let lines: Vec<Poly3<QEps>> = lines.iter().map(map).collect::<std::result::Result<_, _>>()?;
    let nodes: Vec<ProjPoint<QEps>> = nodes.iter().map(|n| n.point.map(|c| at.apply(c))).collect::<std::result::Result<_, _>>()?;
    // the lines and nodes do not depend on a
    let other = Specializer::new(QEps::eps(), QEps::from_ints(5, 0))?;
    for l in sym.dual_hesse_lines(&sym.fiber_nodes()?)? {
        ensure(map(&l)? == l.map_coeffs(&(), |c| other.apply(c))?, || format!("line {l} depends on a"))?;
    }
    Ok((lines, nodes))
}

/// A0 and A2 over Q(ε) at a = −2, and A3 (Hesse lines with the dual Hesse lines).
pub fn degenerate_arrangements() -> Result<[Arrangement<QEps>; 3]> {
    let eps = QEps::eps();
    let a = QEps::from_ints(-2, 0);
    let deg = DegenerateChilean::new(eps.clone(), a.clone())?;
    let sym = ChileanData::symbolic()?;
    let (lines, nodes) = constant_lines(&sym, &Specializer::new(eps.clone(), a)?)?;
    let hesse: Vec<Poly3<QEps>> = hesse_singular_fibers(&eps)?.into_iter().flatten().collect();
    let flexes = crate::cubic::hesse_flexes(&eps)?;
    let mut pts = deg.points.clone();
    pts.extend(nodes.iter().cloned());
    pts.extend(flexes.iter().cloned());
    let a0 = Arrangement { name: "A0", points: pts.clone(), curves: deg.curves() };
    let a2 = Arrangement { name: "A2", points: pts.clone(), curves: deg.curves().into_iter().chain(lines.iter().cloned()).collect() };
    let a3 = Arrangement { name: "A3", points: pts, curves: hesse.into_iter().chain(lines).collect() };
    Ok([a0, a2, a3])
}

/// t_n as stated for each arrangement, with the stated log Chern pair.
pub fn stated_arrangements() -> Vec<(&'static str, ArrangementCombinatorics, (i64, i64))> {
    vec![
        ("chilean", ArrangementCombinatorics::plane(12, 0, &[(2, 12), (8, 9)]), (117, 54)),
        ("A0", ArrangementCombinatorics::plane(9, 3, &[(2, 12), (7, 9)]), (99, 45)),
        ("A1", ArrangementCombinatorics::plane(12, 9, &[(2, 72), (5, 12), (8, 9)]), (324, 144)),
        ("A2", ArrangementCombinatorics::plane(9, 12, &[(2, 54), (5, 12), (7, 9)]), (270, 117)),
        ("A3", ArrangementCombinatorics::plane(0, 21, &[(2, 36), (4, 9), (5, 12)]), (180, 72)),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryCode {
    pub length: usize,
    pub generators: Vec<u32>,
    pub dimension: usize,
}

impl BinaryCode {
    pub fn new(length: usize, generators: Vec<u32>) -> Self {
        let dimension = gf2_basis(&generators).len();
        Self { length, generators, dimension }
    }

    pub fn codewords(&self) -> Vec<u32> {
        let basis = gf2_basis(&self.generators);
        let mut out: Vec<u32> = (0u32..1 << basis.len())
            .map(|m| basis.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |acc, (_, b)| acc ^ b))
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, w: u32) -> bool {
        let basis = gf2_basis(&self.generators);
        reduce(&basis, w) == 0
    }

    /// Coefficients of t^0, …, t^length.
    pub fn weight_enumerator(&self) -> Vec<u64> {
        let mut w = vec![0; self.length + 1];
        for c in self.codewords() {
            w[c.count_ones() as usize] += 1;
        }
        w
    }
}

fn reduce(basis: &[u32], mut w: u32) -> u32 {
    for b in basis {
        let top = 31 - b.leading_zeros();
        if w >> top & 1 == 1 {
            w ^= b;
        }
    }
    w
}

/// Echelon basis with distinct leading bits, highest first.
fn gf2_basis(gens: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &g in gens {
        let r = reduce(&basis, g);
        if r != 0 {
            basis.push(r);
            basis.sort_by(|a, b| b.cmp(a));
            let mut fixed: Vec<u32> = Vec::new();
            for b in basis {
                let r = reduce(&fixed, b);
                if r != 0 {
                    fixed.push(r);
                    fixed.sort_by(|a, b| b.cmp(a));
                }
            }
            basis = fixed;
        }
    }
    basis
}

/// Renders a weight enumerator as a polynomial in t.
pub fn enumerator_string(w: &[u64]) -> String {
    let terms: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        })
        .collect();
    terms.join(" + ")
}

#[derive(Clone, Debug, Serialize)]
pub struct Char2Code {
    pub field: String,
    pub a: String,
    pub code: BinaryCode,
    pub weight_enumerator: Vec<u64>,
    /// Incidence words of the twelve fiber conics.
    pub conic_words: Vec<u32>,
}

/// The code spanned by the nine line words on the 21 points, over GF(2^(2k)).
pub fn char2_code(k: usize) -> Result<Char2Code> {
    ensure(k >= 1, || "k must be at least 1".into())?;
    let base = PrimeCtx::with_char2(2, true)?;
    let ext = ExtCtx::first(base, 2 * k);
    let eps = find_eps::<Fq>(&ext)?;
    // first element of the field accepted as a parameter
    let d = Fq::elements(&ext)
        .unwrap_or_default()
        .into_iter()
        .find_map(|a| ChileanData::new_char2(eps.clone(), a).ok())
        .ok_or_else(|| Error::NotFound(format!("parameter over GF({})", ext.order())))?;
    let nodes = d.fiber_nodes()?;
    let lines = d.dual_hesse_lines(&nodes)?;
    let mut pts = d.base_points().to_vec();
    pts.extend(nodes.iter().map(|n| n.point.clone()));
    ensure(pts.len() == 21, || format!("{} points", pts.len()))?;
    let word = |c: &Poly3<Fq>| pts.iter().enumerate().filter(|(_, p)| c.vanishes_at(p)).fold(0u32, |w, (i, _)| w | 1 << i);
    let gens: Vec<u32> = lines.iter().map(word).collect();
    for (i, g) in gens.iter().enumerate() {
        ensure(g.count_ones() == 5, || format!("line {} has weight {}", i + 1, g.count_ones()))?;
    }
    let code = BinaryCode::new(21, gens);
    ensure(code.dimension == 9, || format!("dimension {}", code.dimension))?;
    let conic_words: Vec<u32> = d.conics().iter().map(word).collect();
    for (i, w) in conic_words.iter().enumerate() {
        ensure(w.count_ones() == 8, || format!("conic {} has weight {}", i + 1, w.count_ones()))?;
        ensure(code.contains(*w), || format!("conic {} is not in the code", i + 1))?;
    }
    let weight_enumerator = code.weight_enumerator();
    Ok(Char2Code { field: Fq::describe(&ext), a: d.a().to_string(), code, weight_enumerator, conic_words })
}
