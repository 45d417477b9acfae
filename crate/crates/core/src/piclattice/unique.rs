//! The nine classes built from one exceptional curve, and the clique search.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{ensure, Error, Result};

use super::{PicClass, QPicClass, SurfaceLattice};

/// Codes of the divisors added to E, in the order E_1, …, E_9.
const CODES: [&str; 9] = ["0000", "0222", "0111", "2021", "2210", "2102", "1012", "1201", "1120"];

#[derive(Clone, Debug)]
pub struct TheoremUniqueReport {
    /// Per fiber, column indices of [R⁽⁰⁾, R⁽¹⁾, R⁽²⁾].
    pub labeling: Vec<[usize; 3]>,
    pub d0111: QPicClass,
    pub d1012: QPicClass,
    pub classes: [PicClass; 9],
    pub h: PicClass,
}

/// D_code = (1/3)·Σ_f (R_f^(code_f) − R_f⁽⁰⁾), skipping fibers with code 0.
fn third_divisor(l: &SurfaceLattice, lab: &[[usize; 3]], code: &str) -> QPicClass {
    let third = Ratio::new(1, 3);
    code.bytes().enumerate().fold(QPicClass::zero(), |acc, (f, ch)| {
        let a = (ch - b'0') as usize;
        if a == 0 {
            return acc;
        }
        let diff = l.minus2()[lab[f][a]] - l.minus2()[lab[f][0]];
        acc + QPicClass::from(diff).scaled(third)
    })
}

fn nine_classes(l: &SurfaceLattice, e: &PicClass, lab: &[[usize; 3]]) -> Option<[PicClass; 9]> {
    let out: Option<Vec<PicClass>> = CODES.iter().map(|c| (QPicClass::from(*e) + third_divisor(l, lab, c)).to_integral()).collect();
    out.map(|v| v.try_into().unwrap())
}

/// Starting from E = e_1, the first choice of which met side of each fiber is
/// R⁽¹⁾ (fibers in stored order, then all reorderings) making the nine classes integral.
fn choose_labeling(l: &SurfaceLattice, e: &PicClass) -> Result<(Vec<[usize; 3]>, [PicClass; 9])> {
    let base = l.labeling(e)?;
    let mut orders: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let o = [a, b, c, d];
                    if (0..4).all(|x| o.contains(&x)) {
                        orders.push(o);
                    }
                }
            }
        }
    }
    for o in orders {
        for swaps in 0u8..16 {
            let lab: Vec<[usize; 3]> = (0..4)
                .map(|k| {
                    let [r0, r1, r2] = base[o[k]];
                    if swaps >> k & 1 == 1 {
                        [r0, r2, r1]
                    } else {
                        [r0, r1, r2]
                    }
                })
                .collect();
            if let Some(cls) = nine_classes(l, e, &lab) {
                return Ok((lab, cls));
            }
        }
    }
    Err(Error::NotFound("labeling with integral classes".into()))
}

pub fn verify_theorem_unique(l: &SurfaceLattice) -> Result<TheoremUniqueReport> {
    let e = PicClass::e(1);
    let (lab, classes) = choose_labeling(l, &e)?;
    let d0111 = third_divisor(l, &lab, "0111");
    let d1012 = third_divisor(l, &lab, "1012");
    let q = |x: i64| Ratio::from_integer(x);
    let eq = QPicClass::from(e);
    ensure(d0111.inner(&d1012) == q(-1), || format!("D_0111·D_1012 = {}", d0111.inner(&d1012)))?;
    for (name, d) in [("D_0111", &d0111), ("D_1012", &d1012)] {
        ensure(d.inner(d) == q(-2), || format!("{name}² = {}", d.inner(d)))?;
        ensure(d.inner(&eq) == q(1), || format!("{name}·E = {}", d.inner(&eq)))?;
        ensure(d.scaled(q(3)).is_integral(), || format!("3·{name} is not integral"))?;
    }
    for (i, a) in classes.iter().enumerate() {
        ensure(l.is_exceptional(a), || format!("E_{} = {a} is not an exceptional class", i + 1))?;
        for (j, b) in classes.iter().enumerate().skip(i + 1) {
            ensure(a.inner(b) == 0, || format!("E_{}·E_{} = {}", i + 1, j + 1, a.inner(b)))?;
        }
    }
    let f0 = l.half_fiber();
    let h = 3 * e + 3 * f0 - lab.iter().map(|t| l.minus2()[t[0]]).sum::<PicClass>();
    ensure(h.square() == 1, || format!("H² = {}", h.square()))?;
    ensure(l.minus2().iter().all(|r| h.inner(r) == 2), || "H·R ≠ 2 for some R".into())?;
    ensure(classes.iter().all(|c| h.inner(c) == 0), || "H is not orthogonal to the nine classes".into())?;
    let got: BTreeSet<PicClass> = classes.iter().copied().collect();
    let want: BTreeSet<PicClass> = (1..10).map(PicClass::e).collect();
    ensure(got == want, || "the nine classes are not e_1, …, e_9".into())?;
    Ok(TheoremUniqueReport { labeling: lab, d0111, d1012, classes, h })
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueReport {
    /// All sets of nine pairwise orthogonal classes.
    pub cliques: usize,
    /// Those with Σ·R = 6 for every (-2)-class.
    pub qualifying: Vec<Vec<PicClass>>,
    /// Those where some fiber has plane degrees {1, 1, 4}.
    pub line_line_quartic: usize,
    /// Sorted per-fiber plane degrees of the (-2)-classes, with counts.
    pub patterns: Vec<(Vec<[i64; 3]>, usize)>,
}

/// Backtracking over the orthogonality graph in lexicographic class order.
pub fn chilean_set_uniqueness(classes: &[PicClass], l: &SurfaceLattice) -> Result<CliqueReport> {
    let mut cls = classes.to_vec();
    cls.sort();
    cls.dedup();
    let n = cls.len();
    let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && cls[i].inner(&cls[j]) == 0).collect()).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    fn go(cur: &mut Vec<usize>, cand: Vec<usize>, adj: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        if cur.len() == 9 {
            out.push(cur.clone());
            return;
        }
        if cur.len() + cand.len() < 9 {
            return;
        }
        for (k, &v) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[k + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            cur.push(v);
            go(cur, next, adj, out);
            cur.pop();
        }
    }
    go(&mut Vec::new(), (0..n).collect(), &adj, &mut found);

    let mut qualifying = Vec::new();
    let mut line_line_quartic = 0;
    let mut patterns: std::collections::BTreeMap<Vec<[i64; 3]>, usize> = Default::default();
    for c in &found {
        let sigma: PicClass = c.iter().map(|&i| cls[i]).sum();
        // the plane class of the blow-down is (Σ + F_0)/3, and F_0·R = 0
        let mut pat: Vec<[i64; 3]> = (0..4)
            .map(|f| {
                let mut d = l.fiber(f).map(|r| sigma.inner(&r));
                d.sort();
                d
            })
            .collect();
        if pat.iter().flatten().any(|x| x % 3 != 0) {
            return Err(Error::Check(format!("clique sum {sigma} meets a (-2)-class in a non-multiple of 3")));
        }
        for d in pat.iter_mut() {
            *d = d.map(|x| x / 3);
        }
        pat.sort();
        if pat.iter().all(|d| *d == [2, 2, 2]) {
            qualifying.push(c.iter().map(|&i| cls[i]).collect());
        }
        if pat.contains(&[1, 1, 4]) {
            line_line_quartic += 1;
        }
        *patterns.entry(pat).or_default() += 1;
    }
    let report = CliqueReport { cliques: found.len(), qualifying, line_line_quartic, patterns: patterns.into_iter().collect() };
    if report.qualifying.len() != 1 {
        return Err(Error::Check(format!("{} qualifying cliques", report.qualifying.len())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piclattice::{chilean_lattice, enumerate_minus1_generative};

    #[test]
    fn theorem_classes() {
        let l = chilean_lattice().unwrap();
        let r = verify_theorem_unique(&l).unwrap();
        assert_eq!(r.h, PicClass::e(0));
        assert_eq!(r.d0111.inner(&r.d0111), Ratio::from_integer(-2));
        assert_eq!(r.classes[0], PicClass::e(1));
    }

    #[test]
    fn one_chilean_clique() {
        let l = chilean_lattice().unwrap();
        let s = enumerate_minus1_generative(&l).unwrap();
        let r = chilean_set_uniqueness(&s, &l).unwrap();
        assert_eq!(r.qualifying, vec![(1..10).rev().map(PicClass::e).collect::<Vec<_>>()]);
        assert!(r.line_line_quartic > 0);
        let sigma: PicClass = r.qualifying[0].iter().copied().sum();
        assert!(l.minus2().iter().all(|x| sigma.inner(x) == 6));
    }
}
