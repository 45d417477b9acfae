//! The Picard lattice of the blown-up plane in the geometric basis.
//!
//! A class is stored by its raw coefficients on (e_0, …, e_9), so the line
//! through the first two points is `[1, -1, -1, 0, …]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{ensure, Error, Result};

mod exc;
mod smith;
mod unique;

pub use exc::{
    bertini_involution, bertini_pair, enumerate_minus1_bruteforce, enumerate_minus1_generative,
    exceptional_family, ltrop, max_intersection, mw_group, mw_orbits, realize_low_degree, res_partition, table_csv,
    table_rows, BasePerm, Ltrop, LtropPoint, ResPartition, TableRow, MW_GENERATORS,
};
pub use smith::{kperp_quotient, smith, CosetLabeler, Smith};
pub use unique::{chilean_set_uniqueness, verify_theorem_unique, CliqueReport, TheoremUniqueReport};

/// Classes of the twelve conics on (e_0, …, e_9).
pub const CHILEAN_CLASSES: [[i64; 10]; 12] = [
    [2, -1, -1, -1, -1, -1, -1, 0, 0, 0],
    [2, -1, -1, -1, 0, 0, 0, -1, -1, -1],
    [2, 0, 0, 0, -1, -1, -1, -1, -1, -1],
    [2, -1, -1, 0, -1, -1, 0, -1, -1, 0],
    [2, -1, 0, -1, -1, 0, -1, -1, 0, -1],
    [2, 0, -1, -1, 0, -1, -1, 0, -1, -1],
    [2, -1, -1, 0, -1, 0, -1, 0, -1, -1],
    [2, -1, 0, -1, 0, -1, -1, -1, -1, 0],
    [2, 0, -1, -1, -1, -1, 0, -1, 0, -1],
    [2, -1, -1, 0, 0, -1, -1, -1, 0, -1],
    [2, 0, -1, -1, -1, 0, -1, -1, -1, 0],
    [2, -1, 0, -1, -1, -1, 0, 0, -1, -1],
];

/// (-2)-classes of the index-3 surface, one per row.
pub const INDEX3_CLASSES: [[i64; 10]; 12] = [
    [1, -1, -1, -1, 0, 0, 0, 0, 0, 0],
    [4, -1, -1, -1, -2, -2, -2, -1, -1, -1],
    [4, -1, -1, -1, -1, -1, -1, -2, -2, -2],
    [1, -1, 0, 0, 0, -1, 0, 0, 0, -1],
    [4, -1, -2, -1, -1, -1, -2, -2, -1, -1],
    [4, -1, -1, -2, -2, -1, -1, -1, -2, -1],
    [1, 0, -1, 0, 0, -1, 0, 0, -1, 0],
    [4, -2, -1, -1, -2, -1, -1, -2, -1, -1],
    [4, -1, -1, -2, -1, -1, -2, -1, -1, -2],
    [1, 0, 0, -1, 0, -1, 0, -1, 0, 0],
    [4, -2, -1, -1, -1, -1, -2, -1, -2, -1],
    [4, -1, -2, -1, -2, -1, -1, -1, -1, -2],
];

/// Which component of each reducible Hesse fiber the nine sections meet.
pub const SECTION_VECTORS: [[u8; 4]; 9] = [
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

/// d·e_0 + Σ c_i·e_i, stored as (d, c_1, …, c_9).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PicClass(pub [i64; 10]);

impl PicClass {
    pub const ZERO: PicClass = PicClass([0; 10]);

    pub fn e(i: usize) -> Self {
        let mut c = [0; 10];
        c[i] = 1;
        PicClass(c)
    }

    /// K = −3e_0 + Σ e_i.
    pub fn canonical() -> Self {
        let mut c = [1; 10];
        c[0] = -3;
        PicClass(c)
    }

    /// F_0 = −K.
    pub fn half_fiber() -> Self {
        -Self::canonical()
    }

    pub fn coords(&self) -> &[i64; 10] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0[0]
    }

    /// Multiplicity at the i-th point, i.e. −c_i.
    pub fn mult(&self, i: usize) -> i64 {
        -self.0[i]
    }

    pub fn inner(&self, o: &Self) -> i64 {
        inner(self, o)
    }

    pub fn square(&self) -> i64 {
        inner(self, self)
    }

    /// D² = D·K = −1.
    pub fn is_minus1(&self) -> bool {
        self.square() == -1 && self.inner(&Self::canonical()) == -1
    }

    /// D² = −2 and D·K = 0.
    pub fn is_minus2(&self) -> bool {
        self.square() == -2 && self.inner(&Self::canonical()) == 0
    }

    /// Image under a permutation of e_1, …, e_9 (index 0 fixed).
    pub fn permuted(&self, p: &[usize; 10]) -> Self {
        let mut c = [0; 10];
        for (i, &pi) in p.iter().enumerate() {
            c[pi] = self.0[i];
        }
        PicClass(c)
    }
}

pub fn inner(u: &PicClass, v: &PicClass) -> i64 {
    u.0[0] * v.0[0] - (1..10).map(|i| u.0[i] * v.0[i]).sum::<i64>()
}

impl Add for PicClass {
    type Output = PicClass;
    fn add(self, o: PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for PicClass {
    type Output = PicClass;
    fn sub(self, o: PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for PicClass {
    type Output = PicClass;
    fn neg(self) -> PicClass {
        PicClass(self.0.map(|x| -x))
    }
}

impl Mul<PicClass> for i64 {
    type Output = PicClass;
    fn mul(self, o: PicClass) -> PicClass {
        PicClass(o.0.map(|x| self * x))
    }
}

impl std::iter::Sum for PicClass {
    fn sum<I: Iterator<Item = PicClass>>(it: I) -> PicClass {
        it.fold(PicClass::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}e{i}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A class with rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QPicClass(pub [Ratio<i64>; 10]);

impl QPicClass {
    pub fn zero() -> Self {
        QPicClass([Ratio::from_integer(0); 10])
    }

    pub fn inner(&self, o: &Self) -> Ratio<i64> {
        let mut s = self.0[0] * o.0[0];
        for i in 1..10 {
            s -= self.0[i] * o.0[i];
        }
        s
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_integral(&self) -> Option<PicClass> {
        self.is_integral().then(|| PicClass(self.0.map(|x| x.to_integer())))
    }

    pub fn scaled(&self, k: Ratio<i64>) -> Self {
        QPicClass(self.0.map(|x| x * k))
    }
}

impl From<PicClass> for QPicClass {
    fn from(c: PicClass) -> Self {
        QPicClass(c.0.map(Ratio::from_integer))
    }
}

impl Add for QPicClass {
    type Output = QPicClass;
    fn add(self, o: QPicClass) -> QPicClass {
        QPicClass(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for QPicClass {
    type Output = QPicClass;
    fn sub(self, o: QPicClass) -> QPicClass {
        QPicClass(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl fmt::Display for QPicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// (-2)-classes grouped into four triangles, with the half fiber and the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    minus2: Vec<PicClass>,
    fibers: Vec<[usize; 3]>,
    half_fiber: PicClass,
    index: i64,
}

impl SurfaceLattice {
    /// Checks squares, K-degrees, fiber sums −m·K and the triangle products.
    pub fn new(minus2: Vec<PicClass>, fibers: Vec<[usize; 3]>, index: i64) -> Result<Self> {
        let k = PicClass::canonical();
        for (j, r) in minus2.iter().enumerate() {
            ensure(r.square() == -2, || format!("column {} has square {}", j + 1, r.square()))?;
            ensure(r.inner(&k) == 0, || format!("column {} has K-degree {}", j + 1, r.inner(&k)))?;
        }
        let mut seen = vec![false; minus2.len()];
        for fib in &fibers {
            for &j in fib {
                ensure(j < minus2.len() && !seen[j], || format!("column {} is not in exactly one fiber", j + 1))?;
                seen[j] = true;
            }
            let sum: PicClass = fib.iter().map(|&j| minus2[j]).sum();
            ensure(sum == -index * k, || format!("columns {:?} sum to {sum}", fib.map(|j| j + 1)))?;
            for a in 0..3 {
                for b in a + 1..3 {
                    let p = minus2[fib[a]].inner(&minus2[fib[b]]);
                    ensure(p == 1, || format!("columns {} and {} meet in {p}", fib[a] + 1, fib[b] + 1))?;
                }
            }
        }
        ensure(seen.iter().all(|&s| s), || "some column is in no fiber".into())?;
        Ok(Self { minus2, fibers, half_fiber: PicClass::half_fiber(), index })
    }

    pub fn minus2(&self) -> &[PicClass] {
        &self.minus2
    }

    pub fn fibers(&self) -> &[[usize; 3]] {
        &self.fibers
    }

    /// The three classes of fiber f.
    pub fn fiber(&self, f: usize) -> [PicClass; 3] {
        self.fibers[f].map(|j| self.minus2[j])
    }

    pub fn half_fiber(&self) -> PicClass {
        self.half_fiber
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    /// D·R ≥ 0 for every (-2)-class.
    pub fn is_nef_on_minus2(&self, d: &PicClass) -> bool {
        self.minus2.iter().all(|r| d.inner(r) >= 0)
    }

    /// (-1)-class meeting every (-2)-class nonnegatively.
    pub fn is_exceptional(&self, d: &PicClass) -> bool {
        d.is_minus1() && self.is_nef_on_minus2(d)
    }

    /// Per fiber, [R⁽⁰⁾, R⁽¹⁾, R⁽²⁾] as column indices: R⁽⁰⁾ misses E, the
    /// other two keep their stored order.
    pub fn labeling(&self, e: &PicClass) -> Result<Vec<[usize; 3]>> {
        self.fibers
            .iter()
            .enumerate()
            .map(|(f, fib)| {
                let (zero, met): (Vec<usize>, Vec<usize>) =
                    fib.iter().partition(|&&j| e.inner(&self.minus2[j]) == 0);
                ensure(zero.len() == 1, || format!("{e} misses {} components of fiber {}", zero.len(), f + 1))?;
                Ok([zero[0], met[0], met[1]])
            })
            .collect()
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        self.minus2.iter().map(|r| self.minus2.iter().map(|s| r.inner(s)).collect()).collect()
    }
}

const CONSECUTIVE_TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]];

/// The twelve conic classes of the Chilean configuration.
pub fn chilean_lattice() -> Result<SurfaceLattice> {
    let l = SurfaceLattice::new(CHILEAN_CLASSES.iter().map(|&c| PicClass(c)).collect(), CONSECUTIVE_TRIPLES.to_vec(), 2)?;
    for (j, r) in l.minus2.iter().enumerate() {
        let through = (1..10).filter(|&i| r.mult(i) == 1).count();
        let others = (1..10).filter(|&i| r.mult(i) != 0 && r.mult(i) != 1).count();
        ensure(r.degree() == 2 && through == 6 && others == 0, || format!("column {} is not a conic through six points", j + 1))?;
    }
    Ok(l)
}

/// The twelve (-2)-classes of the index-3 surface.
pub fn index3_lattice() -> Result<SurfaceLattice> {
    SurfaceLattice::new(INDEX3_CLASSES.iter().map(|&c| PicClass(c)).collect(), CONSECUTIVE_TRIPLES.to_vec(), 3)
}

/// Every difference of two section vectors has exactly one zero coordinate
/// mod 3; returns the number of zero-sum triples, which should be 12.
pub fn section_vector_check() -> Result<usize> {
    let v = &SECTION_VECTORS;
    for i in 0..9 {
        for j in i + 1..9 {
            let zeros = (0..4).filter(|&k| (v[i][k] + 3 - v[j][k]) % 3 == 0).count();
            ensure(zeros == 1, || format!("x{} - x{} has {zeros} zero coordinates", i + 1, j + 1))?;
        }
    }
    let mut lines = 0;
    for i in 0..9 {
        for j in i + 1..9 {
            for k in j + 1..9 {
                if (0..4).all(|c| (v[i][c] + v[j][c] + v[k][c]) % 3 == 0) {
                    lines += 1;
                }
            }
        }
    }
    if lines != 12 {
        return Err(Error::Check(format!("{lines} zero-sum triples")));
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_products() {
        let k = PicClass::canonical();
        assert_eq!(k.square(), 0);
        let l = chilean_lattice().unwrap();
        assert_eq!(l.minus2()[0].square(), -2);
        assert_eq!(l.minus2()[0].inner(&l.minus2()[1]), 1);
        assert!(l.minus2().iter().all(|r| r.inner(&k) == 0));
    }

    #[test]
    fn chilean_fiber_sums() {
        let l = chilean_lattice().unwrap();
        let s: PicClass = l.fiber(0).into_iter().sum();
        assert_eq!(s, PicClass([6, -2, -2, -2, -2, -2, -2, -2, -2, -2]));
    }

    #[test]
    fn broken_column_is_named() {
        let mut c: Vec<PicClass> = CHILEAN_CLASSES.iter().map(|&c| PicClass(c)).collect();
        c[4].0[1] = 0;
        let err = SurfaceLattice::new(c, CONSECUTIVE_TRIPLES.to_vec(), 2).unwrap_err();
        assert!(err.to_string().contains("column 5"), "{err}");
    }

    #[test]
    fn index3_columns() {
        let l = index3_lattice().unwrap();
        assert_eq!(l.minus2()[0], PicClass([1, -1, -1, -1, 0, 0, 0, 0, 0, 0]));
        for f in 0..4 {
            let s: PicClass = l.fiber(f).into_iter().sum();
            assert_eq!(s, PicClass([9, -3, -3, -3, -3, -3, -3, -3, -3, -3]));
        }
    }

    #[test]
    fn section_vectors() {
        assert_eq!(section_vector_check().unwrap(), 12);
    }

    #[test]
    fn display() {
        assert_eq!(PicClass([4, -3, -1, -1, -1, -1, -1, -1, -1, -1]).to_string(), "4e0-3e1-e2-e3-e4-e5-e6-e7-e8-e9");
        assert_eq!(PicClass::e(9).to_string(), "e9");
        assert_eq!(PicClass::ZERO.to_string(), "0");
    }
}
