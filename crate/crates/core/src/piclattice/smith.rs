//! Smith normal form over the integers.

use crate::error::{Error, Result};

use super::{PicClass, SurfaceLattice};

/// U·A·V = diag, with U and V unimodular and each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub diag: Vec<i64>,
    pub v: Vec<Vec<i64>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }

    /// Nonzero diagonal entries other than 1.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diag.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Prime-power parts of the invariant factors, sorted.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for &d in &self.diag {
            let mut n = d;
            let mut p = 2;
            while n > 1 {
                if n % p == 0 {
                    let mut q = 1;
                    while n % p == 0 {
                        n /= p;
                        q *= p;
                    }
                    out.push(q);
                }
                p += 1;
            }
        }
        out.sort_unstable();
        out
    }

    /// Order of the torsion part of the cokernel.
    pub fn torsion_order(&self) -> i64 {
        self.diag.iter().filter(|&&d| d != 0).product()
    }
}

fn overflow() -> Error {
    Error::Check("integer overflow in Smith reduction".into())
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// row_a ← row_a − q·row_b, for the rows of a matrix.
fn row_axpy(m: &mut [Vec<i64>], a: usize, b: usize, q: i64) -> Result<()> {
    for c in 0..m[a].len() {
        let t = q.checked_mul(m[b][c]).ok_or_else(overflow)?;
        m[a][c] = m[a][c].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn col_axpy(m: &mut [Vec<i64>], a: usize, b: usize, q: i64) -> Result<()> {
    for row in m.iter_mut() {
        let t = q.checked_mul(row[b]).ok_or_else(overflow)?;
        row[a] = row[a].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Full pivoting on the smallest absolute value.
pub fn smith(a: &[Vec<i64>]) -> Result<Smith> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid("ragged matrix".into()));
    }
    let mut m = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    row_axpy(&mut m, i, t, q)?;
                    row_axpy(&mut u, i, t, q)?;
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    col_axpy(&mut m, j, t, q)?;
                    col_axpy(&mut v, j, t, q)?;
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    row_axpy(&mut m, t, i, -1)?;
                    row_axpy(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for c in 0..cols {
                m[t][c] = -m[t][c];
            }
            for c in 0..rows {
                u[t][c] = -u[t][c];
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    Ok(Smith { u, diag, v })
}

/// Names the cosets of the row lattice of a generator matrix in Z^n.
#[derive(Clone, Debug)]
pub struct CosetLabeler {
    snf: Smith,
    n: usize,
}

impl CosetLabeler {
    pub fn new(gens: &[Vec<i64>], n: usize) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Invalid("no generators".into()));
        }
        Ok(Self { snf: smith(gens)?, n })
    }

    pub fn smith(&self) -> &Smith {
        &self.snf
    }

    /// Coordinates of x·V, reduced modulo the diagonal; equal labels mean equal cosets.
    pub fn label(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|j| {
                let y: i64 = (0..self.n).map(|k| x[k] * self.snf.v[k][j]).sum();
                match self.snf.diag.get(j) {
                    Some(&d) if d != 0 => y.rem_euclid(d),
                    _ => y,
                }
            })
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.label(x).iter().all(|&c| c == 0)
    }
}

/// Invariant factors of K^⊥ / (Λ [+ Z·F_0]) where Λ is spanned by the (-2)-classes.
pub fn kperp_quotient(l: &SurfaceLattice, with_half_fiber: bool) -> Result<Smith> {
    // K has coefficient 1 on e_1, so dropping that coordinate identifies K^⊥ with Z^9
    let project = |c: &PicClass| -> Vec<i64> { (0..10).filter(|&i| i != 1).map(|i| c.0[i]).collect() };
    let mut gens: Vec<Vec<i64>> = l.minus2().iter().map(project).collect();
    if with_half_fiber {
        gens.push(project(&l.half_fiber()));
    }
    smith(&gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let k = b.len();
        a.iter().map(|r| (0..b[0].len()).map(|j| (0..k).map(|t| r[t] * b[t][j]).sum()).collect()).collect()
    }

    #[test]
    fn diagonal_two_three() {
        let s = smith(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(s.diag, vec![1, 6]);
        assert_eq!(s.elementary_divisors(), vec![2, 3]);
        assert_eq!(s.invariant_factors(), vec![6]);
    }

    #[test]
    fn labels_cosets() {
        let q = CosetLabeler::new(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert!(q.contains(&[4, -3]));
        assert!(!q.contains(&[1, 0]));
        assert_eq!(q.label(&[1, 1]), q.label(&[3, 4]));
    }

    proptest! {
        #[test]
        fn transforms_diagonalize(m in proptest::collection::vec(proptest::collection::vec(-9i64..10, 4), 3)) {
            let s = smith(&m).unwrap();
            let d = mat_mul(&mat_mul(&s.u, &m), &s.v);
            for (i, row) in d.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if i == j {
                        prop_assert_eq!(x, s.diag[i]);
                    } else {
                        prop_assert_eq!(x, 0);
                    }
                }
            }
            for w in s.diag.windows(2) {
                prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
            }
        }
    }
}
