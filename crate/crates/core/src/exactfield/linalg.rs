//! Dense linear algebra over an exact field.

use super::{Field, FieldError, UPoly};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right kernel {v : M·v = 0}; `cols` is needed when M has no rows.
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(ctx); cols];
            v[f] = F::one(ctx);
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of M·x = b, if the system is consistent.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F], ctx: &F::Ctx) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<F>> = m.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let piv = rref(&mut a);
    if piv.contains(&cols) {
        return None;
    }
    let mut x = vec![F::zero(ctx); cols];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

pub fn det3<F: Field>(m: &[[F; 3]; 3]) -> F {
    let t = |a: usize, b: usize, c: usize| m[0][a].clone() * m[1][b].clone() * m[2][c].clone();
    t(0, 1, 2) + t(1, 2, 0) + t(2, 0, 1) - t(2, 1, 0) - t(0, 2, 1) - t(1, 0, 2)
}

pub fn inverse3<F: Field>(m: &[[F; 3]; 3]) -> Result<[[F; 3]; 3], FieldError> {
    let d = det3(m).inv()?;
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        m[r0][c0].clone() * m[r1][c1].clone() - m[r0][c1].clone() * m[r1][c0].clone()
    };
    Ok([0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i) * d.clone())))
}

pub fn mat_vec3<F: Field>(m: &[[F; 3]; 3], v: &[F; 3]) -> [F; 3] {
    [0, 1, 2].map(|i| m[i][0].clone() * v[0].clone() + m[i][1].clone() * v[1].clone() + m[i][2].clone() * v[2].clone())
}

/// Determinant of a square matrix over F[u] by fraction-free elimination.
pub fn det_upoly<F: Field>(m: Vec<Vec<UPoly<F>>>, ctx: &F::Ctx, var: &'static str) -> Result<UPoly<F>, FieldError> {
    let n = m.len();
    let mut a = m;
    let mut sign = false;
    let mut prev = UPoly::constant(F::one(ctx), var);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(UPoly::zero(ctx, var));
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.divide_exact(&prev)?;
            }
            a[i][k] = UPoly::zero(ctx, var);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -&d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rational;

    fn r(x: i64) -> Rational {
        Rational::from_i64(&(), x)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let k = kernel(&m, 3, &());
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = r(1) * v[0].clone() + r(2) * v[1].clone() + r(3) * v[2].clone();
            assert!(crate::exactfield::Field::is_zero(&s));
        }
    }

    #[test]
    fn inverse() {
        let m = [[r(2), r(1), r(0)], [r(0), r(1), r(3)], [r(1), r(0), r(1)]];
        let i = inverse3(&m).unwrap();
        let v = [r(1), r(2), r(3)];
        assert_eq!(mat_vec3(&i, &mat_vec3(&m, &v)), v);
    }

    #[test]
    fn poly_det() {
        let x = UPoly::<Rational>::x(&(), "u");
        let one = UPoly::constant(r(1), "u");
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        assert_eq!(det_upoly(m, &(), "u").unwrap(), &(&x * &x) - &one);
    }
}
