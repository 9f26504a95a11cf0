//! Dense linear algebra over a field.

use super::field::Field;

/// Fraction-free (Bareiss) determinant of a square constant matrix.
pub fn det_bareiss<F: Field>(mut a: Vec<Vec<F>>, ctx: &F::Ctx) -> F {
    let n = a.len();
    if n == 0 {
        return F::one(ctx);
    }
    let mut neg = false;
    let mut prev = F::one(ctx);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return F::zero(ctx);
        };
        if p != k {
            a.swap(p, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul_ref(&a[k][k]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = v.div_ref(&prev).expect("nonzero Bareiss pivot");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if neg {
        d.neg_ref()
    } else {
        d
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(a: &mut [Vec<F>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, pv) in row.iter_mut().zip(&pivot) {
                    *x = x.sub_ref(&f.mul_ref(pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(a: &[Vec<F>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Basis of the right nullspace `{x : A x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(a: &[Vec<F>], cols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(ctx); cols];
            v[f] = F::one(ctx);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][f].neg_ref();
            }
            v
        })
        .collect()
}

/// Unique solution of a square system, or `None` if singular.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let piv = rref(&mut m);
    if piv.len() != n || piv.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>], ctx: &F::Ctx) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(ctx), |acc, k| acc.add_ref(&row[k].mul_ref(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{q, Q};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(det_bareiss(m(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]]), &()), q(2));
        assert_eq!(det_bareiss(m(&[&[0, 1], &[1, 0]]), &()), q(-1));
        assert_eq!(det_bareiss(m(&[&[1, 2], &[2, 4]]), &()), q(0));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3, &());
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let z: Q = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert_eq!(z, q(0));
        }
        let s = solve(&m(&[&[2, 1], &[1, 3]]), &[q(3), q(4)]).unwrap();
        assert_eq!(s, vec![q(1), q(1)]);
        assert_eq!(rank(&a), 1);
    }
}
