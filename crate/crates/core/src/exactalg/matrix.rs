use std::collections::HashMap;
use std::sync::Arc;

use super::field::Field;
use super::linalg::det_bareiss;
use super::poly::{MvPoly, Ring};
use crate::error::{Error, Result};

/// Rectangular matrix of polynomials over one ring, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<Ring<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<MvPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Arc<Ring<F>>, rows: usize, cols: usize, entries: Vec<MvPoly<F>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let entries = entries
            .into_iter()
            .map(|e| e.change_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &Arc<Ring<F>>, rows: Vec<Vec<MvPoly<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_constants(ring: &Arc<Ring<F>>, rows: &[Vec<F>]) -> Result<Self> {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|c| MvPoly::constant(ring, c.clone())).collect())
            .collect();
        Self::from_rows(ring, polys)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MvPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[MvPoly<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|e| e.is_constant())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix<F> {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn transpose(&self) -> PolyMatrix<F> {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, o: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = MvPoly::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: o.cols, entries })
    }

    /// Exact determinant: Bareiss for constant matrices, memoized Laplace expansion otherwise.
    pub fn determinant(&self) -> Result<MvPoly<F>> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if self.is_constant() {
            let a: Vec<Vec<F>> =
                (0..n).map(|i| (0..n).map(|j| self.get(i, j).constant_coeff()).collect()).collect();
            return Ok(MvPoly::constant(&self.ring, det_bareiss(a, self.ring.ctx())));
        }
        if n > 63 {
            return Err(Error::Dimension("symbolic determinant larger than 63x63".into()));
        }
        let mut memo = HashMap::new();
        Ok(self.laplace(0, (1u64 << n) - 1, &mut memo))
    }

    // Determinant of rows r.. against the column set `mask`, expanding along row r.
    fn laplace(&self, r: usize, mask: u64, memo: &mut HashMap<u64, MvPoly<F>>) -> MvPoly<F> {
        if mask == 0 {
            return MvPoly::one(&self.ring);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = MvPoly::zero(&self.ring);
        let mut pos = 0;
        for j in 0..self.cols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let e = self.get(r, j);
            if !e.is_zero() {
                let sub = self.laplace(r + 1, mask & !(1 << j), memo);
                let t = e * &sub;
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `size`-minors, ordered lexicographically by (row set, column set).
    pub fn minors(&self, size: usize) -> Result<Vec<MvPoly<F>>> {
        if size == 0 || size > self.rows.min(self.cols) {
            return Err(Error::Input(format!(
                "minor size {size} out of range for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Vec::new();
        for rs in subsets(self.rows, size) {
            for cs in subsets(self.cols, size) {
                out.push(self.submatrix(&rs, &cs).determinant()?);
            }
        }
        Ok(out)
    }
}

/// `size`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        out.push(cur.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - size + i {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Matrix of partial derivatives `d f_i / d v_j`.
pub fn jacobian<F: Field>(fs: &[MvPoly<F>], vars: &[&str]) -> Result<PolyMatrix<F>> {
    let ring = fs
        .first()
        .map(|f| f.ring().clone())
        .ok_or_else(|| Error::Input("jacobian of an empty list".into()))?;
    let idx = vars
        .iter()
        .map(|v| ring.var_index(v).ok_or_else(|| Error::Input(format!("unknown variable {v:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(fs.len() * idx.len());
    for f in fs {
        if !f.ring().same_universe(&ring) {
            return Err(Error::Input("jacobian inputs from different rings".into()));
        }
        for &i in &idx {
            entries.push(f.derivative(i));
        }
    }
    PolyMatrix::new(&ring, fs.len(), idx.len(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{q, Q};
    use crate::exactalg::monomial::MonomialOrder;

    #[test]
    fn symbolic_2x2_and_vandermonde() {
        let r = Ring::<Q>::new(&["x", "y", "z", "w"], MonomialOrder::GrevLex, ());
        let v = |s| MvPoly::var(&r, s).unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![v("x"), v("y")], vec![v("z"), v("w")]]).unwrap();
        assert_eq!(m.determinant().unwrap(), &(&v("x") * &v("w")) - &(&v("y") * &v("z")));
        let vd: Vec<Vec<Q>> = (1..=3).map(|t| vec![q(1), q(t), q(t * t)]).collect();
        let vm = PolyMatrix::from_constants(&r, &vd).unwrap();
        assert_eq!(vm.determinant().unwrap(), MvPoly::constant(&r, q(2)));
        assert!(PolyMatrix::from_constants(&r, &vd[..2]).unwrap().determinant().is_err());
    }

    #[test]
    fn minors_order() {
        let r = Ring::<Q>::new(&["x"], MonomialOrder::GrevLex, ());
        let m = PolyMatrix::from_constants(&r, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]).unwrap();
        let ms: Vec<Q> = m.minors(2).unwrap().iter().map(|p| p.constant_coeff()).collect();
        assert_eq!(ms, vec![q(1), q(0), q(0)]);
        assert!(m.minors(3).is_err());
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
