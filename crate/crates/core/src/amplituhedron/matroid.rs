use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank-2 positroid data on `[n]`: loops and disjoint cyclic intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidRank2 {
    pub n: usize,
    pub loops: BTreeSet<usize>,
    /// Cyclic intervals `[a, b]` = `a, a+1, ..., b` read mod n.
    pub intervals: Vec<(usize, usize)>,
}

fn interval_set(a: usize, b: usize, n: usize) -> Vec<usize> {
    let mut out = vec![a];
    let mut i = a;
    while i != b {
        i = i % n + 1;
        out.push(i);
    }
    out
}

impl MatroidRank2 {
    pub fn new(n: usize, loops: BTreeSet<usize>, intervals: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&l) = loops.iter().find(|&&l| l == 0 || l > n) {
            return Err(Error::Input(format!("loop {l} outside 1..={n}")));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &intervals {
            if a == 0 || a > n || b == 0 || b > n {
                return Err(Error::Input(format!("interval [{a},{b}] outside 1..={n}")));
            }
            for i in interval_set(a, b, n) {
                if !seen.insert(i) {
                    return Err(Error::Input(format!("intervals overlap at {i}")));
                }
            }
        }
        Ok(MatroidRank2 { n, loops, intervals })
    }

    /// Union of the intervals.
    pub fn support(&self) -> BTreeSet<usize> {
        self.intervals.iter().flat_map(|&(a, b)| interval_set(a, b, self.n)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidInvariants {
    pub r: i64,
    pub s: i64,
    pub l: i64,
    pub d: i64,
    pub c: i64,
    pub e: i64,
    #[serde(rename = "in_P")]
    pub in_p: bool,
}

pub fn matroid_invariants(nm: &MatroidRank2, k: usize) -> MatroidInvariants {
    let s = nm.support();
    let r = nm.intervals.len() as i64;
    let k = k as i64;
    let s_minus_l = s.difference(&nm.loops).count() as i64;
    let l = nm.loops.len() as i64;
    let union = s.union(&nm.loops).count() as i64;
    let d = 2 * k + r - s_minus_l - 2 * l;
    let e = r + k - union;
    MatroidInvariants { r, s: s.len() as i64, l, d, c: 2 * k - d, e, in_p: e >= 0 }
}

/// The matroid of the intersection of the m = 2 divisors `<Y i i+1>`, `i ∈ I`.
pub fn curve_matroid(indices: &[usize], n: usize) -> Result<MatroidRank2> {
    for &i in indices {
        if i == 0 || i > n {
            return Err(Error::Input(format!("index {i} outside 1..={n}")));
        }
        let j = i % n + 1;
        if indices.contains(&j) {
            return Err(Error::Input(format!("adjacent indices {i} and {j}")));
        }
    }
    MatroidRank2::new(n, BTreeSet::new(), indices.iter().map(|&i| (i, i % n + 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_curve_is_outside() {
        let nm = curve_matroid(&[1, 3, 5, 7, 9], 10).unwrap();
        let inv = matroid_invariants(&nm, 3);
        assert_eq!((inv.r, inv.s, inv.d, inv.c, inv.e, inv.in_p), (5, 10, 1, 5, -2, false));
    }

    #[test]
    fn single_interval_and_all_loops() {
        let nm = MatroidRank2::new(6, BTreeSet::new(), vec![(2, 3)]).unwrap();
        assert_eq!(matroid_invariants(&nm, 4).e, 3);
        let all = MatroidRank2::new(6, (1..=6).collect(), vec![]).unwrap();
        assert_eq!(matroid_invariants(&all, 2).e, 2 - 6);
        assert!(MatroidRank2::new(6, BTreeSet::new(), vec![(1, 3), (3, 4)]).is_err());
        assert_eq!(curve_matroid(&[6], 6).unwrap().intervals, vec![(6, 1)]);
        assert!(curve_matroid(&[1, 2], 6).is_err());
    }
}
