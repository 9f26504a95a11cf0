use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u16; 12]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps), deg: exps.iter().map(|&e| e as u32).sum() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + o.deg,
        }
    }

    /// `self / o`, if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !o.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a - b).collect(),
            deg: self.deg - o.deg,
        })
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 12]> =
            self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 12]> =
            self.exps.iter().zip(&o.exps).map(|(a, b)| *a.min(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent vector restricted/permuted by `map[i] = index in the new ring`.
    pub(crate) fn remap(&self, map: &[Option<usize>], nvars: usize) -> Option<Monomial> {
        let mut exps: SmallVec<[u16; 12]> = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            exps[map[i]?] += e;
        }
        Some(Monomial { exps, deg: self.deg })
    }
}

/// Term order. `Block(b)` is an elimination order for the first `b` variables:
/// grevlex on the first block, ties broken by grevlex on the rest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[derive(Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    Block(usize),
}


impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(b) => write!(f, "block{b}"),
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.exps.len());
                grevlex(&a.exps[..k], &b.exps[..k])
                    .then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}
