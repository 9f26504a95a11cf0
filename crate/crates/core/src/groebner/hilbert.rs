//! Hilbert series of monomial ideals and Hilbert polynomials of projective schemes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::{format_rational, Monomial, Q};

/// Invariants read off the Hilbert polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// Hilbert polynomial coefficients, constant term first.
    pub hp: Vec<Q>,
    /// Projective dimension; -1 for the empty scheme.
    pub dim: i64,
    pub degree: BigInt,
    /// Arithmetic genus `1 - P(0)`, only for curves.
    pub genus: Option<BigInt>,
    /// Numerator `Q(t)` of the reduced Hilbert series `Q(t) / (1-t)^(dim+1)`.
    pub numerator: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub dim: i64,
    pub degree: String,
    pub genus: Option<String>,
    pub hp: Vec<String>,
}

impl HilbertData {
    pub fn report(&self) -> HilbertReport {
        HilbertReport {
            dim: self.dim,
            degree: self.degree.to_string(),
            genus: self.genus.as_ref().map(|g| g.to_string()),
            hp: self.hp.iter().map(format_rational).collect(),
        }
    }

    pub fn degree_i64(&self) -> i64 {
        self.degree.to_i64().expect("degree fits in i64")
    }

    pub fn genus_i64(&self) -> Option<i64> {
        self.genus.as_ref().and_then(|g| g.to_i64())
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    /// Value of the Hilbert polynomial at `s`.
    pub fn eval(&self, s: i64) -> Q {
        let x = BigRational::from_integer(BigInt::from(s));
        self.hp.iter().rev().fold(Q::zero(), |acc, c| acc * &x + c)
    }
}

type TPoly = Vec<BigInt>;

fn tp_add(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn tp_shift(a: &TPoly, k: usize) -> TPoly {
    if a.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend(a.iter().cloned());
    out
}

fn tp_mul(a: &TPoly, b: &TPoly) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn trim(mut a: TPoly) -> TPoly {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `k[x]/I`, for a
/// monomial ideal `I`, by pivot recursion.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> TPoly {
    numerator_rec(minimalize(gens.to_vec()), nvars)
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> TPoly {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![BigInt::one()];
        for m in &gens {
            let mut f = vec![BigInt::zero(); m.degree() as usize + 1];
            f[0] = BigInt::one();
            f[m.degree() as usize] -= BigInt::one();
            acc = tp_mul(&acc, &f);
        }
        return acc;
    }
    // pivot: the variable occurring in the most non-trivial generators
    let mut counts = vec![0usize; nvars];
    for m in gens.iter().filter(|m| m.exponents().iter().filter(|&&e| e > 0).count() > 1) {
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let v = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|m| m.exponents()[v]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2].max(1);
    let mut pe = vec![0u16; nvars];
    pe[v] = e;
    let p = Monomial::from_exponents(&pe);

    let mut plus = gens.clone();
    plus.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|m| m.div(&m.gcd(&p)).unwrap()).collect();
    let a = numerator_rec(minimalize(plus), nvars);
    let b = numerator_rec(minimalize(colon), nvars);
    tp_add(&a, &tp_shift(&b, e as usize))
}

fn binomial_poly(shift: i64, d: usize) -> Vec<Q> {
    // C(s + shift, d) as a polynomial in s
    let mut acc = vec![Q::one()];
    for j in 1..=d as i64 {
        let c = BigRational::from_integer(BigInt::from(shift - d as i64 + j));
        let mut next = vec![Q::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a;
            next[i] += a * &c;
        }
        acc = next.into_iter().map(|x| x / BigRational::from_integer(BigInt::from(j))).collect();
    }
    acc
}

/// Hilbert data of `k[x_0..x_{n-1}]/I` from the leading monomials of a Gröbner basis
/// of a homogeneous ideal `I`.
pub fn hilbert_from_leading(lead: &[Monomial], nvars: usize) -> HilbertData {
    let mut num = hilbert_numerator(lead, nvars);
    let mut a = nvars as i64;
    // strip factors of (1 - t)
    while a > 0 && !num.is_empty() && num.iter().fold(BigInt::zero(), |s, c| s + c).is_zero() {
        // synthetic division by (1 - t): N = (1-t) Q  =>  Q_k = sum_{i<=k} N_i
        let mut qv = Vec::with_capacity(num.len() - 1);
        let mut run = BigInt::zero();
        for c in &num[..num.len() - 1] {
            run += c;
            qv.push(run.clone());
        }
        num = trim(qv);
        a -= 1;
    }
    let dim = a - 1;
    if num.is_empty() || dim < 0 {
        return HilbertData { hp: vec![], dim: -1, degree: BigInt::zero(), genus: None, numerator: num };
    }
    let d = dim as usize;
    let mut hp = vec![Q::zero(); d + 1];
    for (i, qi) in num.iter().enumerate() {
        let b = binomial_poly(d as i64 - i as i64, d);
        for (k, c) in b.iter().enumerate() {
            hp[k] += c * BigRational::from_integer(qi.clone());
        }
    }
    while hp.last().is_some_and(|x| x.is_zero()) {
        hp.pop();
    }
    let degree = num.iter().fold(BigInt::zero(), |s, c| s + c);
    let genus = if dim == 1 {
        let p0 = hp.first().cloned().unwrap_or_else(Q::zero);
        let g = Q::one() - p0;
        Some(g.to_integer())
    } else {
        None
    };
    HilbertData { hp, dim, degree, genus, numerator: num }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn projective_space() {
        let h = hilbert_from_leading(&[], 4);
        assert_eq!(h.dim, 3);
        assert_eq!(h.degree, BigInt::one());
        // C(s+3,3) at s = 1 is 4
        assert_eq!(h.eval(1), q(4));
    }

    #[test]
    fn plane_cubic_and_points() {
        // <x^3> in P^2: plane cubic, genus 1
        let h = hilbert_from_leading(&[m(&[3, 0, 0])], 3);
        assert_eq!((h.dim, h.degree_i64(), h.genus_i64()), (1, 3, Some(1)));
        // irrelevant ideal: empty
        let e = hilbert_from_leading(&[m(&[1, 0]), m(&[0, 1])], 2);
        assert!(e.is_empty());
        // <x, y^2> in P^2: double point
        let p = hilbert_from_leading(&[m(&[1, 0, 0]), m(&[0, 2, 0])], 3);
        assert_eq!((p.dim, p.degree_i64()), (0, 2));
    }

    #[test]
    fn non_coprime_pivot() {
        // <xy, xz> in P^2 = line x=0 union point: dim 1, degree 1
        let h = hilbert_from_leading(&[m(&[1, 1, 0]), m(&[1, 0, 1])], 3);
        assert_eq!((h.dim, h.degree_i64()), (1, 1));
        assert_eq!(h.hp, vec![q(2), q(1)]);
    }
}
