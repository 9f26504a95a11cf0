//! Dense univariate polynomials over the rationals: Sturm sequences, real root
//! isolation and exact rational roots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{format_rational, q, Q};

/// Coefficients in ascending degree order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let z = Q::zero();
        UPoly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::new(vec![]);
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * q(i as i64)).collect())
    }

    pub fn scale(&self, s: &Q) -> UPoly {
        UPoly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> UPoly {
        self.scale(&q(-1))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let ld = d.lead();
        if r.len() <= dd {
            return (UPoly::new(vec![]), self.clone());
        }
        let mut quot = vec![Q::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let f = &r[k + dd] / &ld;
            if !f.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] -= &f * b;
                }
            }
            quot[k] = f;
        }
        r.truncate(dd);
        (UPoly::new(quot), UPoly::new(r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn square_free(&self) -> UPoly {
        if self.degree() < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer associate with coprime coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|a| a.numer() * (&den / a.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        let sgn = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.iter().map(|a| a / &g * &sgn).collect()
    }

    /// Sturm sequence of the square-free part.
    pub fn sturm(&self) -> Vec<UPoly> {
        let p = self.square_free();
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
            seq.push(r);
        }
        seq.pop();
        seq
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Q {
        let l = self.lead().abs();
        let m = self.c[..self.c.len().saturating_sub(1)].iter().map(|a| a.abs() / &l).fold(Q::zero(), |a, b| a.max(b));
        m + q(1)
    }

    /// Isolating intervals for the distinct real roots, in increasing order.
    pub fn isolate_roots(&self) -> Vec<RootInterval> {
        if self.degree() < 1 {
            return vec![];
        }
        let seq = self.sturm();
        let b = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(RootInterval::new(&seq[0], lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / q(2);
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// All rational roots, exactly, in increasing order.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.degree() < 1 {
            return vec![];
        }
        let sf = self.square_free();
        let ints = UPoly::new(sf.c.clone()).primitive_integer();
        let d = BigRational::from_integer(ints.last().unwrap().abs());
        let tol = (&d * &d * q(2)).recip();
        let mut out = Vec::new();
        for mut iv in sf.isolate_roots() {
            iv.refine_to(&tol);
            let cand = if iv.is_exact() { iv.lo.clone() } else { simplest_between(&iv.lo, &iv.hi) };
            if sf.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| match i {
                0 => format_rational(a),
                1 => format!("{}*t", format_rational(a)),
                _ => format!("{}*t^{i}", format_rational(a)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign variations of a Sturm sequence at `x`, zeros skipped.
pub fn sign_changes(seq: &[UPoly], x: &Q) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign(&p.eval(x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Half-open interval `(lo, hi]` holding exactly one root of a square-free
/// polynomial, or the degenerate `[r, r]` once the root is found exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
    poly: UPoly,
}

impl RootInterval {
    fn new(p: &UPoly, lo: Q, hi: Q) -> Self {
        let mut iv = RootInterval { lo, hi, poly: p.clone() };
        if p.eval(&iv.hi).is_zero() {
            iv.lo = iv.hi.clone();
        }
        iv
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / q(2);
        let vm = self.poly.eval(&mid);
        if vm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        // the root is in (lo, hi], hi not a root, so p changes sign across it
        let vh = self.poly.eval(&self.hi);
        if sign(&vm) == sign(&vh) {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Q) {
        while !self.is_exact() && &self.width() >= width {
            self.bisect();
        }
    }
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    assert!(lo <= hi);
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if &(&fl + q(1)) <= hi {
        return fl + q(1);
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
