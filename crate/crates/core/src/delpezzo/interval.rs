//! Closed rational intervals for certified evaluation at real algebraic points.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::exactalg::{q, QPoly, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / q(2)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// +1 / -1 when the sign is certain, 0 when the interval straddles or touches zero.
    pub fn sign(&self) -> i8 {
        if self.lo.is_positive() {
            1
        } else if self.hi.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, o: &Interval) -> Option<Interval> {
        o.recip().map(|r| self * &r)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval::new(Q::zero(), self.lo.abs().max(self.hi.abs()))
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Interval::new(self.hi.abs(), self.lo.abs())
        } else {
            self.clone()
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

/// Natural interval extension of a polynomial on a box (one interval per variable).
pub fn eval_poly(f: &QPoly, bx: &[Interval]) -> Interval {
    let mut acc = Interval::point(Q::zero());
    for (m, c) in f.terms() {
        let mut t = Interval::point(c.clone());
        for (x, &e) in bx.iter().zip(m.exponents()) {
            for _ in 0..e {
                t = &t * x;
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, qq, MonomialOrder, Ring};

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(q(-1), q(2));
        let b = Interval::new(q(3), q(4));
        assert_eq!(&a * &b, Interval::new(q(-4), q(8)));
        assert_eq!(&a - &b, Interval::new(q(-5), q(-1)));
        assert!(a.recip().is_none());
        assert_eq!(b.recip().unwrap(), Interval::new(qq(1, 4), qq(1, 3)));
        assert_eq!(a.sign(), 0);
        assert_eq!(b.sign(), 1);
    }

    #[test]
    fn polynomial_enclosure_contains_value() {
        let r = Ring::new(&["x", "y"], MonomialOrder::GrevLex, ());
        let f = parse_poly(&r, "x^2 - 2*y + 1").unwrap();
        let bx = [Interval::new(qq(1, 2), q(1)), Interval::new(q(0), qq(1, 4))];
        let e = eval_poly(&f, &bx);
        let v = f.eval(&[qq(3, 4), qq(1, 8)]);
        assert!(e.contains(&v));
    }
}
