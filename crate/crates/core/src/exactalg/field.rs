//! Coefficient fields: arbitrary-precision rationals and small prime fields.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default primes used by the probabilistic smoothness checks.
pub const DEFAULT_PRIMES: [u64; 2] = [32003, 65537];

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Q = BigRational;

/// A coefficient field.
///
/// Prime fields carry their modulus at runtime, so constants are built from a
/// context value (`()` for the rationals, the modulus for `Fp`).
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: &BigInt) -> Self;
    /// Image of a rational; fails when the denominator is not invertible.
    fn from_rational(ctx: &Self::Ctx, q: &Q) -> Result<Self>;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul_ref(&i))
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, &BigInt::from(n))
    }

    /// Characteristic of the field (0 for the rationals).
    fn characteristic(ctx: &Self::Ctx) -> u64;
}

impl Field for BigRational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn from_int(_: &(), n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(_: &(), q: &Q) -> Result<Self> {
        Ok(q.clone())
    }
    fn ctx(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
}

/// Modulus of a prime field. Must be a prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1 << 32)).contains(&p) || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime below 2^32")));
        }
        Ok(Modulus(p))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Element of Z/pZ, reduced to `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: u64, m: Modulus) -> Self {
        Fp { v: v % m.0, p: m.0 }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.p)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.v;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Fp { v: acc, p: self.p }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    type Ctx = Modulus;

    fn zero(m: &Modulus) -> Self {
        Fp { v: 0, p: m.0 }
    }
    fn one(m: &Modulus) -> Self {
        Fp { v: 1, p: m.0 }
    }
    fn from_int(m: &Modulus, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(m.0));
        Fp { v: r.to_u64().expect("residue fits in u64"), p: m.0 }
    }
    fn from_rational(m: &Modulus, q: &Q) -> Result<Self> {
        let num = Fp::from_int(m, q.numer());
        let den = Fp::from_int(m, q.denom());
        num.div_ref(&den).ok_or_else(|| {
            Error::BadPrime(format!("{} divides the denominator of {q}", m.0))
        })
    }
    fn ctx(&self) -> Modulus {
        Modulus(self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add_ref(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Fp { v: self.v * o.v % self.p, p: self.p }
    }
    fn neg_ref(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
    fn characteristic(m: &Modulus) -> u64 {
        m.0
    }
}

/// Parse `"a"` or `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// `"num/den"`, or a bare integer when the denominator is one.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Absolute value helper used in a few sign-insensitive comparisons.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let x = parse_rational("6/-4").unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&q(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let m = Modulus::new(32003).unwrap();
        let a = Fp::from_i64(&m, -1);
        assert_eq!(a.value(), 32002);
        let inv = Fp::from_i64(&m, 7).inv().unwrap();
        assert!(inv.mul_ref(&Fp::from_i64(&m, 7)).is_one());
        assert!(Modulus::new(32004).is_err());
        let half = Fp::from_rational(&m, &qq(1, 2)).unwrap();
        assert!(half.add_ref(&half).is_one());
        let m3 = Modulus::new(3).unwrap();
        assert!(matches!(Fp::from_rational(&m3, &qq(1, 3)), Err(Error::BadPrime(_))));
    }
}
