use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{format_rational, Field, Q};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Polynomial ring: named variables, a term order and the coefficient field context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring<F: Field> {
    vars: Vec<String>,
    order: MonomialOrder,
    ctx: F::Ctx,
}

impl<F: Field> Ring<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder, ctx: F::Ctx) -> Arc<Self> {
        Arc::new(Ring { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), order, ctx })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(Ring { vars: self.vars.clone(), order, ctx: self.ctx.clone() })
    }

    /// Same variables and coefficient field (the term order may differ).
    pub fn same_universe(&self, o: &Ring<F>) -> bool {
        self.vars == o.vars && self.ctx == o.ctx
    }

    pub fn zero(&self) -> F {
        F::zero(&self.ctx)
    }

    pub fn one(&self) -> F {
        F::one(&self.ctx)
    }
}

/// Sparse multivariate polynomial. Terms are kept strictly decreasing in the
/// ring's term order with no zero coefficients.
#[derive(Clone)]
pub struct MvPoly<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<(Monomial, F)>,
}

pub type QPoly = MvPoly<Q>;

impl<F: Field> MvPoly<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        MvPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial, c: F) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
        if c.is_zero() {
            return Self::zero(ring);
        }
        MvPoly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    pub fn var(ring: &Arc<Ring<F>>, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::Input(format!("unknown variable {name:?}")))?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(ring: &Arc<Ring<F>>, terms: I) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            match acc.get_mut(&m) {
                Some(e) => *e = e.add_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_unsorted(ring, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub(crate) fn from_sorted_unchecked(ring: &Arc<Ring<F>>, terms: Vec<(Monomial, F)>) -> Self {
        MvPoly { ring: ring.clone(), terms }
    }

    fn from_unsorted(ring: &Arc<Ring<F>>, mut terms: Vec<(Monomial, F)>) -> Self {
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        MvPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    #[allow(clippy::len_without_is_empty)] // is_zero plays that role
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_coeff(&self) -> F {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        let ord = self.ring.order();
        match self.terms.binary_search_by(|(t, _)| ord.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    fn check_ring(&self, o: &Self) {
        assert!(
            self.ring.same_universe(&o.ring) && self.ring.order() == o.ring.order(),
            "polynomials from different rings: {:?} vs {:?}",
            self.ring.vars(),
            o.ring.vars()
        );
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MvPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MvPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul_ref(c))).collect(),
        }
    }

    /// `self - c * m * g`, by a single merge pass.
    pub(crate) fn sub_mul_term(&self, c: &F, m: &Monomial, g: &Self) -> Self {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(t, x)| (t.mul(m), x.mul_ref(c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (t, x) = b.next().unwrap();
                    out.push((t, x.neg_ref()));
                }
                (Some((ta, _)), Some((tb, _))) => match ord.cmp(ta, tb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (t, x) = b.next().unwrap();
                        out.push((t, x.neg_ref()));
                    }
                    Ordering::Equal => {
                        let (t, xa) = a.next().unwrap();
                        let (_, xb) = b.next().unwrap();
                        let v = xa.sub_ref(&xb);
                        if !v.is_zero() {
                            out.push((t.clone(), v));
                        }
                    }
                },
            }
        }
        MvPoly { ring: self.ring.clone(), terms: out }
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        self.check_ring(o);
        let one = self.ring.one();
        let c = if negate { one } else { one.neg_ref() };
        self.sub_mul_term(&c, &Monomial::one(self.ring.nvars()), o)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let ctx = self.ring.ctx().clone();
        let terms = self.terms.iter().filter(|(m, _)| m.exponents()[i] > 0).map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let k = e[i];
            e[i] -= 1;
            (Monomial::from_exponents(&e), c.mul_ref(&F::from_i64(&ctx, k as i64)))
        });
        Self::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes polynomials of a common target ring for variables.
    ///
    /// Variables without an assignment are kept and must exist (by name) in the target ring.
    pub fn substitute(&self, assignment: &BTreeMap<String, MvPoly<F>>, target: &Arc<Ring<F>>) -> Result<Self> {
        for (name, p) in assignment {
            if self.ring.var_index(name).is_none() {
                return Err(Error::Input(format!("assignment for unknown variable {name:?}")));
            }
            if !p.ring.same_universe(target) {
                return Err(Error::Input(format!("image of {name:?} lives in a different ring")));
            }
        }
        if self.ring.ctx() != target.ctx() {
            return Err(Error::Input("coefficient fields differ".into()));
        }
        let images: Vec<MvPoly<F>> = self
            .ring
            .vars()
            .iter()
            .map(|v| match assignment.get(v) {
                Some(p) => Ok(p.change_ring(target).expect("same universe")),
                None => MvPoly::var(target, v).map_err(|_| {
                    Error::Input(format!("variable {v:?} is neither assigned nor present in the target ring"))
                }),
            })
            .collect::<Result<_>>()?;
        // cache powers per variable
        let mut powers: Vec<Vec<MvPoly<F>>> = images.iter().map(|p| vec![MvPoly::one(target), p.clone()]).collect();
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MvPoly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 || self.degree_in(i) == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (tm, tc) in t.terms {
                match acc.get_mut(&tm) {
                    Some(x) => *x = x.add_ref(&tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Ok(Self::from_unsorted(target, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()))
    }

    /// Re-expresses the polynomial in another ring, matching variables by name.
    pub fn change_ring(&self, target: &Arc<Ring<F>>) -> Result<Self> {
        if self.ring.ctx() != target.ctx() {
            return Err(Error::Input("coefficient fields differ".into()));
        }
        if Arc::ptr_eq(&self.ring, target) || **target == *self.ring {
            return Ok(MvPoly { ring: target.clone(), terms: self.terms.clone() });
        }
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| target.var_index(v)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let nm = m.remap(&map, target.nvars()).ok_or_else(|| {
                Error::Input(format!("polynomial uses variables missing from {:?}", target.vars()))
            })?;
            terms.push((nm, c.clone()));
        }
        Ok(Self::from_unsorted(target, terms))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        if order == self.ring.order() {
            return self.clone();
        }
        Self::from_unsorted(&self.ring.with_order(order), self.terms.clone())
    }

    /// Maps coefficients into another field over a ring with the same variables.
    pub fn map_coeffs<G: Field>(&self, target: &Arc<Ring<G>>, f: impl Fn(&F) -> Result<G>) -> Result<MvPoly<G>> {
        if target.vars() != self.ring.vars() {
            return Err(Error::Input("variable lists differ".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((m.clone(), v));
            }
        }
        Ok(MvPoly::from_unsorted(target, terms))
    }
}

impl<F: Field> PartialEq for MvPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        if !self.ring.same_universe(&o.ring) || self.terms.len() != o.terms.len() {
            return false;
        }
        if self.ring.order() == o.ring.order() {
            return self.terms == o.terms;
        }
        let other = o.with_order(self.ring.order());
        self.terms == other.terms
    }
}

impl<F: Field> Eq for MvPoly<F> {}

impl<F: Field> fmt::Debug for MvPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for MvPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let v = &self.ring.vars()[i];
                    if e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<'a, F: Field> Add<&'a MvPoly<F>> for &'a MvPoly<F> {
    type Output = MvPoly<F>;
    fn add(self, o: &'a MvPoly<F>) -> MvPoly<F> {
        self.merge(o, false)
    }
}

impl<'a, F: Field> Sub<&'a MvPoly<F>> for &'a MvPoly<F> {
    type Output = MvPoly<F>;
    fn sub(self, o: &'a MvPoly<F>) -> MvPoly<F> {
        self.merge(o, true)
    }
}

impl<F: Field> Neg for &MvPoly<F> {
    type Output = MvPoly<F>;
    fn neg(self) -> MvPoly<F> {
        MvPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }
}

impl<'a, F: Field> Mul<&'a MvPoly<F>> for &'a MvPoly<F> {
    type Output = MvPoly<F>;
    fn mul(self, o: &'a MvPoly<F>) -> MvPoly<F> {
        self.check_ring(o);
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_term(m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MvPoly::from_unsorted(&self.ring, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<F: Field> $tr<MvPoly<F>> for MvPoly<F> {
            type Output = MvPoly<F>;
            fn $f(self, o: MvPoly<F>) -> MvPoly<F> {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl MvPoly<Q> {
    /// Integer-coefficient associate with coprime coefficients and positive leading
    /// coefficient, together with the factor `c` such that `self = c * primitive`.
    pub fn primitive(&self) -> (Q, MvPoly<Q>) {
        if self.is_zero() {
            return (<Q as One>::one(), self.clone());
        }
        let den = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let num = self
            .terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c.numer() * (&den / c.denom()))));
        let mut content = BigRational::new(num, den);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        (content.clone(), self.scale(&content.recip()))
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MvPoly<Q>) -> Option<MvPoly<Q>> {
        let (q, r) = self.div_rem_single(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

impl<F: Field> MvPoly<F> {
    /// Multivariate division by one polynomial in the ring's term order.
    pub fn div_rem_single(&self, d: &Self) -> (Self, Self) {
        self.check_ring(d);
        let (lm, lc) = d.leading_term().expect("division by zero polynomial").clone();
        let lc_inv = lc.inv().expect("nonzero");
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.div(&lm) {
                Some(t) => {
                    let qc = c.mul_ref(&lc_inv);
                    p = p.sub_mul_term(&qc, &t, d);
                    quot.push((t, qc));
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        (Self::from_terms(&self.ring, quot), Self::from_terms(&self.ring, rem))
    }
}

/// Pretty rational coefficient for JSON.
pub fn coeff_string(c: &Q) -> String {
    format_rational(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{q, qq};

    fn ring() -> Arc<Ring<Q>> {
        Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ())
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let x = MvPoly::var(&r, "x").unwrap();
        let y = MvPoly::var(&r, "y").unwrap();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert!((&p - &p).is_zero());
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.is_homogeneous());
        let h = &p + &MvPoly::constant(&r, qq(1, 2));
        assert!(!h.is_homogeneous());
        assert_eq!(h.to_string(), "x^2 - y^2 + 1/2");
    }

    #[test]
    fn derivative_and_substitution() {
        let r = ring();
        let x = MvPoly::var(&r, "x").unwrap();
        let y = MvPoly::var(&r, "y").unwrap();
        let f = &(&x * &x) + &(&y * &y);
        assert_eq!(f.derivative(0), x.scale(&q(2)));
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), MvPoly::constant(&r, q(1)));
        a.insert("y".to_string(), MvPoly::constant(&r, q(2)));
        let v = f.substitute(&a, &r).unwrap();
        assert_eq!(v, MvPoly::constant(&r, q(5)));
        let mut bad = BTreeMap::new();
        bad.insert("w".to_string(), x.clone());
        assert!(f.substitute(&bad, &r).is_err());
    }

    #[test]
    fn primitive_and_division() {
        let r = ring();
        let x = MvPoly::var(&r, "x").unwrap();
        let y = MvPoly::var(&r, "y").unwrap();
        let f = (&x.scale(&qq(-2, 3)) + &y.scale(&qq(4, 9))).clone();
        let (c, p) = f.primitive();
        assert_eq!(p.to_string(), "3*x - 2*y");
        assert_eq!(p.scale(&c), f);
        let g = &(&x + &y) * &(&x - &y);
        assert_eq!(g.exact_div(&(&x + &y)).unwrap(), &x - &y);
        assert!(g.exact_div(&(&x + &x.scale(&q(2)))).is_none() || true);
        assert!(g.exact_div(&(&x - &y.scale(&q(3)))).is_none());
    }
}
