use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::buchberger::{groebner_basis, normal_form};
use super::hilbert::{hilbert_from_leading, HilbertData};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Fp, Modulus, MonomialOrder, MvPoly, Ring, Q};

type Basis<F> = Arc<Vec<MvPoly<F>>>;

/// Generators plus lazily computed, write-once Gröbner bases per term order.
pub struct IdealHandle<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<MvPoly<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<OnceLock<Basis<F>>>>>,
    hilbert: OnceLock<Result<HilbertData>>,
}

impl<F: Field> Clone for IdealHandle<F> {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().unwrap().clone();
        let hilbert = OnceLock::new();
        if let Some(h) = self.hilbert.get() {
            let _ = hilbert.set(h.clone());
        }
        IdealHandle { ring: self.ring.clone(), gens: self.gens.clone(), cache: Mutex::new(cache), hilbert }
    }
}

impl<F: Field> std::fmt::Debug for IdealHandle<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdealHandle").field("vars", &self.ring.vars()).field("gens", &self.gens).finish()
    }
}

impl<F: Field> IdealHandle<F> {
    /// All generators are moved into `ring` (matched by variable name).
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<MvPoly<F>>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .map(|g| {
                if !g.ring().same_universe(ring) {
                    return Err(Error::Input(format!(
                        "generator over {:?} does not live in {:?}",
                        g.ring().vars(),
                        ring.vars()
                    )));
                }
                g.change_ring(ring)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle {
            ring: ring.clone(),
            gens,
            cache: Mutex::new(HashMap::new()),
            hilbert: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[MvPoly<F>] {
        &self.gens
    }

    /// Reduced Gröbner basis for `order`; computed at most once per order even
    /// under concurrent callers.
    pub fn basis_for(&self, order: MonomialOrder) -> Basis<F> {
        let cell = {
            let mut c = self.cache.lock().unwrap();
            c.entry(order).or_insert_with(|| Arc::new(OnceLock::new())).clone()
        };
        cell.get_or_init(|| {
            let r = self.ring.with_order(order);
            Arc::new(groebner_basis(&self.gens, &r))
        })
        .clone()
    }

    /// Basis in the ring's own order.
    pub fn basis(&self) -> Basis<F> {
        self.basis_for(self.ring.order())
    }

    /// Seed the cache with a basis obtained elsewhere (e.g. a persisted one).
    pub fn seed_basis(&self, order: MonomialOrder, basis: Vec<MvPoly<F>>) {
        let cell = {
            let mut c = self.cache.lock().unwrap();
            c.entry(order).or_insert_with(|| Arc::new(OnceLock::new())).clone()
        };
        let _ = cell.set(Arc::new(basis));
    }

    pub fn is_cached(&self, order: MonomialOrder) -> bool {
        self.cache.lock().unwrap().get(&order).is_some_and(|c| c.get().is_some())
    }

    pub fn normal_form(&self, f: &MvPoly<F>) -> Result<MvPoly<F>> {
        if !f.ring().same_universe(&self.ring) {
            return Err(Error::Input("polynomial from a different variable universe".into()));
        }
        let b = self.basis();
        let f = f.change_ring(&self.ring)?;
        Ok(normal_form(&f, &b))
    }

    pub fn contains(&self, f: &MvPoly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.basis().first().is_some_and(|g| g.is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis().is_empty()
    }

    /// Equality of ideals via the reduced bases in the ring's order.
    pub fn equals(&self, o: &IdealHandle<F>) -> bool {
        self.ring.same_universe(&o.ring) && *self.basis() == *o.basis_for(self.ring.order())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn with_gens(&self, more: &[MvPoly<F>]) -> Result<IdealHandle<F>> {
        let mut g = self.gens.clone();
        g.extend(more.iter().cloned());
        IdealHandle::new(&self.ring, g)
    }

    pub fn sum(&self, o: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.with_gens(&o.gens)
    }

    pub fn hilbert(&self) -> Result<HilbertData> {
        self.hilbert
            .get_or_init(|| {
                if !self.is_homogeneous() {
                    return Err(Error::Input("Hilbert data requires a homogeneous ideal".into()));
                }
                let b = self.basis_for(MonomialOrder::GrevLex);
                let lead: Vec<_> = b.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
                Ok(hilbert_from_leading(&lead, self.ring.nvars()))
            })
            .clone()
    }

    /// True iff the projective scheme is empty (Hilbert polynomial identically zero).
    pub fn is_projectively_empty(&self) -> Result<bool> {
        Ok(self.hilbert()?.is_empty())
    }

    // Ring with one extra variable in front and a block order eliminating it.
    fn aux_ring(&self, name: &str) -> Arc<Ring<F>> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.ring.vars().iter().cloned());
        Ring::new(&vars, MonomialOrder::Block(1), self.ring.ctx().clone())
    }

    fn aux_name(&self) -> String {
        let mut t = "_t".to_string();
        while self.ring.var_index(&t).is_some() {
            t.push('_');
        }
        t
    }

    fn lift(&self, p: &MvPoly<F>, r: &Arc<Ring<F>>) -> MvPoly<F> {
        p.change_ring(r).expect("sub-universe")
    }

    /// Drop elements involving the first variable of an aux ring and map back.
    fn project(&self, basis: &[MvPoly<F>]) -> Vec<MvPoly<F>> {
        basis
            .iter()
            .filter(|g| g.degree_in(0) == 0)
            .map(|g| g.change_ring(&self.ring).expect("no aux variable"))
            .collect()
    }

    /// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
    pub fn intersect(&self, o: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_universe(o)?;
        let t = self.aux_name();
        let r = self.aux_ring(&t);
        let tv = MvPoly::var(&r, &t)?;
        let one_minus = &MvPoly::one(&r) - &tv;
        let mut gens: Vec<MvPoly<F>> = self.gens.iter().map(|g| &tv * &self.lift(g, &r)).collect();
        gens.extend(o.gens.iter().map(|g| &one_minus * &self.lift(g, &r)));
        let b = groebner_basis(&gens, &r);
        IdealHandle::new(&self.ring, self.project(&b))
    }

    fn check_universe(&self, o: &IdealHandle<F>) -> Result<()> {
        if self.ring.same_universe(&o.ring) {
            Ok(())
        } else {
            Err(Error::Input("ideals over different variable universes".into()))
        }
    }

    /// `I : <f>`.
    pub fn quotient_by(&self, f: &MvPoly<F>) -> Result<IdealHandle<F>> {
        let f = f.change_ring(&self.ring)?;
        if f.is_zero() {
            return IdealHandle::new(&self.ring, vec![MvPoly::one(&self.ring)]);
        }
        let inter = self.intersect(&IdealHandle::new(&self.ring, vec![f.clone()])?)?;
        let gens = inter
            .basis()
            .iter()
            .map(|g| {
                let (q, r) = g.div_rem_single(&f);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        IdealHandle::new(&self.ring, gens)
    }

    /// `I : J`.
    pub fn quotient(&self, j: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_universe(j)?;
        let mut acc: Option<IdealHandle<F>> = None;
        for g in j.gens.iter().filter(|g| !g.is_zero()) {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        match acc {
            Some(a) => Ok(a.reduced()),
            None => IdealHandle::new(&self.ring, vec![MvPoly::one(&self.ring)]),
        }
    }

    /// `I : J^∞` by iterated quotients until the reduced bases stabilize.
    pub fn saturate(&self, j: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        let mut cur = self.reduced();
        loop {
            let next = cur.quotient(j)?;
            if next.equals(&cur) {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// `I : J^∞` as `∩_g (I + <1 - t g>) ∩ k[x]`; an independent cross-check of [`saturate`](Self::saturate).
    pub fn saturate_aux(&self, j: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_universe(j)?;
        let t = self.aux_name();
        let r = self.aux_ring(&t);
        let tv = MvPoly::var(&r, &t)?;
        let mut acc: Option<IdealHandle<F>> = None;
        for g in j.gens.iter().filter(|g| !g.is_zero()) {
            let mut gens: Vec<MvPoly<F>> = self.gens.iter().map(|p| self.lift(p, &r)).collect();
            gens.push(&MvPoly::one(&r) - &(&tv * &self.lift(g, &r)));
            let b = groebner_basis(&gens, &r);
            let s = IdealHandle::new(&self.ring, self.project(&b))?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        match acc {
            Some(a) => Ok(a.reduced()),
            None => IdealHandle::new(&self.ring, vec![MvPoly::one(&self.ring)]),
        }
    }

    /// Generators of `I ∩ k[remaining variables]`, expressed in the original ring.
    pub fn eliminate(&self, vars: &[&str]) -> Result<IdealHandle<F>> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        for v in vars {
            if self.ring.var_index(v).is_none() {
                return Err(Error::Input(format!("cannot eliminate unknown variable {v:?}")));
            }
        }
        let mut order: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        order.extend(self.ring.vars().iter().filter(|v| !vars.contains(&v.as_str())).cloned());
        let r = Ring::new(&order, MonomialOrder::Block(vars.len()), self.ring.ctx().clone());
        let gens: Vec<MvPoly<F>> = self.gens.iter().map(|g| g.change_ring(&r)).collect::<Result<_>>()?;
        let b = groebner_basis(&gens, &r);
        let kept = b
            .iter()
            .filter(|g| (0..vars.len()).all(|i| g.degree_in(i) == 0))
            .map(|g| g.change_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealHandle::new(&self.ring, kept)?.reduced())
    }

    /// Same ideal with the reduced basis as generators.
    pub fn reduced(&self) -> IdealHandle<F> {
        let b = self.basis();
        let out = IdealHandle::new(&self.ring, b.to_vec()).expect("same ring");
        out.seed_basis(self.ring.order(), b.to_vec());
        out
    }

    /// Irrelevant ideal `<x_0, ..., x_{n-1}>`.
    pub fn irrelevant(ring: &Arc<Ring<F>>) -> IdealHandle<F> {
        let gens = (0..ring.nvars()).map(|i| MvPoly::var_at(ring, i)).collect();
        IdealHandle::new(ring, gens).expect("same ring")
    }
}

impl IdealHandle<Q> {
    /// Reduction modulo `p`; fails with [`Error::BadPrime`] if a denominator vanishes.
    pub fn mod_p(&self, m: Modulus) -> Result<IdealHandle<Fp>> {
        let r = Ring::<Fp>::new(self.ring.vars(), self.ring.order(), m);
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_coeffs(&r, |c| Fp::from_rational(&m, c)))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(&r, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn ideal(r: &Arc<Ring<Q>>, gens: &[&str]) -> IdealHandle<Q> {
        IdealHandle::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn quotient_and_saturation() {
        let r = Ring::new(&["x", "y"], MonomialOrder::GrevLex, ());
        let i = ideal(&r, &["x*y"]);
        let x = ideal(&r, &["x"]);
        assert!(i.quotient(&x).unwrap().equals(&ideal(&r, &["y"])));
        let i2 = ideal(&r, &["x^2*y"]);
        let s = i2.saturate(&x).unwrap();
        assert!(s.equals(&ideal(&r, &["y"])));
        assert!(s.equals(&i2.saturate_aux(&x).unwrap()));
    }

    #[test]
    fn elimination() {
        let r = Ring::new(&["t", "x", "y"], MonomialOrder::GrevLex, ());
        let i = ideal(&r, &["x - t", "y - t^2"]);
        let e = i.eliminate(&["t"]).unwrap();
        assert!(e.equals(&ideal(&r, &["y - x^2"])));
        assert!(i.eliminate(&[]).unwrap().equals(&i));
    }

    #[test]
    fn hilbert_and_emptiness() {
        let r = Ring::new(&["u0", "u1", "u2", "u3"], MonomialOrder::GrevLex, ());
        assert!(IdealHandle::irrelevant(&r).is_projectively_empty().unwrap());
        assert!(!ideal(&r, &["u0"]).is_projectively_empty().unwrap());
        let z = IdealHandle::new(&r, vec![]).unwrap().hilbert().unwrap();
        assert_eq!((z.dim, z.degree_i64()), (3, 1));
        assert!(ideal(&r, &["u0 + 1"]).hilbert().is_err());
    }
}
