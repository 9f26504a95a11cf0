use std::cmp::Ordering;
use std::collections::VecDeque;
use std::sync::Arc;

use crate::exactalg::{Field, Monomial, MonomialOrder, MvPoly, Ring};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Full reduction of `f` modulo `basis` (all polynomials in the same ring).
pub fn normal_form<F: Field>(f: &MvPoly<F>, basis: &[MvPoly<F>]) -> MvPoly<F> {
    let ring = f.ring().clone();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    let mut p = f.clone();
    while let Some((m, c)) = p.leading_term().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let t = m.div(lm).unwrap();
                let k = c.div_ref(lc).unwrap();
                p = p.sub_mul_term(&k, &t, g);
            }
            None => {
                rem.push((m, c));
                let mut ts = p.into_terms();
                ts.remove(0);
                p = MvPoly::from_sorted_unchecked(&ring, ts);
            }
        }
    }
    MvPoly::from_sorted_unchecked(&ring, rem)
}

fn spoly<F: Field>(f: &MvPoly<F>, g: &MvPoly<F>, lcm: &Monomial) -> MvPoly<F> {
    let (lf, cf) = f.leading_term().unwrap();
    let (lg, cg) = g.leading_term().unwrap();
    let a = f.mul_term(&lcm.div(lf).unwrap(), &cf.inv().unwrap());
    a.sub_mul_term(&cg.inv().unwrap(), &lcm.div(lg).unwrap(), g)
}

struct State<F: Field> {
    polys: Vec<MvPoly<F>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> State<F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    // Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: MvPoly<F>, sugar: u32) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let lh = self.lm(hi).clone();

        let mk = |s: &Self, g: usize| {
            let lcm = s.lm(g).lcm(&lh);
            let sg = (s.sugar[g] + lcm.degree() - s.lm(g).degree()).max(sugar + lcm.degree() - lh.degree());
            Pair { i: g, j: hi, lcm, sugar: sg }
        };
        let cands: Vec<Pair> = (0..hi).filter(|&g| self.active[g]).map(|g| mk(self, g)).collect();

        // chain criterion among the new pairs, then the product criterion
        let mut queue: VecDeque<Pair> = cands.into();
        let mut d: Vec<(Pair, bool)> = Vec::new();
        while let Some(p) = queue.pop_front() {
            let coprime = self.lm(p.i).is_coprime(&lh);
            if coprime
                || (!queue.iter().any(|q| q.lcm.divides(&p.lcm))
                    && !d.iter().any(|(q, _)| q.lcm.divides(&p.lcm)))
            {
                d.push((p, coprime));
            }
        }
        let kept: Vec<Pair> = d.into_iter().filter(|(_, c)| !c).map(|(p, _)| p).collect();

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = polys[p.i].leading_monomial().unwrap();
            let lj = polys[p.j].leading_monomial().unwrap();
            !(lh.divides(&p.lcm) && li.lcm(&lh) != p.lcm && lj.lcm(&lh) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }
}

/// Reduced, monic Gröbner basis of the ideal generated by `gens` with respect to
/// `order`, sorted by increasing leading monomial.
pub fn groebner_basis<F: Field>(gens: &[MvPoly<F>], ring: &Arc<Ring<F>>) -> Vec<MvPoly<F>> {
    let ord = ring.order();
    let mut input: Vec<MvPoly<F>> = gens
        .iter()
        .map(|g| g.change_ring(ring).expect("generator in ring universe"))
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if input.is_empty() {
        return vec![];
    }
    input.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();
    let mut st = State { polys: vec![], sugar: vec![], active: vec![], pairs: vec![] };
    for g in input {
        let basis: Vec<MvPoly<F>> = active_polys(&st);
        let r = normal_form(&g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![MvPoly::one(ring)];
        }
        let s = g.total_degree().unwrap();
        st.update(r.monic(), s);
    }
    while !st.pairs.is_empty() {
        let k = select(&st.pairs, ord);
        let p = st.pairs.swap_remove(k);
        let s = spoly(&st.polys[p.i], &st.polys[p.j], &p.lcm);
        let basis = active_polys(&st);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![MvPoly::one(ring)];
        }
        st.update(r.monic(), p.sugar);
    }
    reduce_basis(active_polys(&st), ord)
}

fn select(pairs: &[Pair], ord: MonomialOrder) -> usize {
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        let c = p.sugar.cmp(&b.sugar).then_with(|| ord.cmp(&p.lcm, &b.lcm)).then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
        if c == Ordering::Less {
            best = k;
        }
    }
    best
}

fn active_polys<F: Field>(st: &State<F>) -> Vec<MvPoly<F>> {
    (0..st.polys.len()).filter(|&i| st.active[i]).map(|i| st.polys[i].clone()).collect()
}

/// Minimalize and interreduce a Gröbner basis.
pub fn reduce_basis<F: Field>(mut g: Vec<MvPoly<F>>, ord: MonomialOrder) -> Vec<MvPoly<F>> {
    g.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<MvPoly<F>> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lp = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_monomial().unwrap();
            j != i && lq.divides(lp) && (lq != lp || j < i)
        });
        if !redundant {
            minimal.push(p.monic());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MvPoly<F>> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        let (lm, lc) = minimal[i].leading_term().unwrap().clone();
        let tail = &minimal[i] - &MvPoly::monomial(minimal[i].ring(), lm.clone(), lc.clone());
        let red = normal_form(&tail, &others);
        out.push(&red + &MvPoly::monomial(minimal[i].ring(), lm, lc));
    }
    out.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner<F: Field>(basis: &[MvPoly<F>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
            if !normal_form(&spoly(&basis[i], &basis[j], &lcm), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reduced and autoreduced: monic, and no term of any element is divisible by
/// another element's leading monomial.
pub fn is_reduced<F: Field>(basis: &[MvPoly<F>]) -> bool {
    basis.iter().enumerate().all(|(i, p)| {
        p.leading_coeff().is_some_and(|c| c.is_one())
            && basis.iter().enumerate().all(|(j, q)| {
                i == j || p.terms().iter().all(|(m, _)| !q.leading_monomial().unwrap().divides(m))
            })
    })
}
