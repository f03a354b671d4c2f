//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of Buchberger's two criteria.

use std::cmp::Ordering;

use crate::ffield::Elem;
use crate::poly::{Monomial, Polynomial, Ring, MAX_VARS};

#[inline]
fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for i in 0..MAX_VARS {
        let e = m.exp(i);
        if e > 0 {
            mask |= 1 << i;
        }
        if e > 1 {
            mask |= 1 << (i + 16);
        }
    }
    mask
}

/// A reducer: a monic polynomial with cached leading data.
#[derive(Clone)]
pub(crate) struct Reducer {
    lm: Monomial,
    mask: u32,
    poly: Polynomial,
}

impl Reducer {
    pub(crate) fn new(poly: Polynomial) -> Reducer {
        let poly = poly.monic();
        let lm = *poly.leading_monomial().expect("zero reducer");
        Reducer { lm, mask: divmask(&lm), poly }
    }
}

fn find_reducer<'a>(m: &Monomial, reducers: impl Iterator<Item = &'a Reducer>) -> Option<&'a Reducer> {
    let mask = divmask(m);
    reducers.into_iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// `a - c*t*b` on descending term slices.
fn merge_sub(ring: &Ring, a: &[(Monomial, Elem)], c: Elem, t: &Monomial, b: &[(Monomial, Elem)], out: &mut Vec<(Monomial, Elem)>) {
    let k = ring.field();
    let nc = k.neg(c);
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(t);
        match ring.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, k.mul(nc, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = k.add(a[i].1, k.mul(nc, b[j].1));
                if !s.is_zero() {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for &(m, cb) in &b[j..] {
        out.push((m.mul(t), k.mul(nc, cb)));
    }
}

/// Full reduction of `f` by `reducers`. Returns the remainder, whose
/// terms are all irreducible.
pub(crate) fn reduce<'a, I>(f: &Polynomial, reducers: I) -> Polynomial
where
    I: Iterator<Item = &'a Reducer> + Clone,
{
    let ring = f.ring();
    let mut work: Vec<(Monomial, Elem)> = f.terms().to_vec();
    let mut buf = Vec::new();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < work.len() {
        let (m, c) = work[start];
        match find_reducer(&m, reducers.clone()) {
            Some(r) => {
                let t = r.lm.quotient(&m).unwrap();
                // the leading terms cancel; skip them in the merge
                merge_sub(ring, &work[start + 1..], c, &t, &r.poly.terms()[1..], &mut buf);
                std::mem::swap(&mut work, &mut buf);
                start = 0;
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(ring, rem)
}

struct Entry {
    reducer: Reducer,
    sugar: u32,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder {
    ring: Ring,
    entries: Vec<Entry>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn active_reducers(&self) -> impl Iterator<Item = &Reducer> + Clone {
        self.active.iter().map(move |&i| &self.entries[i].reducer)
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce(f, self.active_reducers())
    }

    fn spoly(&self, p: &Pair) -> Polynomial {
        let a = &self.entries[p.i].reducer;
        let b = &self.entries[p.j].reducer;
        let ta = a.lm.quotient(&p.lcm).unwrap();
        let tb = b.lm.quotient(&p.lcm).unwrap();
        let k = self.ring.field();
        a.poly.mul_term(Elem::ONE, &ta).add_scaled(k.neg(Elem::ONE), &tb, &b.poly)
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let s = |k: usize| self.entries[k].sugar + lcm.degree() - self.entries[k].reducer.lm.degree();
        s(i).max(s(j))
    }

    /// Adds a new nonzero, fully reduced polynomial and updates the pair
    /// set (Gebauer–Möller).
    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hidx = self.entries.len();
        self.entries.push(Entry { reducer: Reducer::new(h), sugar });
        let hlm = self.entries[hidx].reducer.lm;

        let cands: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, hlm.lcm(&self.entries[g].reducer.lm))).collect();
        let mut keep = vec![false; cands.len()];
        for (a, (g1, l1)) in cands.iter().enumerate() {
            let coprime = hlm.is_coprime(&self.entries[*g1].reducer.lm);
            // pairs still in C are those after `a`; pairs in D are the kept ones before `a`
            let dominated = cands.iter().enumerate().any(|(b, (_, l2))| {
                b != a && l2.divides(l1) && (b > a || keep[b])
            });
            keep[a] = coprime || !dominated;
        }
        let new_pairs: Vec<Pair> = cands
            .iter()
            .zip(&keep)
            .filter(|(&(g, _), &k)| k && !hlm.is_coprime(&self.entries[g].reducer.lm))
            .map(|(&(g, l), _)| Pair { i: g, j: hidx, lcm: l, sugar: self.pair_sugar(g, hidx, &l) })
            .collect();

        let entries = &self.entries;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let l1 = entries[p.i].reducer.lm.lcm(&hlm);
            let l2 = entries[p.j].reducer.lm.lcm(&hlm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(new_pairs);

        self.active.retain(|&g| !hlm.divides(&entries[g].reducer.lm));
        self.active.push(hidx);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.sugar.cmp(&pb.sugar).then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
            })
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }

    fn has_unit(&self) -> bool {
        self.active.iter().any(|&i| self.entries[i].reducer.lm.is_one())
    }
}

/// Reduced Gröbner basis of the ideal generated by `known ∪ new`, where
/// `known` is already a reduced Gröbner basis. Output is monic and sorted
/// by increasing leading monomial.
pub(crate) fn extend_groebner(ring: &Ring, known: &[Polynomial], new: &[Polynomial]) -> Vec<Polynomial> {
    let mut b = Builder { ring: ring.clone(), entries: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in known {
        let idx = b.entries.len();
        b.entries.push(Entry { reducer: Reducer::new(g.clone()), sugar: g.total_degree() });
        b.active.push(idx);
    }
    let mut inputs: Vec<&Polynomial> = new.iter().filter(|f| !f.is_zero()).collect();
    inputs.sort_by(|a, b| {
        a.total_degree().cmp(&b.total_degree()).then_with(|| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });
    for f in inputs {
        let h = b.reduce(f);
        if !h.is_zero() {
            b.insert(h, f.total_degree());
            if b.has_unit() {
                return vec![ring.one()];
            }
        }
    }
    while let Some(p) = b.next_pair() {
        let s = b.spoly(&p);
        let h = b.reduce(&s);
        if !h.is_zero() {
            b.insert(h, p.sugar);
            if b.has_unit() {
                return vec![ring.one()];
            }
        }
    }
    // interreduce the minimal basis
    let minimal: Vec<Reducer> = b.active.iter().map(|&i| b.entries[i].reducer.clone()).collect();
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others = minimal.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, r)| r);
            reduce(&minimal[i].poly, others).monic()
        })
        .collect();
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}

pub(crate) fn groebner(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    extend_groebner(ring, &[], gens)
}
