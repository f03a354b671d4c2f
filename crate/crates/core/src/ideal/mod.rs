//! Ideals of `F_q[x_1..x_d]` and the operations the hash construction and
//! the enumeration consume.
//!
//! An [`Ideal`] carries the generators it was built from and lazily caches
//! its reduced Gröbner basis for the ring's order, which serves as the
//! canonical form for equality and hashing.

pub(crate) mod groebner;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use thiserror::Error;

use crate::ffield::Elem;
use crate::linalg::{self, SparseVec};
use crate::poly::{Monomial, Polynomial, Ring};
use groebner::{extend_groebner, groebner, reduce, Reducer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideals belong to different rings")]
    RingMismatch,
    #[error("{0} is not a positive power of the characteristic {1}")]
    NotPowerOfP(u64, u32),
    #[error("ideal is not contained in the homogeneous maximal ideal")]
    NotInMaximal,
    #[error("the zero ideal has no minimal generators")]
    ZeroIdeal,
}

/// Canonical identity of an ideal: its reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealKey(Vec<Vec<(Monomial, u32)>>);

pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

/// A basis of the space `{f in I : norm(f) <= l}`.
#[derive(Clone, Debug)]
pub struct VectorSpaceSlice {
    pub l: u32,
    pub basis: Vec<Polynomial>,
}

impl VectorSpaceSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl Ideal {
    /// The ideal generated by `gens`; zero generators are dropped.
    ///
    /// Panics if a generator lives in a different ring.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        assert!(gens.iter().all(|g| g.ring() == ring), "generator from a different ring");
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_groebner(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_groebner(ring, vec![ring.one()])
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        let mut vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        vars.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Ideal::from_groebner(ring, vars)
    }

    pub fn principal(f: Polynomial) -> Ideal {
        let ring = f.ring().clone();
        let gb = if f.is_zero() { Vec::new() } else { vec![f.monic()] };
        Ideal::from_groebner(&ring, gb)
    }

    /// Parses each generator in the given ring.
    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal, crate::poly::PolyError> {
        let gens = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(ring, gens))
    }

    /// Trusts `gb` to be the reduced Gröbner basis, sorted by increasing
    /// leading monomial.
    pub(crate) fn from_groebner(ring: &Ring, gb: Vec<Polynomial>) -> Ideal {
        let gb_cell = OnceLock::new();
        let _ = gb_cell.set(gb.clone());
        Ideal { ring: ring.clone(), gens: gb, gb: gb_cell }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis for the ring's order, computed once.
    pub fn groebner(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner(&self.ring, &self.gens))
    }

    fn reducers(&self) -> Vec<Reducer> {
        self.groebner().iter().cloned().map(Reducer::new).collect()
    }

    pub(crate) fn normal_form(&self) -> NormalForm {
        NormalForm { reducers: self.reducers() }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().first().is_some_and(|g| g.is_unit())
    }

    /// Whether every generator vanishes at the origin.
    pub fn in_maximal(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_zero())
    }

    pub fn key(&self) -> IdealKey {
        IdealKey(self.groebner().iter().map(|g| g.terms().iter().map(|(m, c)| (*m, c.code())).collect()).collect())
    }

    /// Normal form of `f` with respect to the reduced Gröbner basis.
    pub fn nf(&self, f: &Polynomial) -> Polynomial {
        assert!(f.ring() == &self.ring, "polynomial from a different ring");
        let rs = self.reducers();
        reduce(f, rs.iter())
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.nf(f).is_zero()
    }

    fn check_ring(&self, other: &Ideal) -> Result<(), IdealError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(IdealError::RingMismatch)
        }
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool, IdealError> {
        self.check_ring(other)?;
        let rs = self.reducers();
        Ok(other.gens.iter().all(|g| reduce(g, rs.iter()).is_zero()))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool, IdealError> {
        self.check_ring(other)?;
        Ok(self.groebner() == other.groebner())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned();
        let out = Ideal::new(&self.ring, gens);
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(extend_groebner(&self.ring, gb, &other.gens));
        }
        Ok(out)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let gens = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b));
        Ok(Ideal::new(&self.ring, gens.collect::<Vec<_>>()))
    }

    /// `m * self` with `m` the ideal of the variables.
    pub fn times_maximal(&self) -> Ideal {
        self.product(&Ideal::maximal(&self.ring)).unwrap()
    }

    /// `self ∩ other`, by eliminating `t` from `t*self + (1 - t)*other`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ext = self.ring.elimination_ring();
        let t = ext.var(0);
        let one_minus_t = &ext.one() - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(&t * &g.shift_into(&ext, 1));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.shift_into(&ext, 1));
        }
        let gb = groebner(&ext, &gens);
        let kept = gb.iter().filter(|g| g.support().all(|m| m.exp(0) == 0)).map(|g| g.unshift_into(&self.ring, 1));
        Ok(Ideal::new(&self.ring, kept.collect::<Vec<_>>()))
    }

    /// `(self : u) = {a : a*u in self}`; the unit ideal when `u = 0`.
    pub fn colon(&self, u: &Polynomial) -> Result<Ideal, IdealError> {
        if u.ring() != &self.ring {
            return Err(IdealError::RingMismatch);
        }
        if u.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersect(&Ideal::principal(u.clone()))?;
        let gens = meet.gens.iter().map(|g| g.div_exact(u).expect("intersection with <u> is divisible by u"));
        Ok(Ideal::new(&self.ring, gens.collect::<Vec<_>>()))
    }

    /// Frobenius power `I^[pe]`, generated by the `pe`-th powers of the
    /// generators.
    pub fn bracket_power(&self, pe: u64) -> Result<Ideal, IdealError> {
        let p = self.ring.characteristic();
        let e = exponent_of(pe, p).ok_or(IdealError::NotPowerOfP(pe, p))?;
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.frobenius_power(e)).collect();
        let out = Ideal::new(&self.ring, gens);
        // Frobenius maps a reduced Gröbner basis to a reduced Gröbner basis
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.iter().map(|g| g.frobenius_power(e)).collect());
        }
        Ok(out)
    }

    /// Generators whose images form a basis of `I / mI`, found by dropping
    /// every generator that lies in `mI` plus the ones still kept.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>, IdealError> {
        if self.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        if !self.in_maximal() {
            return Err(IdealError::NotInMaximal);
        }
        let m_i = self.times_maximal();
        let base = m_i.groebner().to_vec();
        let mut chosen: Vec<Polynomial> = self.gens.clone();
        let mut i = 0;
        while i < chosen.len() {
            let others: Vec<Polynomial> = chosen.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let gb = extend_groebner(&self.ring, &base, &others);
            let rs: Vec<Reducer> = gb.into_iter().map(Reducer::new).collect();
            if reduce(&chosen[i], rs.iter()).is_zero() {
                chosen.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(chosen)
    }

    /// A basis of `{f in I : norm(f) <= l}`, as the kernel of
    /// `f -> nf(f, I)` on the monomial box `S_l`.
    pub fn slice(&self, l: u32) -> VectorSpaceSlice {
        let monos = self.ring.box_monomials(l);
        let rs = self.reducers();
        let mut cols = ColumnIndex::default();
        let images: Vec<SparseVec> =
            monos.iter().map(|m| cols.sparse(&reduce(&self.ring.monomial(*m), rs.iter()))).collect();
        let k = self.ring.field();
        let ker = linalg::kernel(k, images);
        let basis = ker.into_iter().map(|v| self.ring.from_terms(v.into_iter().map(|(i, c)| (monos[i as usize], c))));
        VectorSpaceSlice { l, basis: linalg::echelon(&self.ring, basis) }
    }

    /// `(S_l ∩ I) S`.
    pub fn truncate(&self, l: u32) -> Ideal {
        Ideal::from_subspace(&self.ring, self.slice(l).basis)
    }

    /// The ideal generated by a finite-dimensional space of polynomials.
    /// Generators are picked greedily by increasing leading monomial,
    /// skipping those already in the ideal of the previous picks.
    pub fn from_subspace(ring: &Ring, space: Vec<Polynomial>) -> Ideal {
        let mut basis = linalg::echelon(ring, space);
        basis.reverse();
        let mut gens = Vec::new();
        let mut gb: Vec<Polynomial> = Vec::new();
        let mut rs: Vec<Reducer> = Vec::new();
        for w in basis {
            if reduce(&w, rs.iter()).is_zero() {
                continue;
            }
            gb = extend_groebner(ring, &gb, std::slice::from_ref(&w));
            rs = gb.iter().cloned().map(Reducer::new).collect();
            gens.push(w);
            if gb.first().is_some_and(|g| g.is_unit()) {
                break;
            }
        }
        let out = Ideal::new(ring, gens);
        let _ = out.gb.set(gb);
        out
    }

    /// Reduced Gröbner basis elements printed and sorted as strings.
    pub fn canonical_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.groebner().iter().map(|g| g.to_string()).collect();
        v.sort();
        v
    }
}

fn exponent_of(pe: u64, p: u32) -> Option<u32> {
    let p = p as u64;
    let mut x = p;
    let mut e = 1;
    while x < pe {
        x = x.checked_mul(p)?;
        e += 1;
    }
    (x == pe).then_some(e)
}

/// Normal form map of one ideal, reusable across many reductions.
pub(crate) struct NormalForm {
    reducers: Vec<Reducer>,
}

impl NormalForm {
    pub(crate) fn nf(&self, f: &Polynomial) -> Polynomial {
        reduce(f, self.reducers.iter())
    }
}

/// Assigns column indices to monomials on first sight.
#[derive(Default)]
pub(crate) struct ColumnIndex {
    map: HashMap<Monomial, u32>,
}

impl ColumnIndex {
    pub(crate) fn col(&mut self, m: &Monomial) -> u32 {
        let n = self.map.len() as u32;
        *self.map.entry(*m).or_insert(n)
    }

    pub(crate) fn sparse(&mut self, f: &Polynomial) -> SparseVec {
        self.sparse_offset(f, 0)
    }

    /// Column indices are tagged by `tag` so that several conditions can
    /// share one index without collisions.
    pub(crate) fn sparse_offset(&mut self, f: &Polynomial, tag: u32) -> SparseVec {
        let mut v: Vec<(u32, Elem)> = f.terms().iter().map(|(m, c)| (self.col(m) * 4 + tag, *c)).collect();
        v.sort_unstable_by_key(|t| t.0);
        v
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groebner() == other.groebner()
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.canonical_strings().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
