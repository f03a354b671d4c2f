//! The map `φ = u·Φ_e`: e-th roots, φ-compatible and φ-fixed ideals, and
//! the hash operation producing the largest φ-fixed ideal inside a given one.

use rustc_hash::FxHashMap as HashMap;

use thiserror::Error;

use crate::ffield::{Elem, GaloisField};
use crate::ideal::{Ideal, IdealError};
use crate::linalg::{self, SparseVec};
use crate::poly::{Monomial, Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartierError {
    #[error("the Frobenius exponent e must be at least 1")]
    ZeroExponent,
    #[error("p^e = {p}^{e} is too large")]
    Overflow { p: u32, e: u32 },
    #[error("u belongs to a different ring")]
    RingMismatch,
    #[error("hash iteration did not stabilize within {cap} steps")]
    IterationCap { cap: usize },
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// `φ = u·Φ_e` on `S = F_q[x_1..x_d]`.
#[derive(Clone, Debug)]
pub struct CartierMap {
    u: Polynomial,
    e: u32,
    pe: u32,
    de: u32,
}

/// e-th root of a polynomial: the ideal generated by its components
/// `g_α` in the decomposition `g = Σ g_α^{p^e} x^α`.
pub fn eth_root_poly(g: &Polynomial, e: u32) -> Ideal {
    let ring = g.ring();
    let k = ring.field();
    let pe = pow_checked(ring.characteristic(), e).expect("p^e overflows");
    let mut parts: HashMap<Monomial, Vec<(Monomial, Elem)>> = HashMap::default();
    for (m, c) in g.terms() {
        let (quot, rem) = m.split_frobenius(pe);
        parts.entry(rem).or_default().push((quot, k.inv_frobenius(*c, e)));
    }
    Ideal::new(ring, parts.into_values().map(|ts| ring.from_terms(ts)).collect::<Vec<_>>())
}

/// `I_e(J)`: sum of the e-th roots of the generators.
pub fn eth_root(j: &Ideal, e: u32) -> Ideal {
    let ring = j.ring();
    let gens: Vec<Polynomial> = j.gens().iter().flat_map(|g| eth_root_poly(g, e).gens().to_vec()).collect();
    Ideal::new(ring, gens)
}

fn accumulate(k: &GaloisField, acc: &mut HashMap<u32, Elem>, col: u32, c: Elem) {
    let e = acc.entry(col).or_insert(Elem::ZERO);
    *e = k.add(*e, c);
}

fn into_sparse(acc: HashMap<u32, Elem>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|t| t.0);
    v
}

fn pow_checked(p: u32, e: u32) -> Option<u32> {
    p.checked_pow(e).filter(|&x| x <= u16::MAX as u32 + 1)
}

/// Result of a hash computation together with its iteration count.
#[derive(Clone, Debug)]
pub struct HashOutcome {
    pub ideal: Ideal,
    pub iterations: usize,
}

impl CartierMap {
    pub fn new(u: Polynomial, e: u32) -> Result<CartierMap, CartierError> {
        if e == 0 {
            return Err(CartierError::ZeroExponent);
        }
        let p = u.ring().characteristic();
        let pe = pow_checked(p, e).ok_or(CartierError::Overflow { p, e })?;
        let de = if u.is_zero() { 0 } else { u.norm().div_ceil(pe - 1) };
        Ok(CartierMap { u, e, pe, de })
    }

    pub fn ring(&self) -> &Ring {
        self.u.ring()
    }

    pub fn u(&self) -> &Polynomial {
        &self.u
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn pe(&self) -> u32 {
        self.pe
    }

    /// Every φ-fixed ideal is generated by polynomials of norm at most this.
    pub fn de(&self) -> u32 {
        self.de
    }

    /// Dimension of the box `S_{D_e}`, which bounds every chain of
    /// φ-fixed ideals.
    pub fn box_dim(&self) -> usize {
        (self.de as usize + 1).saturating_pow(self.ring().nvars() as u32)
    }

    fn check(&self, j: &Ideal) -> Result<(), CartierError> {
        if j.ring() == self.ring() {
            Ok(())
        } else {
            Err(CartierError::RingMismatch)
        }
    }

    fn u_times(&self, j: &Ideal) -> Ideal {
        Ideal::new(j.ring(), j.gens().iter().map(|g| g * &self.u).collect::<Vec<_>>())
    }

    /// `φ(J) = I_e(uJ)`.
    pub fn apply(&self, j: &Ideal) -> Result<Ideal, CartierError> {
        self.check(j)?;
        Ok(eth_root(&self.u_times(j), self.e))
    }

    /// `φ(J) ⊆ J`.
    pub fn is_compatible(&self, j: &Ideal) -> Result<bool, CartierError> {
        Ok(j.contains(&self.apply(j)?)?)
    }

    /// `J ⊆ (J^[p^e] : u)`, tested generator by generator as `ug ∈ J^[p^e]`.
    pub fn is_compatible_by_colon(&self, j: &Ideal) -> Result<bool, CartierError> {
        self.check(j)?;
        let bracket = j.bracket_power(self.pe as u64)?;
        Ok(j.gens().iter().all(|g| bracket.contains_poly(&(g * &self.u))))
    }

    /// `φ(J) = J`.
    pub fn is_fixed(&self, j: &Ideal) -> Result<bool, CartierError> {
        Ok(self.apply(j)?.equals(j)?)
    }

    pub fn hash(&self, j: &Ideal) -> Result<Ideal, CartierError> {
        Ok(self.hash_with_stats(j)?.ideal)
    }

    /// `J^#`, the largest φ-fixed ideal contained in `J`.
    ///
    /// Each step keeps the polynomials `f` of the box `S_{D_e}` with
    /// `f ∈ J_i`, `uf ∈ J_i^[p^e]` and `f ∈ I_e(uJ_i)`, each a kernel
    /// condition on the coefficients of `f`.
    pub fn hash_with_stats(&self, j: &Ideal) -> Result<HashOutcome, CartierError> {
        self.check(j)?;
        let ring = self.ring();
        if self.u.is_zero() || j.is_zero() {
            return Ok(HashOutcome { ideal: Ideal::zero(ring), iterations: 0 });
        }
        let k = ring.field();
        let monos = ring.box_monomials(self.de);
        let u_roots: Vec<(Monomial, Elem)> =
            self.u.terms().iter().map(|(m, c)| (*m, k.inv_frobenius(*c, self.e))).collect();
        let cap = self.box_dim() + 1;
        let mut cur = j.clone();
        for step in 1..=cap {
            let next = Ideal::from_subspace(ring, self.hash_step(&cur, &monos, &u_roots));
            debug_assert!(cur.contains(&next)?, "hash sequence must decrease");
            if next == cur {
                return Ok(HashOutcome { ideal: next, iterations: step });
            }
            cur = next;
        }
        Err(CartierError::IterationCap { cap })
    }

    /// `uf ∈ J^[p^e]` iff every component `(uf)_α` lies in `J`. Components
    /// see the p^e-th roots of the coefficients of `f`, so that kernel is
    /// taken in root coordinates and raised back by Frobenius.
    fn hash_step(&self, cur: &Ideal, monos: &[Monomial], u_roots: &[(Monomial, Elem)]) -> Vec<Polynomial> {
        let ring = self.ring();
        let k = ring.field();
        let nf_j = cur.normal_form();
        let mut nf_cache: HashMap<Monomial, Polynomial> = HashMap::default();

        let mut cols: HashMap<(Monomial, Monomial), u32> = HashMap::default();
        let images = monos
            .iter()
            .map(|m| {
                let mut acc = HashMap::default();
                for (t, c) in u_roots {
                    let (gamma, alpha) = t.mul(m).split_frobenius(self.pe);
                    let r = nf_cache.entry(gamma).or_insert_with(|| nf_j.nf(&ring.monomial(gamma)));
                    for (mm, cc) in r.terms() {
                        let n = cols.len() as u32;
                        let col = *cols.entry((alpha, *mm)).or_insert(n);
                        accumulate(k, &mut acc, col, k.mul(*c, *cc));
                    }
                }
                into_sparse(acc)
            })
            .collect();
        let basis: Vec<SparseVec> = linalg::kernel(k, images)
            .into_iter()
            .map(|v| v.into_iter().map(|(i, c)| (i, k.frobenius(c, self.e))).collect())
            .collect();
        if basis.is_empty() {
            return Vec::new();
        }

        let nf_root = eth_root(&self.u_times(cur), self.e).normal_form();
        let mut root_cache: HashMap<Monomial, Polynomial> = HashMap::default();
        let mut cols: HashMap<(bool, Monomial), u32> = HashMap::default();
        let images = basis
            .iter()
            .map(|v| {
                let mut acc = HashMap::default();
                for &(i, c) in v {
                    let m = monos[i as usize];
                    let r = nf_cache.entry(m).or_insert_with(|| nf_j.nf(&ring.monomial(m)));
                    for (mm, cc) in r.terms() {
                        let n = cols.len() as u32;
                        let col = *cols.entry((false, *mm)).or_insert(n);
                        accumulate(k, &mut acc, col, k.mul(c, *cc));
                    }
                    let r = root_cache.entry(m).or_insert_with(|| nf_root.nf(&ring.monomial(m)));
                    for (mm, cc) in r.terms() {
                        let n = cols.len() as u32;
                        let col = *cols.entry((true, *mm)).or_insert(n);
                        accumulate(k, &mut acc, col, k.mul(c, *cc));
                    }
                }
                into_sparse(acc)
            })
            .collect();
        linalg::kernel(k, images)
            .into_iter()
            .map(|w| {
                let mut acc = HashMap::default();
                for (b, c) in w {
                    for &(i, d) in &basis[b as usize] {
                        accumulate(k, &mut acc, i, k.mul(c, d));
                    }
                }
                ring.from_terms(into_sparse(acc).into_iter().map(|(i, c)| (monos[i as usize], c)))
            })
            .collect()
    }

    /// The hash operation computed literally with intersections, colon and
    /// truncation. Much slower; kept as an independent reference.
    pub fn hash_reference(&self, j: &Ideal) -> Result<Ideal, CartierError> {
        self.check(j)?;
        if self.u.is_zero() {
            return Ok(Ideal::zero(self.ring()));
        }
        let cap = self.box_dim() + 1;
        let mut cur = j.clone();
        for _ in 0..cap {
            let colon = cur.bracket_power(self.pe as u64)?.colon(&self.u)?;
            let root = self.apply(&cur)?;
            let next = cur.intersect(&colon)?.intersect(&root)?.truncate(self.de);
            if next == cur {
                return Ok(next);
            }
            cur = next;
        }
        Err(CartierError::IterationCap { cap })
    }
}
