//! Sparse exact linear algebra over `F_q`.

use rustc_hash::FxHashMap as HashMap;

use crate::ffield::{Elem, GaloisField};
use crate::poly::{Monomial, Polynomial, Ring};

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(u32, Elem)>;

/// `a + c*b`.
pub fn axpy(k: &GaloisField, a: &[(u32, Elem)], c: Elem, b: &[(u32, Elem)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = k.mul(c, b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = k.add(a[i].1, k.mul(c, b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(k: &GaloisField, v: &mut [(u32, Elem)], c: Elem) {
    for (_, x) in v.iter_mut() {
        *x = k.mul(*x, c);
    }
}

/// Basis of the kernel of the linear map sending the `i`-th unit vector to
/// `images[i]`. Kernel vectors are returned as sparse combinations of
/// domain indices.
pub fn kernel(k: &GaloisField, images: Vec<SparseVec>) -> Vec<SparseVec> {
    // pivot column -> (image row normalized at pivot, combination)
    let mut pivots: HashMap<u32, (SparseVec, SparseVec)> = HashMap::default();
    let mut out = Vec::new();
    for (i, mut row) in images.into_iter().enumerate() {
        let mut combo: SparseVec = vec![(i as u32, Elem::ONE)];
        loop {
            let Some(&(col, c)) = row.first() else {
                out.push(combo);
                break;
            };
            match pivots.get(&col) {
                Some((prow, pcombo)) => {
                    let nc = k.neg(c);
                    row = axpy(k, &row, nc, prow);
                    combo = axpy(k, &combo, nc, pcombo);
                }
                None => {
                    let inv = k.inv(c).unwrap();
                    scale(k, &mut row, inv);
                    scale(k, &mut combo, inv);
                    pivots.insert(col, (row, combo));
                    break;
                }
            }
        }
    }
    out
}

/// Rank of a set of sparse vectors.
pub fn rank(k: &GaloisField, rows: Vec<SparseVec>) -> usize {
    let n = rows.len();
    n - kernel(k, rows).len()
}

/// Reduced row echelon form of a set of polynomials viewed as vectors on
/// the monomial basis: the result spans the same space, has pairwise
/// distinct leading monomials, is monic, and no leading monomial occurs in
/// any other element. Sorted by decreasing leading monomial.
pub fn echelon(ring: &Ring, polys: impl IntoIterator<Item = Polynomial>) -> Vec<Polynomial> {
    let k = ring.field();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut by_lead: HashMap<Monomial, usize> = HashMap::default();
    for f in polys {
        let mut f = reduce_leading(k, &f, &basis, &by_lead);
        if f.is_zero() {
            continue;
        }
        f = f.monic();
        by_lead.insert(*f.leading_monomial().unwrap(), basis.len());
        basis.push(f);
    }
    // back substitution
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut done: Vec<Polynomial> = Vec::with_capacity(basis.len());
    let mut lead_idx: HashMap<Monomial, usize> = HashMap::default();
    for f in basis {
        let g = reduce_full(k, &f, &done, &lead_idx);
        lead_idx.insert(*g.leading_monomial().unwrap(), done.len());
        done.push(g);
    }
    done.reverse();
    done
}

fn reduce_leading(k: &GaloisField, f: &Polynomial, basis: &[Polynomial], by_lead: &HashMap<Monomial, usize>) -> Polynomial {
    let mut f = f.clone();
    while let Some(lm) = f.leading_monomial() {
        match by_lead.get(lm) {
            Some(&i) => {
                let c = f.leading_coeff();
                f = f.add_scaled(k.neg(c), &Monomial::one(), &basis[i]);
            }
            None => break,
        }
    }
    f
}

/// Eliminates every monomial of `f` below its leading term that leads an
/// element of `basis`; elements of `basis` have smaller leading terms than `f`.
fn reduce_full(k: &GaloisField, f: &Polynomial, basis: &[Polynomial], by_lead: &HashMap<Monomial, usize>) -> Polynomial {
    let mut f = f.clone();
    let mut pos = 1;
    while pos < f.len() {
        let (m, c) = f.terms()[pos];
        match by_lead.get(&m) {
            Some(&i) => {
                f = f.add_scaled(k.neg(c), &Monomial::one(), &basis[i]);
                // terms above `pos` are unchanged, the one at `pos` is gone
            }
            None => pos += 1,
        }
    }
    f
}
