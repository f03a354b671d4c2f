#![allow(dead_code)]

use fpure::cartier::CartierMap;
use fpure::ffield::GaloisField;
use fpure::ideal::Ideal;
use fpure::poly::{Monomial, Polynomial, Ring};
use rand::Rng;

pub const EX2_U: &str = "x1^3*x2*x3 + x1^3*x2*x4 + x1^2*x3*x4*x5 + x1*x2*x3*x4*x5 \
     + x1*x2*x4^2*x5 + x2^2*x4^2*x5 + x3*x4^2*x5^2 + x4^3*x5^2";

pub fn ring(field: &str, vars: &str) -> Ring {
    Ring::from_var_list(GaloisField::parse(field).unwrap(), vars).unwrap()
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

pub fn phi(r: &Ring, u: &str, e: u32) -> CartierMap {
    CartierMap::new(r.parse(u).unwrap(), e).unwrap()
}

/// Random polynomial with `1..=max_terms` terms, exponents at most
/// `max_exp`, total degree at most `max_deg`; never zero.
pub fn random_poly(rng: &mut impl Rng, r: &Ring, max_terms: usize, max_exp: u32, max_deg: u32) -> Polynomial {
    let k = r.field();
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms = (0..n).map(|_| {
            let mut exps = vec![0u32; r.nvars()];
            let mut budget = max_deg;
            for e in exps.iter_mut() {
                *e = rng.gen_range(0..=max_exp.min(budget));
                budget -= *e;
            }
            let c = k.from_code(rng.gen_range(1..k.order())).unwrap();
            (Monomial::from_exps(&exps), c)
        });
        let f = r.from_terms(terms.collect::<Vec<_>>());
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random non-constant polynomial.
pub fn random_nonconstant(rng: &mut impl Rng, r: &Ring, max_terms: usize, max_exp: u32, max_deg: u32) -> Polynomial {
    loop {
        let f = random_poly(rng, r, max_terms, max_exp, max_deg);
        if !f.is_constant() {
            return f;
        }
    }
}

pub fn random_ideal(rng: &mut impl Rng, r: &Ring, max_gens: usize, max_deg: u32) -> Ideal {
    let n = rng.gen_range(1..=max_gens);
    Ideal::new(r, (0..n).map(|_| random_poly(rng, r, 3, max_deg, max_deg)).collect::<Vec<_>>())
}

/// Random homogeneous polynomial of positive degree with exponents at most
/// `max_exp`.
pub fn random_homogeneous(rng: &mut impl Rng, r: &Ring, max_terms: usize, max_exp: u32) -> Polynomial {
    let top = max_exp * r.nvars() as u32;
    loop {
        let deg = rng.gen_range(1..=top);
        let monos: Vec<Monomial> = r.box_monomials(max_exp).into_iter().filter(|m| m.degree() == deg).collect();
        let n = rng.gen_range(1..=max_terms);
        let k = r.field();
        let terms: Vec<(Monomial, _)> =
            (0..n).map(|_| (monos[rng.gen_range(0..monos.len())], k.from_code(rng.gen_range(1..k.order())).unwrap())).collect();
        let f = r.from_terms(terms);
        if !f.is_zero() {
            return f;
        }
    }
}
