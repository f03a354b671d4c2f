use proptest::prelude::*;

use crate::ffield::GaloisField;
use crate::poly::{Monomial, Polynomial, Ring};

pub(crate) fn ring(field: &str, vars: &[&str]) -> Ring {
    Ring::new(GaloisField::parse(field).unwrap(), vars).unwrap()
}

/// Random polynomial with at most `max_terms` terms and exponents up to `max_exp`.
pub(crate) fn arb_poly(r: Ring, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let d = r.nvars();
    let q = r.field().order();
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, d), 0..q), 0..=max_terms).prop_map(move |ts| {
        r.from_terms(ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), r.field().from_code(c).unwrap())))
    })
}
