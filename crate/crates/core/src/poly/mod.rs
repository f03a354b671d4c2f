//! Multivariate polynomials over a finite field.

mod monomial;
mod parse;

use std::cmp::Ordering;
use rustc_hash::FxHashMap as HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ffield::{Elem, GaloisField};

pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid ring: {0}")]
    BadRing(String),
    #[error("division is not exact")]
    Inexact,
}

struct RingInner {
    field: GaloisField,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// `F_q[x_1..x_d]` together with its active term order.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl Ring {
    pub fn new(field: GaloisField, vars: &[&str]) -> Result<Ring, PolyError> {
        Ring::with_order(field, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex)
    }

    pub fn with_order(field: GaloisField, vars: Vec<String>, order: MonomialOrder) -> Result<Ring, PolyError> {
        if vars.len() > MAX_VARS - 1 {
            return Err(PolyError::BadRing(format!("at most {} variables", MAX_VARS - 1)));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::BadRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::BadRing(format!("variable `{v}` declared twice")));
            }
            if v == "z" && !field.is_prime_field() {
                return Err(PolyError::BadRing("`z` denotes the field generator of an extension field".into()));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(PolyError::BadRing(format!("block size {k} exceeds number of variables")));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, vars, order })))
    }

    /// Parses a comma separated variable list such as `x1,x2,x3`.
    pub fn from_var_list(field: GaloisField, list: &str) -> Result<Ring, PolyError> {
        let vars: Vec<String> = list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        Ring::with_order(field, vars, MonomialOrder::Grevlex)
    }

    pub fn field(&self) -> &GaloisField {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    /// Same field and variables, different term order.
    pub fn reordered(&self, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingInner { field: self.0.field.clone(), vars: self.0.vars.clone(), order }))
    }

    /// The ring with one auxiliary variable prepended and an order
    /// eliminating it.
    pub(crate) fn elimination_ring(&self) -> Ring {
        let mut vars = vec!["_t".to_string()];
        vars.extend(self.0.vars.iter().cloned());
        Ring(Arc::new(RingInner { field: self.0.field.clone(), vars, order: MonomialOrder::Block(1) }))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Elem::ONE)
    }

    pub fn constant(&self, c: Elem) -> Polynomial {
        self.term(c, Monomial::one())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars());
        self.term(Elem::ONE, Monomial::var(i))
    }

    pub fn term(&self, c: Elem, m: Monomial) -> Polynomial {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: self.clone(), terms }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(Elem::ONE, m)
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Polynomial {
        let k = self.field();
        let mut acc: HashMap<Monomial, Elem> = HashMap::default();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(Elem::ZERO);
            *e = k.add(*e, c);
        }
        let mut terms: Vec<(Monomial, Elem)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.sort_terms(&mut terms);
        Polynomial { ring: self.clone(), terms }
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial, PolyError> {
        Ok(parse::parse(self, src)?)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b)
    }

    fn sort_terms(&self, terms: &mut [(Monomial, Elem)]) {
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
    }

    /// Every monomial whose exponents are all `<= l`, i.e. the monomial
    /// basis of the box `S_l`, in ascending term order.
    pub fn box_monomials(&self, l: u32) -> Vec<Monomial> {
        let d = self.nvars();
        let side = l as usize + 1;
        let total = side.checked_pow(d as u32).expect("box too large");
        let mut out = Vec::with_capacity(total);
        let mut exps = vec![0u32; d];
        for mut idx in 0..total {
            for e in exps.iter_mut() {
                *e = (idx % side) as u32;
                idx /= side;
            }
            out.push(Monomial::from_exps(&exps));
        }
        out.sort_unstable_by(|a, b| self.cmp(a, b));
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, v) in self.0.vars.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(v.clone()),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars && self.0.order == other.0.order)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}] ({:?})", self.0.field, self.0.vars.join(","), self.0.order)
    }
}

/// A polynomial; terms are kept sorted by decreasing monomial in the ring's
/// order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Elem)>,
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_term(&self) -> Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => Elem::ZERO,
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Elem {
        self.terms.first().map_or(Elem::ZERO, |t| t.1)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.iter().find(|(t, _)| t == m).map_or(Elem::ZERO, |t| t.1)
    }

    /// Infinity norm: the largest exponent in the support; 0 for constants
    /// and for the zero polynomial.
    pub fn norm(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.norm()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(Elem::ONE, &Monomial::one(), other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let minus_one = self.ring.field().neg(Elem::ONE);
        Ok(self.add_scaled(minus_one, &Monomial::one(), other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.len() == 1 {
            return self.mul_term(other.terms[0].1, &other.terms[0].0);
        }
        if self.len() == 1 {
            return other.mul_term(self.terms[0].1, &self.terms[0].0);
        }
        let k = self.ring.field();
        self.ring.from_terms(
            self.terms
                .iter()
                .flat_map(|(ma, ca)| other.terms.iter().map(move |(mb, cb)| (ma.mul(mb), k.mul(*ca, *cb)))),
        )
    }

    /// `self + c * m * other`, by a single merge.
    pub fn add_scaled(&self, c: Elem, m: &Monomial, other: &Polynomial) -> Polynomial {
        let k = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(mb, cb)| (mb.mul(m), k.mul(c, *cb))).filter(|t| !t.1.is_zero()).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(ta), Some(tb)) => match self.ring.cmp(&ta.0, &tb.0) {
                    Ordering::Greater => out.push(*a.next().unwrap()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = k.add(ta.1, tb.1);
                        if !s.is_zero() {
                            out.push((ta.0, s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn mul_term(&self, c: Elem, m: &Monomial) -> Polynomial {
        let k = self.ring.field();
        if c.is_zero() {
            return self.ring.zero();
        }
        // multiplying by a monomial preserves the order
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), k.mul(*a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field().neg(Elem::ONE))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if *c == Elem::ONE => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c).unwrap()),
        }
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `self^(p^e)`, computed termwise since Frobenius is additive.
    pub fn frobenius_power(&self, e: u32) -> Polynomial {
        let k = self.ring.field();
        let pe = (self.ring.characteristic() as u64).pow(e);
        let pe = u32::try_from(pe).expect("p^e too large");
        let terms = self.terms.iter().map(|(m, c)| (m.pow(pe), k.frobenius(*c, e))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Exact quotient `self / divisor`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(divisor)?;
        let k = self.ring.field();
        let (lm, lc) = divisor.terms.first().copied().ok_or(PolyError::Inexact)?;
        let lc_inv = k.inv(lc).unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(&(m, c)) = rem.terms.first() {
            let t = lm.quotient(&m).ok_or(PolyError::Inexact)?;
            let qc = k.mul(c, lc_inv);
            quot.push((t, qc));
            rem = rem.add_scaled(k.neg(qc), &t, divisor);
        }
        Ok(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Re-expresses the polynomial in another ring with the same field,
    /// mapping variable `i` to variable `i + shift`.
    pub(crate) fn shift_into(&self, ring: &Ring, shift: usize) -> Polynomial {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.shifted(shift), *c)).collect();
        ring.sort_terms(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn unshift_into(&self, ring: &Ring, shift: usize) -> Polynomial {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (m.unshifted(shift), *c)).collect();
        ring.sort_terms(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    /// Same polynomial viewed in a ring that differs only in term order.
    pub fn reorder(&self, ring: &Ring) -> Polynomial {
        assert_eq!(ring.vars(), self.ring.vars());
        let mut terms = self.terms.clone();
        ring.sort_terms(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Elem)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let k = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let cs = k.format(*c);
            let cs = if cs.contains('+') || cs.contains('*') { format!("({cs})") } else { cs };
            if m.is_one() {
                f.write_str(&cs)?;
            } else if *c == Elem::ONE {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{cs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
