//! Exact arithmetic in `F_q`, `q = p^f`.
//!
//! Elements are stored as a compact code: the coefficient vector of the
//! element over `F_p` (in the basis `1, z, .., z^(f-1)`) read as base-`p`
//! digits, lowest degree first. For a prime field the code is the residue.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("invalid field description `{0}`: {1}")]
    Parse(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    Reducible(u32),
    #[error("modulus must be monic of degree {0}")]
    BadModulus(u32),
    #[error("field of order {0} is too large for table arithmetic")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    Mismatch,
}

/// Textual description of a finite field: the characteristic, the degree
/// and (for `f > 1`) the defining modulus, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        // z - 0 by convention
        Ok(FieldSpec { p, f: 1, modulus: vec![0, 1] })
    }

    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if modulus.len() < 2 {
            return Err(FieldError::BadModulus(0));
        }
        let f = (modulus.len() - 1) as u32;
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(FieldError::BadModulus(f));
        }
        if f == 1 {
            return Ok(FieldSpec { p, f, modulus: vec![0, 1] });
        }
        if !is_irreducible(p, &modulus) {
            return Err(FieldError::Reducible(p));
        }
        Ok(FieldSpec { p, f, modulus })
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `"p"` or `"q:c0,c1,..,cf"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| FieldError::Parse(s.to_string(), why.to_string());
        let s_trim = s.trim();
        match s_trim.split_once(':') {
            None => {
                let p: u32 = s_trim.parse().map_err(|_| bad("expected an integer"))?;
                FieldSpec::prime(p).map_err(|e| match e {
                    FieldError::NotPrime(_) => bad("order is not prime; give a modulus as q:c0,..,cf"),
                    e => e,
                })
            }
            Some((q, coeffs)) => {
                let q: u64 = q.trim().parse().map_err(|_| bad("expected an integer order"))?;
                let modulus = coeffs
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad("modulus coefficients must be integers"))?;
                if modulus.len() < 2 {
                    return Err(bad("modulus must have degree at least 1"));
                }
                let f = (modulus.len() - 1) as u32;
                let p = integer_root(q, f).ok_or_else(|| bad("order is not p^f for the modulus degree"))?;
                if p > u32::MAX as u64 {
                    return Err(bad("characteristic too large"));
                }
                FieldSpec::extension(p as u32, modulus)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f == 1 {
            write!(f, "{}", self.p)
        } else {
            let cs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, "{}:{}", self.order(), cs.join(","))
        }
    }
}

fn integer_root(q: u64, f: u32) -> Option<u64> {
    let guess = (q as f64).powf(1.0 / f as f64).round() as u64;
    [guess.saturating_sub(1), guess, guess + 1]
        .into_iter()
        .find(|&c| c >= 2 && c.checked_pow(f) == Some(q))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense univariate helpers over F_p, coefficients lowest degree first.

/// Remainder of `a` modulo `b`, as a vector of length `deg b`.
fn rem_poly(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = p as u64;
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64 % p).collect();
    if r.len() < db {
        r.resize(db, 0);
    }
    let lead_inv = pow_mod(b[db] as u64, p - 2, p);
    for i in (db..r.len()).rev() {
        let c = r[i] * lead_inv % p;
        if c == 0 {
            continue;
        }
        let shift = i - db;
        for (j, &bc) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * bc as u64 % p) % p;
        }
    }
    r.truncate(db);
    r.into_iter().map(|c| c as u32).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree `1..=f/2`.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let f = modulus.len() - 1;
    for deg in 1..=f / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            let r = rem_poly(p, modulus, &div);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Field element code. Only meaningful together with the [`GaloisField`]
/// that produced it.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

enum Arith {
    Prime,
    Tables {
        add: Vec<u32>,
        neg: Vec<u32>,
        // log/exp with respect to a primitive element; log[0] unused
        log: Vec<u32>,
        exp: Vec<u32>,
    },
}

struct FieldInner {
    spec: FieldSpec,
    q: u32,
    arith: Arith,
}

/// A finite field with shared lookup tables. Cheap to clone.
#[derive(Clone)]
pub struct GaloisField(Arc<FieldInner>);

const MAX_TABLE_ORDER: u64 = 1 << 12;

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let q64 = spec.order();
        if spec.f == 1 {
            if q64 >= 1 << 31 {
                return Err(FieldError::TooLarge(q64));
            }
            return Ok(GaloisField(Arc::new(FieldInner { q: q64 as u32, spec, arith: Arith::Prime })));
        }
        if q64 > MAX_TABLE_ORDER {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let p = spec.p;
        let f = spec.f as usize;
        let digits = |c: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(f);
            let mut c = c;
            for _ in 0..f {
                v.push(c % p);
                c /= p;
            }
            v
        };
        let code = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0u32; (q * q) as usize];
        let mut neg = vec![0u32; q as usize];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = code(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>());
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = code(&s);
            }
        }
        let mul_slow = |a: u32, b: u32| -> u32 {
            let da = digits(a);
            let db = digits(b);
            let mut prod = vec![0u32; 2 * f - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + *x as u64 * *y as u64) % p as u64) as u32;
                }
            }
            code(&rem_poly(p, &prod, &spec.modulus))
        };
        // search for a primitive element
        let mut exp = Vec::new();
        'search: for g in 2..q {
            exp.clear();
            let mut x = 1u32;
            for _ in 0..q - 1 {
                exp.push(x);
                x = mul_slow(x, g);
                if x == 1 && exp.len() < (q - 1) as usize {
                    continue 'search;
                }
            }
            if x == 1 {
                break;
            }
        }
        if exp.len() != (q - 1) as usize {
            // q = 2^1 handled by the prime branch, so f >= 2 always has a generator
            return Err(FieldError::Reducible(p));
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Ok(GaloisField(Arc::new(FieldInner { q, spec, arith: Arith::Tables { add, neg, log, exp } })))
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        GaloisField::new(FieldSpec::prime(p)?)
    }

    pub fn parse(s: &str) -> Result<Self, FieldError> {
        GaloisField::new(s.parse()?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.f
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.arith, Arith::Prime)
    }

    pub fn same_field(&self, other: &GaloisField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.spec.p as i64;
        Elem(n.rem_euclid(p) as u32)
    }

    /// Element with the given code, if it is in range.
    pub fn from_code(&self, code: u32) -> Option<Elem> {
        (code < self.0.q).then_some(Elem(code))
    }

    /// The class of `z` in `F_p[z]/(m)`; for a prime field this is 0.
    pub fn generator(&self) -> Elem {
        if self.is_prime_field() {
            Elem::ZERO
        } else {
            Elem(self.0.spec.p)
        }
    }

    /// All `q` elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    /// Coefficients over `F_p`, lowest power of `z` first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let p = self.0.spec.p;
        let mut c = a.0;
        (0..self.0.spec.f)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => {
                let s = a.0 as u64 + b.0 as u64;
                let p = self.0.q as u64;
                Elem(if s >= p { s - p } else { s } as u32)
            }
            Arith::Tables { add, .. } => Elem(add[(a.0 * self.0.q + b.0) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.arith {
            Arith::Prime => {
                if a.0 == 0 {
                    a
                } else {
                    Elem(self.0.q - a.0)
                }
            }
            Arith::Tables { neg, .. } => Elem(neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.arith {
            Arith::Prime => Elem((a.0 as u64 * b.0 as u64 % self.0.q as u64) as u32),
            Arith::Tables { log, exp, .. } => {
                let n = self.0.q - 1;
                let s = (log[a.0 as usize] + log[b.0 as usize]) % n;
                Elem(exp[s as usize])
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.0.arith {
            Arith::Prime => {
                let p = self.0.q as u64;
                Elem(pow_mod(a.0 as u64, p - 2, p) as u32)
            }
            Arith::Tables { log, exp, .. } => {
                let n = self.0.q - 1;
                Elem(exp[((n - log[a.0 as usize]) % n) as usize])
            }
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        let bi = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = Elem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^e)`.
    pub fn frobenius(&self, a: Elem, e: u32) -> Elem {
        let f = self.0.spec.f;
        let k = e % f;
        if k == 0 || a.0 == 0 {
            return a;
        }
        let mut x = a;
        for _ in 0..k {
            x = self.pow(x, self.0.spec.p as u64);
        }
        x
    }

    /// The unique `b` with `b^(p^e) = a`.
    pub fn inv_frobenius(&self, a: Elem, e: u32) -> Elem {
        let f = self.0.spec.f;
        let k = e % f;
        if k == 0 {
            return a;
        }
        // Frobenius has order f on F_q
        self.frobenius(a, f - k)
    }

    pub fn format(&self, a: Elem) -> String {
        if self.is_prime_field() {
            return a.0.to_string();
        }
        let ds = self.digits(a);
        let mut parts = Vec::new();
        for (i, &d) in ds.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let c = if d == 1 && i > 0 { String::new() } else { d.to_string() };
            let sep = if c.is_empty() || i == 0 { "" } else { "*" };
            let m = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            parts.push(format!("{c}{sep}{m}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement { field: self.clone(), value: a }
    }
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.spec)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for GaloisField {}

/// An element bundled with its field, for checked standalone arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: GaloisField,
    value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn apply(&self, op: FieldOp, other: &FieldElement) -> Result<FieldElement, FieldError> {
        if !self.field.same_field(&other.field) {
            return Err(FieldError::Mismatch);
        }
        let (a, b) = (self.value, other.value);
        let value = match op {
            FieldOp::Add => self.field.add(a, b),
            FieldOp::Sub => self.field.sub(a, b),
            FieldOp::Mul => self.field.mul(a, b),
            FieldOp::Div => self.field.div(a, b)?,
        };
        Ok(self.field.element(value))
    }

    pub fn frobenius(&self, e: u32) -> FieldElement {
        self.field.element(self.field.frobenius(self.value, e))
    }

    pub fn inv_frobenius(&self, e: u32) -> FieldElement {
        self.field.element(self.field.inv_frobenius(self.value, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}
