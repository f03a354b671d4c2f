use std::cmp::Ordering;
use std::fmt;

/// Upper bound on the number of variables, auxiliary elimination variable
/// included.
pub const MAX_VARS: usize = 12;

/// Dense exponent vector. Slots past the ring dimension are always zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Monomial::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Largest exponent.
    pub fn norm(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0) as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut m = *self;
        for e in m.exps.iter_mut() {
            *e = u16::try_from(*e as u32 * k).expect("exponent overflow");
        }
        m.deg *= k;
        m
    }

    /// Moves every exponent `shift` slots to the right (towards higher
    /// indices), freeing the leading slots.
    pub(crate) fn shifted(&self, shift: usize) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS - shift {
            m.exps[i + shift] = self.exps[i];
        }
        assert!(self.exps[MAX_VARS - shift..].iter().all(|&e| e == 0), "too many variables");
        m.deg = self.deg;
        m
    }

    pub(crate) fn unshifted(&self, shift: usize) -> Monomial {
        debug_assert!(self.exps[..shift].iter().all(|&e| e == 0));
        let mut m = Monomial::default();
        for i in shift..MAX_VARS {
            m.exps[i - shift] = self.exps[i];
        }
        m.deg = self.deg;
        m
    }

    /// Writes the exponent as `p^e * quot + rem` componentwise, `rem < p^e`.
    pub fn split_frobenius(&self, pe: u32) -> (Monomial, Monomial) {
        let mut quot = Monomial::default();
        let mut rem = Monomial::default();
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u32;
            quot.exps[i] = (e / pe) as u16;
            rem.exps[i] = (e % pe) as u16;
            quot.deg += e / pe;
            rem.deg += e % pe;
        }
        (quot, rem)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Term orders understood by the Gröbner engine.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    Lex,
    /// Lex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the first `k` variables.
    Block(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b, 0, a.deg, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let head = a.exps[..k].cmp(&b.exps[..k]);
                if head != Ordering::Equal {
                    return head;
                }
                let da = a.deg - a.exps[..k].iter().map(|&e| e as u32).sum::<u32>();
                let db = b.deg - b.exps[..k].iter().map(|&e| e as u32).sum::<u32>();
                grevlex(a, b, k, da, db)
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, from: usize, da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (from..MAX_VARS).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
