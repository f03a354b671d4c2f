//! Enumeration of all φ-fixed ideals.
//!
//! Starting from `S`, each node takes the hash of its ideal, records it,
//! and branches over the codimension-one subspaces `V` with
//! `mH ⊆ V ⊆ H`; every fixed ideal strictly inside `H` lies in one of
//! them. That step relies on graded Nakayama and is complete when `u` is
//! homogeneous. For other `u` the default strategy descends through
//! hyperplanes of the finite-dimensional slice `H ∩ S_{D_e}` instead,
//! which is complete for every `u` but grows quickly with the box.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use thiserror::Error;

use crate::cartier::{CartierError, CartierMap};
use crate::ffield::{Elem, GaloisField};
use crate::ideal::{ColumnIndex, Ideal, IdealError, IdealKey};
use crate::linalg;
use crate::poly::{Polynomial, Ring};

pub const DEFAULT_MAX_NODES: u64 = 1_000_000;
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 200_000;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("limit exceeded ({reason}); {} ideals found before stopping", partial.len())]
    LimitExceeded { reason: String, partial: Box<FixedIdealSet> },
    #[error("search space of {size} subspaces exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Cartier(#[from] CartierError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: DEFAULT_MAX_NODES, max_time: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// `Nakayama` for homogeneous `u`, `SliceDescent` otherwise.
    #[default]
    Auto,
    Nakayama,
    SliceDescent,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Stats {
    pub nodes: u64,
    pub hash_calls: u64,
    pub hash_iterations: u64,
    pub memo_hits: u64,
    pub max_depth: usize,
    pub elapsed_ms: u64,
    pub strategy: String,
}

/// A nonzero covector of `F_q^s` whose first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    covector: Vec<Elem>,
}

impl Hyperplane {
    pub fn covector(&self) -> &[Elem] {
        &self.covector
    }

    /// A basis of `{Σ w_i v_i : c·w = 0}`: `v_j - c_j v_{i0}` for
    /// `j ≠ i0`, where `i0` is the pivot of `c`.
    pub fn kernel_combinations(&self, k: &GaloisField, items: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(items.len(), self.covector.len());
        let i0 = self.covector.iter().position(|c| !c.is_zero()).unwrap();
        (0..items.len())
            .filter(|&j| j != i0)
            .map(|j| {
                let c = self.covector[j];
                if c.is_zero() {
                    items[j].clone()
                } else {
                    items[j].add_scaled(k.neg(c), &crate::poly::Monomial::one(), &items[i0])
                }
            })
            .collect()
    }
}

/// All hyperplanes of `F_q^s` in lexicographic order of their normalized
/// covectors; there are `(q^s - 1)/(q - 1)` of them.
pub fn hyperplanes(k: &GaloisField, s: usize) -> Vec<Hyperplane> {
    let elems: Vec<Elem> = k.elements().collect();
    let mut out = Vec::new();
    for i0 in 0..s {
        let tail = s - i0 - 1;
        let count = elems.len().pow(tail as u32);
        for mut idx in 0..count {
            let mut c = vec![Elem::ZERO; s];
            c[i0] = Elem::ONE;
            for j in (i0 + 1..s).rev() {
                c[j] = elems[idx % elems.len()];
                idx /= elems.len();
            }
            out.push(Hyperplane { covector: c });
        }
    }
    out
}

/// The ideals `V` with `mI ⊆ V ⊆ I` and `dim I/V = 1`. When `I/mI` is
/// one-dimensional (principal `I`, or `I ⊄ m`) this is just `mI`.
pub fn branch_ideals(i: &Ideal) -> Result<Vec<Ideal>, IdealError> {
    if i.is_zero() {
        return Err(IdealError::ZeroIdeal);
    }
    let mi = i.times_maximal();
    if !i.in_maximal() {
        return Ok(vec![mi]);
    }
    let gens = i.minimal_generators()?;
    if gens.len() == 1 {
        return Ok(vec![mi]);
    }
    let k = i.ring().field();
    mi.groebner();
    Ok(hyperplanes(k, gens.len()).iter().map(|h| mi.sum(&Ideal::new(i.ring(), h.kernel_combinations(k, &gens))).unwrap()).collect())
}

/// Number of minimal generators of a proper nonzero ideal inside `m`.
pub fn generator_count(i: &Ideal) -> Option<usize> {
    if i.is_zero() || !i.in_maximal() {
        return None;
    }
    i.minimal_generators().ok().map(|g| g.len())
}

/// The fixed ideals found by an enumeration.
#[derive(Clone, Debug)]
pub struct FixedIdealSet {
    phi: CartierMap,
    ideals: Vec<Ideal>,
    stats: Stats,
    complete: bool,
}

impl FixedIdealSet {
    fn new(phi: &CartierMap, found: impl IntoIterator<Item = Ideal>, stats: Stats, complete: bool) -> FixedIdealSet {
        let mut ideals: Vec<(Vec<String>, Ideal)> = found.into_iter().map(|i| (i.canonical_strings(), i)).collect();
        ideals.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        ideals.dedup_by(|a, b| a.0 == b.0);
        FixedIdealSet { phi: phi.clone(), ideals: ideals.into_iter().map(|(_, i)| i).collect(), stats, complete }
    }

    pub fn phi(&self) -> &CartierMap {
        &self.phi
    }

    /// Sorted by number of basis elements, then by printed basis.
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn contains(&self, i: &Ideal) -> bool {
        self.ideals.iter().any(|j| j == i)
    }

    pub fn keys(&self) -> HashSet<IdealKey> {
        self.ideals.iter().map(|i| i.key()).collect()
    }

    /// Ideals other than `0` and `S`.
    pub fn proper_nonzero(&self) -> impl Iterator<Item = &Ideal> {
        self.ideals.iter().filter(|i| !i.is_zero() && !i.is_unit())
    }

    /// Counts of proper nonzero ideals by number of minimal generators;
    /// key `None` collects ideals not contained in `m`.
    pub fn categories(&self) -> BTreeMap<Option<usize>, usize> {
        let mut out = BTreeMap::new();
        for i in self.proper_nonzero() {
            *out.entry(generator_count(i)).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Hash, PartialEq, Eq)]
enum NodeKey {
    Input(IdealKey),
    Fixed(IdealKey),
    Space(Vec<Polynomial>),
    FixedSpace(Vec<Polynomial>),
}

type TraceSink = Arc<Mutex<Box<dyn Write + Send>>>;

struct Shared {
    seen: Mutex<FxHashSet<NodeKey>>,
    found: Mutex<FxHashMap<IdealKey, Ideal>>,
    nodes: AtomicU64,
    hash_calls: AtomicU64,
    hash_iterations: AtomicU64,
    memo_hits: AtomicU64,
    max_depth: AtomicUsize,
    stop: AtomicBool,
    reason: Mutex<Option<String>>,
    start: Instant,
}

impl Shared {
    fn halt(&self, reason: String) {
        self.reason.lock().unwrap().get_or_insert(reason);
        self.stop.store(true, Ordering::SeqCst);
    }

    fn first_visit(&self, key: NodeKey) -> bool {
        let fresh = self.seen.lock().unwrap().insert(key);
        if !fresh {
            self.memo_hits.fetch_add(1, Ordering::Relaxed);
        }
        fresh
    }
}

/// Configurable enumeration of the fixed ideals of one map.
pub struct Enumerator {
    phi: CartierMap,
    limits: Limits,
    strategy: Strategy,
    jobs: usize,
    trace: Option<TraceSink>,
}

#[derive(Serialize)]
struct TraceEvent<'a> {
    event: &'a str,
    depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ideal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
}

impl Enumerator {
    pub fn new(phi: CartierMap) -> Enumerator {
        Enumerator { phi, limits: Limits::default(), strategy: Strategy::Auto, jobs: 1, trace: None }
    }

    pub fn limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Number of worker threads for sibling branches; 1 runs sequentially.
    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Writes one JSON object per line for every node, hash and branching.
    pub fn trace(mut self, sink: Box<dyn Write + Send>) -> Self {
        self.trace = Some(Arc::new(Mutex::new(sink)));
        self
    }

    fn resolved_strategy(&self) -> Strategy {
        match self.strategy {
            Strategy::Auto if self.phi.u().is_homogeneous() => Strategy::Nakayama,
            Strategy::Auto => Strategy::SliceDescent,
            s => s,
        }
    }

    fn emit(&self, event: &str, depth: usize, ideal: Option<&Ideal>, iterations: Option<usize>, count: Option<usize>) {
        if let Some(sink) = &self.trace {
            let ev = TraceEvent { event, depth, ideal: ideal.map(|i| i.canonical_strings()), iterations, count };
            let line = serde_json::to_string(&ev).unwrap();
            let _ = writeln!(sink.lock().unwrap(), "{line}");
        }
    }

    pub fn run(&self) -> Result<FixedIdealSet, EnumerateError> {
        let ring = self.phi.ring().clone();
        let strategy = self.resolved_strategy();
        let shared = Shared {
            seen: Mutex::new(FxHashSet::default()),
            found: Mutex::new(FxHashMap::default()),
            nodes: AtomicU64::new(0),
            hash_calls: AtomicU64::new(0),
            hash_iterations: AtomicU64::new(0),
            memo_hits: AtomicU64::new(0),
            max_depth: AtomicUsize::new(0),
            stop: AtomicBool::new(false),
            reason: Mutex::new(None),
            start: Instant::now(),
        };
        if !self.phi.u().is_zero() {
            let go = || match strategy {
                Strategy::SliceDescent => {
                    let full: Vec<Polynomial> = ring.box_monomials(self.phi.de()).into_iter().map(|m| ring.monomial(m)).collect();
                    self.visit_space(&shared, linalg::echelon(&ring, full), 1)
                }
                _ => self.visit_ideal(&shared, Ideal::unit(&ring), 1),
            };
            if self.jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build().map_err(|e| EnumerateError::Invariant(e.to_string()))?;
                pool.install(go)?;
            } else {
                go()?;
            }
        }
        let mut found: Vec<Ideal> = shared.found.into_inner().unwrap().into_values().collect();
        found.push(Ideal::zero(&ring));
        let stats = Stats {
            nodes: shared.nodes.load(Ordering::SeqCst),
            hash_calls: shared.hash_calls.load(Ordering::SeqCst),
            hash_iterations: shared.hash_iterations.load(Ordering::SeqCst),
            memo_hits: shared.memo_hits.load(Ordering::SeqCst),
            max_depth: shared.max_depth.load(Ordering::SeqCst),
            elapsed_ms: shared.start.elapsed().as_millis() as u64,
            strategy: format!("{strategy:?}"),
        };
        let reason = shared.reason.into_inner().unwrap();
        let set = FixedIdealSet::new(&self.phi, found, stats, reason.is_none());
        match reason {
            None => Ok(set),
            Some(reason) => Err(EnumerateError::LimitExceeded { reason, partial: Box::new(set) }),
        }
    }

    /// Counts a node; false once a limit has been hit.
    fn enter(&self, sh: &Shared) -> bool {
        if sh.stop.load(Ordering::SeqCst) {
            return false;
        }
        let n = sh.nodes.fetch_add(1, Ordering::SeqCst) + 1;
        if n > self.limits.max_nodes {
            sh.nodes.fetch_sub(1, Ordering::SeqCst);
            sh.halt(format!("node budget of {} exhausted", self.limits.max_nodes));
            return false;
        }
        if let Some(t) = self.limits.max_time {
            if sh.start.elapsed() > t {
                sh.halt(format!("time budget of {:.3}s exhausted", t.as_secs_f64()));
                return false;
            }
        }
        true
    }

    fn record(&self, sh: &Shared, h: &Ideal, depth: usize) -> Result<(), EnumerateError> {
        if !self.phi.is_fixed(h)? {
            return Err(EnumerateError::Invariant(format!("hash result {h} is not fixed")));
        }
        if depth > self.phi.box_dim() {
            return Err(EnumerateError::Invariant(format!("chain depth {depth} exceeds {}", self.phi.box_dim())));
        }
        sh.max_depth.fetch_max(depth, Ordering::SeqCst);
        sh.found.lock().unwrap().entry(h.key()).or_insert_with(|| h.clone());
        Ok(())
    }

    fn each_child<T: Send>(&self, children: Vec<T>, f: impl Fn(T) -> Result<(), EnumerateError> + Sync + Send) -> Result<(), EnumerateError> {
        if self.jobs > 1 {
            children.into_par_iter().try_for_each(f)
        } else {
            children.into_iter().try_for_each(f)
        }
    }

    fn visit_ideal(&self, sh: &Shared, v: Ideal, depth: usize) -> Result<(), EnumerateError> {
        if !self.enter(sh) || !sh.first_visit(NodeKey::Input(v.key())) {
            return Ok(());
        }
        self.emit("node", depth, Some(&v), None, None);
        let out = self.phi.hash_with_stats(&v)?;
        sh.hash_calls.fetch_add(1, Ordering::Relaxed);
        sh.hash_iterations.fetch_add(out.iterations as u64, Ordering::Relaxed);
        let h = out.ideal;
        self.emit("hash", depth, Some(&h), Some(out.iterations), None);
        if h.is_zero() || !sh.first_visit(NodeKey::Fixed(h.key())) {
            return Ok(());
        }
        self.record(sh, &h, depth)?;
        let children = branch_ideals(&h)?;
        self.emit("branch", depth, None, None, Some(children.len()));
        self.each_child(children, |c| self.visit_ideal(sh, c, depth + 1))
    }

    /// Largest subspace `W' ⊆ W` with `u W' ⊆ (W'S)^[p^e]` and
    /// `W' ⊆ I_e(u W'S)`; `W'S` is then fixed and contains every fixed
    /// ideal whose slice lies in `W`.
    fn restricted_hash(&self, sh: &Shared, mut w: Vec<Polynomial>) -> Result<Vec<Polynomial>, EnumerateError> {
        let ring = self.phi.ring();
        sh.hash_calls.fetch_add(1, Ordering::Relaxed);
        for _ in 0..=self.phi.box_dim() {
            if w.is_empty() {
                return Ok(w);
            }
            sh.hash_iterations.fetch_add(1, Ordering::Relaxed);
            let j = Ideal::from_subspace(ring, w.clone());
            let bracket = j.bracket_power(self.phi.pe() as u64)?;
            let root = self.phi.apply(&j)?;
            let mut cols = ColumnIndex::default();
            let images = w
                .iter()
                .map(|f| {
                    let mut v = cols.sparse_offset(&bracket.nf(&(f * self.phi.u())), 1);
                    v.extend(cols.sparse_offset(&root.nf(f), 2));
                    v.sort_unstable_by_key(|t| t.0);
                    v
                })
                .collect();
            let ker = linalg::kernel(ring.field(), images);
            if ker.len() == w.len() {
                return Ok(w);
            }
            let next = ker.into_iter().map(|c| ring.from_terms(c.into_iter().flat_map(|(i, a)| w[i as usize].scale(a).terms().to_vec())));
            w = linalg::echelon(ring, next);
        }
        Err(CartierError::IterationCap { cap: self.phi.box_dim() + 1 }.into())
    }

    fn visit_space(&self, sh: &Shared, w: Vec<Polynomial>, depth: usize) -> Result<(), EnumerateError> {
        if !self.enter(sh) || !sh.first_visit(NodeKey::Space(w.clone())) {
            return Ok(());
        }
        let fixed = self.restricted_hash(sh, w)?;
        if fixed.is_empty() || !sh.first_visit(NodeKey::FixedSpace(fixed.clone())) {
            return Ok(());
        }
        let ring = self.phi.ring();
        let h = Ideal::from_subspace(ring, fixed.clone());
        self.emit("hash", depth, Some(&h), None, None);
        self.record(sh, &h, depth)?;
        let k = ring.field();
        let children: Vec<Vec<Polynomial>> =
            hyperplanes(k, fixed.len()).iter().map(|hp| linalg::echelon(ring, hp.kernel_combinations(k, &fixed))).collect();
        self.emit("branch", depth, None, None, Some(children.len()));
        self.each_child(children, |c| self.visit_space(sh, c, depth + 1))
    }
}

/// All φ-fixed ideals, with the default strategy and sequential search.
pub fn enumerate_fixed(phi: &CartierMap, limits: Limits) -> Result<FixedIdealSet, EnumerateError> {
    Enumerator::new(phi.clone()).limits(limits).run()
}

/// Number of subspaces of `F_q^n`, saturating.
pub fn subspace_count(q: u64, n: usize) -> u128 {
    // Gaussian binomials via the recurrence [n,k] = [n-1,k-1] + q^k [n-1,k]
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for k in 1..m {
            let qk = (q as u128).saturating_pow(k as u32);
            next[k] = row[k - 1].saturating_add(qk.saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u128, |a, b| a.saturating_add(*b))
}

/// Exhaustive search: every fixed ideal is generated by its intersection
/// with `S_{D_e}`, so testing the ideal generated by each subspace of
/// that box finds all of them.
pub fn brute_force_fixed(phi: &CartierMap, cap: u128) -> Result<FixedIdealSet, EnumerateError> {
    let start = Instant::now();
    let ring: Ring = phi.ring().clone();
    let k = ring.field();
    let monos = ring.box_monomials(phi.de());
    let n = monos.len();
    let size = subspace_count(k.order() as u64, n);
    if size > cap {
        return Err(EnumerateError::SearchSpaceTooLarge { size, cap });
    }
    let elems: Vec<Elem> = k.elements().collect();
    let mut seen: FxHashSet<IdealKey> = FxHashSet::default();
    let mut found = Vec::new();
    let mut nodes = 0u64;
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let free: Vec<(usize, usize)> =
            pivots.iter().enumerate().flat_map(|(r, &p)| (p + 1..n).filter(|c| mask & (1 << c) == 0).map(move |c| (r, c))).collect();
        let fills = elems.len().pow(free.len() as u32);
        for mut code in 0..fills {
            nodes += 1;
            let mut rows: Vec<Vec<(usize, Elem)>> = pivots.iter().map(|&p| vec![(p, Elem::ONE)]).collect();
            for &(r, c) in &free {
                rows[r].push((c, elems[code % elems.len()]));
                code /= elems.len();
            }
            let basis: Vec<Polynomial> = rows.into_iter().map(|row| ring.from_terms(row.into_iter().map(|(c, a)| (monos[c], a)))).collect();
            let j = Ideal::from_subspace(&ring, basis);
            if seen.insert(j.key()) && phi.is_fixed(&j)? {
                found.push(j);
            }
        }
    }
    let stats = Stats { nodes, elapsed_ms: start.elapsed().as_millis() as u64, strategy: "BruteForce".into(), ..Stats::default() };
    Ok(FixedIdealSet::new(phi, found, stats, true))
}
