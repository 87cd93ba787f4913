//! Exhaustive extremal search through the covering formulation.
//!
//! A triple system is K4-free exactly when its missing triples meet every
//! 4-subset, so the largest K4-free system on `n` vertices is the complement
//! of a minimum cover of the 4-subsets by triples. The search is a
//! branch-and-bound over covers, branching on the uncovered 4-subset with the
//! fewest usable triples and bounding by a greedy packing of uncovered
//! 4-subsets that share no usable triple.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::construction::conjectured_max;
use crate::error::{Error, Result};
use crate::isomorphism::{canonical_form, CanonicalForm};
use crate::system::{binomial, Triple, TripleSystem};

/// Largest vertex count the search accepts; triples and 4-subsets must fit a `u128`.
pub const MAX_SEARCH_VERTICES: usize = 9;

/// 4-subsets and the triples inside them, as bit masks over index lists.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub n: usize,
    pub triples: Vec<Triple>,
    pub quads: Vec<[usize; 4]>,
    /// Triples (by index) contained in each 4-subset.
    quad_triples: Vec<u128>,
    /// 4-subsets (by index) containing each triple.
    triple_quads: Vec<u128>,
}

impl CoverInstance {
    pub fn new(n: usize) -> Result<CoverInstance> {
        if n < 4 {
            return Err(Error::TooFewVertices { n, min: 4 });
        }
        if n > MAX_SEARCH_VERTICES {
            return Err(Error::SearchTooLarge {
                n,
                max: MAX_SEARCH_VERTICES,
            });
        }
        let triples = TripleSystem::complete(n)?.triples();
        let index = |a: usize, b: usize, c: usize| {
            triples
                .iter()
                .position(|t| t.vertices() == [a, b, c])
                .expect("triple listed")
        };
        let mut quads = Vec::new();
        let mut quad_triples = Vec::new();
        let mut triple_quads = vec![0u128; triples.len()];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let q = quads.len();
                        quads.push([a, b, c, d]);
                        let mut mask = 0u128;
                        for t in [
                            index(a, b, c),
                            index(a, b, d),
                            index(a, c, d),
                            index(b, c, d),
                        ] {
                            mask |= 1 << t;
                            triple_quads[t] |= 1 << q;
                        }
                        quad_triples.push(mask);
                    }
                }
            }
        }
        Ok(CoverInstance {
            n,
            triples,
            quads,
            quad_triples,
            triple_quads,
        })
    }

    fn all_quads(&self) -> u128 {
        low_bits(self.quads.len())
    }

    fn triple_index(&self, t: Triple) -> usize {
        self.triples
            .iter()
            .position(|&x| x == t)
            .expect("triple listed")
    }

    /// Whether the triples in `cover` meet every 4-subset.
    pub fn is_cover(&self, cover: u128) -> bool {
        self.quad_triples.iter().all(|&m| m & cover != 0)
    }

    /// The system made of every triple outside `cover`.
    pub fn complement(&self, cover: u128) -> TripleSystem {
        let kept = self
            .triples
            .iter()
            .enumerate()
            .filter(|&(i, _)| cover >> i & 1 == 0)
            .map(|(_, &t)| t);
        TripleSystem::from_triples(self.n, kept).expect("triples in range")
    }

    /// Greedy count of uncovered 4-subsets whose usable triples are pairwise
    /// disjoint, taking the most constrained first. Each needs its own triple.
    fn packing_bound(&self, uncovered: u128, forbidden: u128) -> usize {
        let mut buckets: [Vec<u128>; 5] = Default::default();
        for q in bits(uncovered) {
            let avail = self.quad_triples[q] & !forbidden;
            buckets[avail.count_ones() as usize].push(avail);
        }
        let mut used = 0u128;
        let mut count = 0;
        for bucket in &buckets[1..] {
            for &avail in bucket {
                if avail & used == 0 {
                    used |= avail;
                    count += 1;
                }
            }
        }
        count
    }

    /// The uncovered 4-subset with fewest usable triples, or `None` when
    /// some uncovered 4-subset has none left.
    fn branch_quad(&self, uncovered: u128, forbidden: u128) -> Option<usize> {
        let mut best = None;
        let mut fewest = u32::MAX;
        for q in bits(uncovered) {
            let a = (self.quad_triples[q] & !forbidden).count_ones();
            if a == 0 {
                return None;
            }
            if a < fewest {
                fewest = a;
                best = Some(q);
                if a == 1 {
                    break;
                }
            }
        }
        best
    }
}

fn low_bits(k: usize) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

fn bits(mut x: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            return None;
        }
        let i = x.trailing_zeros() as usize;
        x &= x - 1;
        Some(i)
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchConfig {
    /// Wall-clock limit; `None` runs to completion.
    pub budget: Option<Duration>,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    /// Minimum number of missing triples.
    pub m: usize,
    /// Maximum triangle count, `C(n,3) - m`.
    pub t: u64,
    pub conjectured: u64,
    /// One canonical form per isomorphism class of maximum systems, sorted.
    pub classes: Vec<CanonicalForm>,
}

impl SearchReport {
    pub fn attains_conjecture(&self) -> bool {
        self.t == self.conjectured
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Complete(SearchReport),
    /// The budget ran out; `best_m` is the smallest cover seen, which is
    /// only an upper bound on the minimum.
    BudgetExceeded {
        n: usize,
        best_m: Option<usize>,
    },
}

impl SearchOutcome {
    pub fn complete(&self) -> Option<&SearchReport> {
        match self {
            SearchOutcome::Complete(r) => Some(r),
            SearchOutcome::BudgetExceeded { .. } => None,
        }
    }
}

/// Search statistics; node counts vary with thread scheduling.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub covers_found: usize,
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy)]
struct Node {
    chosen: u128,
    count: usize,
    forbidden: u128,
    uncovered: u128,
}

struct Shared<'a> {
    inst: &'a CoverInstance,
    best: AtomicUsize,
    found: Mutex<Vec<(usize, u128)>>,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    stopped: AtomicBool,
}

impl Shared<'_> {
    fn report(&self, node: &Node) {
        let prev = self.best.fetch_min(node.count, Ordering::SeqCst);
        if node.count <= prev {
            self.found
                .lock()
                .expect("result lock")
                .push((node.count, node.chosen));
        }
    }

    fn out_of_time(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return true;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stopped.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    /// Children of `node`, or `None` when it is a leaf or pruned.
    fn expand(&self, node: &Node) -> Option<Vec<Node>> {
        if node.uncovered == 0 {
            self.report(node);
            return None;
        }
        let q = self.inst.branch_quad(node.uncovered, node.forbidden)?;
        let bound = self.inst.packing_bound(node.uncovered, node.forbidden);
        if node.count + bound > self.best.load(Ordering::Relaxed) {
            return None;
        }
        let mut forbidden = node.forbidden;
        let mut children = Vec::with_capacity(4);
        for t in bits(self.inst.quad_triples[q] & !node.forbidden) {
            children.push(Node {
                chosen: node.chosen | 1 << t,
                count: node.count + 1,
                forbidden,
                uncovered: node.uncovered & !self.inst.triple_quads[t],
            });
            forbidden |= 1 << t;
        }
        Some(children)
    }

    fn dfs(&self, node: Node) {
        if self.out_of_time() {
            return;
        }
        if let Some(children) = self.expand(&node) {
            for child in children {
                self.dfs(child);
            }
        }
    }
}

/// Minimum cover size and every maximum K4-free system up to isomorphism.
///
/// The triple `{0, 1, 2}` is forced into the cover: any cover can be
/// relabelled to contain it, so every isomorphism class is still reached.
pub fn min_missing_cover(n: usize, config: SearchConfig) -> Result<(SearchOutcome, SearchStats)> {
    let inst = CoverInstance::new(n)?;
    let start = Instant::now();
    let upper = (binomial(n, 3) - conjectured_max(n)?) as usize;
    let shared = Shared {
        inst: &inst,
        // A known construction meets this bound, so nothing larger is needed.
        best: AtomicUsize::new(upper),
        found: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
        deadline: config.budget.map(|b| start + b),
        stopped: AtomicBool::new(false),
    };
    let seed = inst.triple_index(Triple::new(0, 1, 2)?);
    let root = Node {
        chosen: 1 << seed,
        count: 1,
        forbidden: 0,
        uncovered: inst.all_quads() & !inst.triple_quads[seed],
    };

    let threads = config
        .jobs
        .unwrap_or_else(rayon::current_num_threads)
        .max(1);
    let mut frontier = vec![root];
    while !frontier.is_empty() && frontier.len() < 16 * threads {
        let mut next = Vec::new();
        for node in &frontier {
            if let Some(children) = shared.expand(node) {
                next.extend(children);
            }
        }
        frontier = next;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| frontier.into_par_iter().for_each(|node| shared.dfs(node)));

    let best = shared.best.load(Ordering::SeqCst);
    let found = shared.found.into_inner().expect("result lock");
    let minimum: Vec<u128> = found
        .iter()
        .filter(|&&(c, _)| c == best)
        .map(|&(_, cover)| cover)
        .collect();
    let stats = SearchStats {
        nodes: shared.nodes.load(Ordering::SeqCst),
        covers_found: minimum.len(),
        elapsed_ms: start.elapsed().as_millis(),
    };
    if shared.stopped.load(Ordering::SeqCst) {
        let best_m = (!found.is_empty()).then_some(best);
        return Ok((SearchOutcome::BudgetExceeded { n, best_m }, stats));
    }

    let classes = pool.install(|| {
        let mut forms: Vec<CanonicalForm> = minimum
            .par_iter()
            .map(|&cover| canonical_form(&inst.complement(cover)))
            .collect();
        forms.sort();
        forms.dedup();
        forms
    });
    let report = SearchReport {
        n,
        m: best,
        t: binomial(n, 3) - best as u64,
        conjectured: conjectured_max(n)?,
        classes,
    };
    Ok((SearchOutcome::Complete(report), stats))
}

/// Isomorphism classes of the maximum systems, checked against the
/// conjectured maximum through [`SearchReport::attains_conjecture`].
pub fn classify_extremal(n: usize, config: SearchConfig) -> Result<SearchOutcome> {
    Ok(min_missing_cover(n, config)?.0)
}

/// Unpruned reference: tries every set of triples in order of size.
/// Returns the minimum cover size and every minimum cover's complement.
pub fn reference_min_cover(n: usize) -> Result<(usize, Vec<TripleSystem>)> {
    let inst = CoverInstance::new(n)?;
    if n > 6 {
        return Err(Error::SearchTooLarge { n, max: 6 });
    }
    let total = inst.triples.len();
    for size in 1..=total {
        let mut covers = Vec::new();
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let mask = pick.iter().fold(0u128, |m, &i| m | 1 << i);
            if inst.is_cover(mask) {
                covers.push(inst.complement(mask));
            }
            let Some(i) = (0..size).rev().find(|&i| pick[i] < total - size + i) else {
                break;
            };
            pick[i] += 1;
            for j in i + 1..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
        if !covers.is_empty() {
            return Ok((size, covers));
        }
    }
    unreachable!("the full triple set is a cover")
}

/// Triangle density `t / C(n,3)` as an exact fraction.
pub fn density(n: usize, t: u64) -> Ratio<u64> {
    Ratio::new(t, binomial(n, 3))
}

/// Whether `t(n)/C(n,3)` never increases along consecutive vertex counts.
pub fn ratio_monotonicity_check(values: &[(usize, u64)]) -> Result<bool> {
    for w in values.windows(2) {
        let ((n0, t0), (n1, t1)) = (w[0], w[1]);
        if n1 != n0 + 1 {
            return Err(Error::NotConsecutive { prev: n0, next: n1 });
        }
        if density(n1, t1) > density(n0, t0) {
            return Ok(false);
        }
    }
    Ok(true)
}
