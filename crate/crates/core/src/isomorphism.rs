//! Canonical labelling and isomorphism testing for triple systems.
//!
//! Canonization walks a search tree of ordered vertex partitions. Every node
//! is refined to an equitable partition, where two vertices share a cell only
//! if they lie in the same number of triples through every pair of cells. A
//! leaf (all cells singletons) is a labelling, and the canonical form is the
//! lexicographically least relabelled triple list among the leaves. Automorphisms
//! found along the way prune branches that are images of explored ones.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::invariants::{indistinguishable_classes, Links};
use crate::system::{Triple, TripleSystem};

/// The least relabelling of a triple system, with its automorphism count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    /// Relabelled triples, each sorted, in lexicographic order.
    pub triples: Vec<[u8; 3]>,
    /// Order of the automorphism group, saturating at `u128::MAX`.
    pub automorphisms: u128,
}

impl CanonicalForm {
    pub fn system(&self) -> TripleSystem {
        let triples = self.triples.iter().map(|t| {
            Triple::new(t[0] as usize, t[1] as usize, t[2] as usize).expect("canonical triple")
        });
        TripleSystem::from_triples(self.n, triples).expect("canonical system")
    }

    /// `canonical` followed by the usual system text.
    pub fn render(&self) -> String {
        format!("canonical\n{}", self.system().render())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn canonical_form(ts: &TripleSystem) -> CanonicalForm {
    canonical_labeling(ts).0
}

/// The canonical form together with the labelling producing it:
/// `ts.relabel(&labeling)` is the canonical system.
pub fn canonical_labeling(ts: &TripleSystem) -> (CanonicalForm, Vec<usize>) {
    let mut c = Canonizer::new(ts);
    let root = c.initial_partition();
    let root = c.refine(root);
    let mut path = Vec::new();
    c.search(root, &mut path, true);
    let best = c.best.expect("search reaches a leaf");
    let triples = decode(ts.n(), &best.code);
    (
        CanonicalForm {
            n: ts.n(),
            triples,
            automorphisms: c.aut_count,
        },
        best.lab,
    )
}

/// A vertex map `w` with `x.relabel(&w) == y`, or `None` when the systems
/// are not isomorphic.
pub fn are_isomorphic(x: &TripleSystem, y: &TripleSystem) -> Option<Vec<usize>> {
    if x.n() != y.n() || x.triangle_count() != y.triangle_count() {
        return None;
    }
    let mut dx = x.degrees();
    let mut dy = y.degrees();
    dx.sort_unstable();
    dy.sort_unstable();
    if dx != dy {
        return None;
    }
    let (cx, lx) = canonical_labeling(x);
    let (cy, ly) = canonical_labeling(y);
    if cx.triples != cy.triples {
        return None;
    }
    let mut inv_y = vec![0; y.n()];
    for (v, &l) in ly.iter().enumerate() {
        inv_y[l] = v;
    }
    Some(lx.iter().map(|&l| inv_y[l]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub form: CanonicalForm,
    /// Indices into the input list, ascending.
    pub members: Vec<usize>,
}

/// Groups a family by canonical form, in order of first appearance.
pub fn iso_classes(family: &[TripleSystem]) -> Vec<IsoClass> {
    let forms: Vec<CanonicalForm> = family.par_iter().map(canonical_form).collect();
    let mut index: BTreeMap<&CanonicalForm, usize> = BTreeMap::new();
    let mut classes: Vec<IsoClass> = Vec::new();
    for (i, form) in forms.iter().enumerate() {
        match index.get(form) {
            Some(&c) => classes[c].members.push(i),
            None => {
                index.insert(form, classes.len());
                classes.push(IsoClass {
                    form: form.clone(),
                    members: vec![i],
                });
            }
        }
    }
    classes
}

fn encode(n: usize, a: usize, b: usize, c: usize) -> u32 {
    ((a * n + b) * n + c) as u32
}

fn decode(n: usize, code: &[u32]) -> Vec<[u8; 3]> {
    code.iter()
        .map(|&x| {
            let x = x as usize;
            [(x / (n * n)) as u8, (x / n % n) as u8, (x % n) as u8]
        })
        .collect()
}

type Cells = Vec<Vec<usize>>;

struct Leaf {
    path: Vec<usize>,
    code: Vec<u32>,
    lab: Vec<usize>,
}

struct Canonizer<'a> {
    ts: &'a TripleSystem,
    n: usize,
    links: Links,
    gens: Vec<Vec<usize>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    aut_count: u128,
}

impl<'a> Canonizer<'a> {
    fn new(ts: &'a TripleSystem) -> Self {
        let n = ts.n();
        let mut gens = Vec::new();
        for class in indistinguishable_classes(ts) {
            let vs = class.to_vec();
            for w in vs.windows(2) {
                let mut g: Vec<usize> = (0..n).collect();
                g.swap(w[0], w[1]);
                gens.push(g);
            }
        }
        Canonizer {
            ts,
            n,
            links: Links::new(ts),
            gens,
            first: None,
            best: None,
            aut_count: 1,
        }
    }

    /// Cells keyed by triangle count and the multiset of pair codegrees.
    fn initial_partition(&self) -> Cells {
        let degrees = self.ts.degrees();
        let mut keyed: BTreeMap<(usize, Vec<u32>), Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            let mut codeg: Vec<u32> = (0..self.n)
                .filter(|&w| w != v)
                .map(|w| self.links.get(v, w).count_ones())
                .collect();
            codeg.sort_unstable();
            keyed.entry((degrees[v], codeg)).or_default().push(v);
        }
        keyed.into_values().collect()
    }

    /// Splits cells until every vertex of a cell sees the same number of
    /// triples through each unordered pair of cells.
    fn refine(&self, mut cells: Cells) -> Cells {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let m = cells.len();
            if m == n {
                return cells;
            }
            let mut sig = vec![0u32; n * m * m];
            for v in 0..n {
                let row = &mut sig[v * m * m..(v + 1) * m * m];
                for a in 0..n {
                    let mut bs = self.links.get(v, a) & !((2u64 << a) - 1);
                    while bs != 0 {
                        let b = bs.trailing_zeros() as usize;
                        bs &= bs - 1;
                        let (ca, cb) = (cell_of[a], cell_of[b]);
                        let (lo, hi) = if ca <= cb { (ca, cb) } else { (cb, ca) };
                        row[lo * m + hi] += 1;
                    }
                }
            }
            let key = |v: usize| &sig[v * m * m..(v + 1) * m * m];
            let mut next: Cells = Vec::with_capacity(n);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut sorted = cell.clone();
                sorted.sort_by(|&x, &y| key(x).cmp(key(y)).then(x.cmp(&y)));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || key(sorted[i]) != key(sorted[start]) {
                        next.push(sorted[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if next.len() == m {
                return cells;
            }
            cells = next;
        }
    }

    fn leaf_code(&self, lab: &[usize]) -> Vec<u32> {
        let mut code: Vec<u32> = self
            .ts
            .triples()
            .into_iter()
            .map(|t| {
                let mut x = t.vertices().map(|v| lab[v]);
                x.sort_unstable();
                encode(self.n, x[0], x[1], x[2])
            })
            .collect();
        code.sort_unstable();
        code
    }

    /// Orbit labels of the group generated by the known automorphisms that
    /// fix every vertex of `path`.
    fn orbits(&self, path: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in self.gens.iter().filter(|g| path.iter().all(|&v| g[v] == v)) {
            for (v, &w) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    /// Records `lab_to⁻¹ ∘ lab_from`, an automorphism when both leaves agree.
    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut inv = vec![0; self.n];
        for (v, &l) in to.iter().enumerate() {
            inv[l] = v;
        }
        let g: Vec<usize> = from.iter().map(|&l| inv[l]).collect();
        if g.iter().enumerate().any(|(v, &w)| v != w) {
            self.gens.push(g);
        }
    }

    /// Returns `Some(d)` to unwind to the ancestor at depth `d`, whose
    /// remaining subtree was shown equivalent to an explored one.
    fn search(&mut self, cells: Cells, path: &mut Vec<usize>, on_first: bool) -> Option<usize> {
        let depth = path.len();
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            return self.visit_leaf(&cells, path);
        };
        let mut target = cells[t].clone();
        target.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if !explored.is_empty() {
                let orb = self.orbits(path);
                if explored.iter().any(|&u| orb[u] == orb[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(vec![v]);
            child.push(target.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[t + 1..]);
            let child = self.refine(child);
            path.push(v);
            let r = self.search(child, path, on_first && explored.len() == 1);
            path.pop();
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        if on_first {
            let orb = self.orbits(path);
            let size = target.iter().filter(|&&v| orb[v] == orb[target[0]]).count();
            self.aut_count = self.aut_count.saturating_mul(size as u128);
        }
        None
    }

    fn visit_leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let mut lab = vec![0; self.n];
        for (i, cell) in cells.iter().enumerate() {
            lab[cell[0]] = i;
        }
        let code = self.leaf_code(&lab);
        let leaf = Leaf {
            path: path.to_vec(),
            code,
            lab,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                code: leaf.code.clone(),
                lab: leaf.lab.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.code == leaf.code {
            let (from, d) = (first.lab.clone(), common_prefix(&first.path, path));
            self.record_automorphism(&from, &leaf.lab);
            return Some(d);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.code.cmp(&best.code) {
            Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                let (from, d) = (best.lab.clone(), common_prefix(&best.path, path));
                self.record_automorphism(&from, &leaf.lab);
                Some(d)
            }
            Ordering::Greater => None,
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
