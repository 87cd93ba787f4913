//! Isomorphism invariants of triple systems.
//!
//! Everything here is computed from a bare [`TripleSystem`] straight from the
//! definitions: empty clusters (maximal triangle-free vertex sets on more than
//! a third of the vertices), empty cores, empty unions, column legs and column
//! feet, and indistinguishable vertex pairs. The `predict_*` functions derive
//! the same objects from a [`Layout`] instead; the two routes are compared in
//! the tests.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::construction::{color_sets, ColorSet};
use crate::error::{Error, Result};
use crate::layout::{Color, Layout};
use crate::system::TripleSystem;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EmptyCluster {
    pub members: VertexSet,
}

impl EmptyCluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EmptyCore {
    pub members: VertexSet,
    /// Common size of the clusters whose intersection this is.
    pub defining_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EmptyUnion {
    pub members: VertexSet,
    pub core: EmptyCore,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColumnLeg {
    pub members: VertexSet,
    /// Indices into the empty-union list this leg was intersected from.
    pub unions: (usize, usize),
}

impl ColumnLeg {
    /// Legs with fewer than two vertices are kept but carry no column information.
    pub fn is_proper(&self) -> bool {
        self.members.len() >= 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColumnFoot {
    pub leg: VertexSet,
    pub foot: VertexSet,
}

/// Pair links: `links[u * n + v]` holds every `w` with `{u, v, w}` a triangle.
pub(crate) struct Links {
    n: usize,
    masks: Vec<u64>,
}

impl Links {
    pub(crate) fn new(ts: &TripleSystem) -> Links {
        let n = ts.n();
        let mut masks = vec![0u64; n * n];
        for t in ts.triples() {
            let [a, b, c] = t.vertices();
            masks[a * n + b] |= 1 << c;
            masks[b * n + a] |= 1 << c;
            masks[a * n + c] |= 1 << b;
            masks[c * n + a] |= 1 << b;
            masks[b * n + c] |= 1 << a;
            masks[c * n + b] |= 1 << a;
        }
        Links { n, masks }
    }

    #[inline]
    pub(crate) fn get(&self, u: usize, v: usize) -> u64 {
        self.masks[u * self.n + v]
    }
}

fn is_large_enough(size: usize, n: usize) -> bool {
    3 * size > n
}

/// Every maximal triangle-free vertex set with more than `n/3` vertices,
/// sorted by size and then by members.
pub fn empty_clusters(ts: &TripleSystem) -> Vec<EmptyCluster> {
    let n = ts.n();
    let links = Links::new(ts);
    let mut out = Vec::new();
    grow_clusters(&links, n, 0, 0, VertexSet::full(n).bits(), &mut out);
    out.sort_by_key(|c| (c.size(), c.members));
    out
}

/// Depth-first growth over triangle-free sets in increasing vertex order.
/// `addable` is every vertex outside `set` that can join it.
fn grow_clusters(
    links: &Links,
    n: usize,
    set: u64,
    next_min: usize,
    addable: u64,
    out: &mut Vec<EmptyCluster>,
) {
    let size = set.count_ones() as usize;
    if addable == 0 {
        if is_large_enough(size, n) {
            out.push(EmptyCluster {
                members: VertexSet::from_bits(set),
            });
        }
        return;
    }
    let ahead = addable & !((1u64 << next_min) - 1);
    if !is_large_enough(size + ahead.count_ones() as usize, n) {
        return;
    }
    let mut rest = ahead;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut blocked = 1u64 << v;
        let mut s = set;
        while s != 0 {
            let u = s.trailing_zeros() as usize;
            s &= s - 1;
            blocked |= links.get(u, v);
        }
        grow_clusters(links, n, set | 1 << v, v + 1, addable & !blocked, out);
    }
}

/// Intersections of same-size clusters, closed under further intersection,
/// keeping only those with at least two vertices.
fn intersection_closure(family: &[VertexSet]) -> BTreeSet<VertexSet> {
    let mut closure: BTreeSet<VertexSet> = family.iter().copied().collect();
    let mut frontier: Vec<VertexSet> = closure.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &g in family {
            let y = x.intersection(g);
            if y.len() >= 2 && closure.insert(y) {
                frontier.push(y);
            }
        }
    }
    closure
}

/// Empty cores: intersections of one or more same-size clusters with at
/// least two vertices, such that every other cluster of that size or larger
/// meets the intersection in at most one vertex. The defining family is taken
/// to be every same-size cluster containing the intersection.
pub fn empty_cores(ts: &TripleSystem) -> Vec<EmptyCore> {
    cores_from_clusters(&empty_clusters(ts))
}

pub(crate) fn cores_from_clusters(clusters: &[EmptyCluster]) -> Vec<EmptyCore> {
    let mut by_size: BTreeMap<usize, Vec<VertexSet>> = BTreeMap::new();
    for c in clusters {
        by_size.entry(c.size()).or_default().push(c.members);
    }
    let mut out = Vec::new();
    for (&s, family) in &by_size {
        for cand in intersection_closure(family) {
            let ok = clusters.iter().filter(|x| x.size() >= s).all(|x| {
                let meet = x.members.intersection(cand).len();
                meet <= 1 || (x.size() == s && cand.is_subset(x.members))
            });
            if ok {
                out.push(EmptyCore {
                    members: cand,
                    defining_size: s,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.members.len(), c.defining_size, c.members));
    out
}

/// Unions of all clusters of the defining size containing each core,
/// deduplicated by member set.
pub fn empty_unions(ts: &TripleSystem) -> Vec<EmptyUnion> {
    let clusters = empty_clusters(ts);
    unions_from(&clusters, &cores_from_clusters(&clusters))
}

pub(crate) fn unions_from(clusters: &[EmptyCluster], cores: &[EmptyCore]) -> Vec<EmptyUnion> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &core in cores {
        let members = clusters
            .iter()
            .filter(|x| x.size() == core.defining_size && core.members.is_subset(x.members))
            .fold(VertexSet::EMPTY, |acc, x| acc.union(x.members));
        if seen.insert(members) {
            out.push(EmptyUnion { members, core });
        }
    }
    out
}

/// Intersections of every pair of distinct empty unions.
pub fn column_legs(ts: &TripleSystem) -> Vec<ColumnLeg> {
    legs_from(&empty_unions(ts))
}

pub(crate) fn legs_from(unions: &[EmptyUnion]) -> Vec<ColumnLeg> {
    let mut out = Vec::new();
    for i in 0..unions.len() {
        for j in i + 1..unions.len() {
            out.push(ColumnLeg {
                members: unions[i].members.intersection(unions[j].members),
                unions: (i, j),
            });
        }
    }
    out
}

/// For each nonempty leg, the leg vertices tied for the most triangles that
/// meet the leg in that vertex alone.
pub fn column_feet(ts: &TripleSystem) -> Vec<ColumnFoot> {
    feet_from(ts, &column_legs(ts))
}

pub(crate) fn feet_from(ts: &TripleSystem, legs: &[ColumnLeg]) -> Vec<ColumnFoot> {
    let links = Links::new(ts);
    legs.iter()
        .filter(|leg| !leg.members.is_empty())
        .map(|leg| ColumnFoot {
            leg: leg.members,
            foot: foot_of(&links, ts.n(), leg.members),
        })
        .collect()
}

fn foot_of(links: &Links, n: usize, leg: VertexSet) -> VertexSet {
    let private = |v: usize| {
        let mut count = 0;
        for x in 0..n {
            if leg.contains(x) {
                continue;
            }
            let ys = links.get(v, x) & !leg.bits() & !((1u64 << (x + 1)) - 1);
            count += ys.count_ones() as usize;
        }
        count
    };
    let counts: Vec<(usize, usize)> = leg.iter().map(|v| (v, private(v))).collect();
    let best = counts.iter().map(|&(_, c)| c).max().unwrap_or(0);
    counts
        .into_iter()
        .filter(|&(_, c)| c == best)
        .map(|(v, _)| v)
        .collect()
}

/// Whether swapping `u` and `v` maps the triangle set onto itself.
pub fn indistinguishable(ts: &TripleSystem, u: usize, v: usize) -> Result<bool> {
    let n = ts.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u, v));
    }
    Ok(twins(ts, u, v))
}

pub(crate) fn twins(ts: &TripleSystem, u: usize, v: usize) -> bool {
    let n = ts.n();
    for c in 0..n {
        if c == u || c == v {
            continue;
        }
        for d in c + 1..n {
            if d != u && d != v && ts.has(u, c, d) != ts.has(v, c, d) {
                return false;
            }
        }
    }
    true
}

/// Classes of pairwise indistinguishable vertices, in order of least member.
pub fn indistinguishable_classes(ts: &TripleSystem) -> Vec<VertexSet> {
    let n = ts.n();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in 0..n {
        if class_of[v].is_some() {
            continue;
        }
        let id = classes.len();
        let mut cls = VertexSet::singleton(v);
        class_of[v] = Some(id);
        for w in v + 1..n {
            if class_of[w].is_none() && twins(ts, v, w) {
                cls.insert(w);
                class_of[w] = Some(id);
            }
        }
        classes.push(cls);
    }
    classes
}

/// All the definitional invariants of one system, computed together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTower {
    pub clusters: Vec<EmptyCluster>,
    pub cores: Vec<EmptyCore>,
    pub unions: Vec<EmptyUnion>,
    pub legs: Vec<ColumnLeg>,
    pub feet: Vec<ColumnFoot>,
}

impl InvariantTower {
    pub fn compute(ts: &TripleSystem) -> InvariantTower {
        let clusters = empty_clusters(ts);
        let cores = cores_from_clusters(&clusters);
        let unions = unions_from(&clusters, &cores);
        let legs = legs_from(&unions);
        let feet = feet_from(ts, &legs);
        InvariantTower {
            clusters,
            cores,
            unions,
            legs,
            feet,
        }
    }

    pub fn cluster_sets(&self) -> BTreeSet<VertexSet> {
        self.clusters.iter().map(|c| c.members).collect()
    }

    pub fn proper_legs(&self) -> BTreeSet<VertexSet> {
        self.legs
            .iter()
            .filter(|l| l.is_proper())
            .map(|l| l.members)
            .collect()
    }
}

/// Vertices lying in exactly one cluster of the given size.
pub fn vertices_in_exactly_one(clusters: &[EmptyCluster], size: usize, n: usize) -> VertexSet {
    (0..n)
        .filter(|&v| {
            clusters
                .iter()
                .filter(|c| c.size() == size && c.members.contains(v))
                .count()
                == 1
        })
        .collect()
}

/// Relabelling-invariant summary; equal records are necessary for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantRecord {
    pub n: usize,
    pub triangles: usize,
    pub degree_sequence: Vec<usize>,
    /// Cluster size -> number of clusters of that size.
    pub cluster_sizes: BTreeMap<usize, usize>,
    /// `(members, defining size)` of every core.
    pub core_sizes: Vec<(usize, usize)>,
    pub union_sizes: Vec<usize>,
    pub leg_sizes: Vec<usize>,
    pub foot_sizes: Vec<usize>,
    /// Per vertex: how many largest clusters contain it, and its triangle count.
    pub largest_cluster_membership: Vec<(usize, usize)>,
    /// Triangle counts of the vertices lying in exactly one largest cluster.
    pub distinguished_degrees: Vec<usize>,
}

impl InvariantRecord {
    /// Deterministic JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        serde_json::to_string_pretty(&value).expect("plain data")
    }
}

pub fn fingerprint(ts: &TripleSystem) -> InvariantRecord {
    fingerprint_of(ts, &InvariantTower::compute(ts))
}

pub fn fingerprint_of(ts: &TripleSystem, tower: &InvariantTower) -> InvariantRecord {
    let n = ts.n();
    let degrees = ts.degrees();
    let mut degree_sequence = degrees.clone();
    degree_sequence.sort_unstable();

    let mut cluster_sizes = BTreeMap::new();
    for c in &tower.clusters {
        *cluster_sizes.entry(c.size()).or_insert(0) += 1;
    }
    let largest = tower.clusters.iter().map(|c| c.size()).max().unwrap_or(0);
    let mut largest_cluster_membership: Vec<(usize, usize)> = (0..n)
        .map(|v| {
            let m = tower
                .clusters
                .iter()
                .filter(|c| c.size() == largest && c.members.contains(v))
                .count();
            (m, degrees[v])
        })
        .collect();
    largest_cluster_membership.sort_unstable();
    let mut distinguished_degrees: Vec<usize> =
        vertices_in_exactly_one(&tower.clusters, largest, n)
            .iter()
            .map(|v| degrees[v])
            .collect();
    distinguished_degrees.sort_unstable();

    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let mut core_sizes: Vec<(usize, usize)> = tower
        .cores
        .iter()
        .map(|c| (c.members.len(), c.defining_size))
        .collect();
    core_sizes.sort_unstable();

    InvariantRecord {
        n,
        triangles: ts.triangle_count(),
        degree_sequence,
        cluster_sizes,
        core_sizes,
        union_sizes: sorted(tower.unions.iter().map(|u| u.members.len()).collect()),
        leg_sizes: sorted(
            tower
                .legs
                .iter()
                .filter(|l| l.is_proper())
                .map(|l| l.members.len())
                .collect(),
        ),
        foot_sizes: sorted(tower.feet.iter().map(|f| f.foot.len()).collect()),
        largest_cluster_membership,
        distinguished_degrees,
    }
}

// ---------------------------------------------------------------------------
// Layout-based predictions
// ---------------------------------------------------------------------------

/// Vertices of `col` lower than every member of `cs` in that column.
pub fn below_color_set(layout: &Layout, cs: &ColorSet, col: usize) -> Vec<usize> {
    let floor = cs
        .members
        .iter()
        .filter(|&v| layout.column_of(v) == col)
        .map(|v| layout.height(v))
        .min();
    layout
        .column(col)
        .into_iter()
        .filter(|&v| floor.is_none_or(|f| layout.height(v) < f))
        .collect()
}

fn members_in(layout: &Layout, cs: &ColorSet, col: usize) -> Vec<usize> {
    let mut m: Vec<usize> = cs
        .members
        .iter()
        .filter(|&v| layout.column_of(v) == col)
        .collect();
    m.sort_by_key(|&v| layout.height(v));
    m
}

/// Clusters predicted from the coloring: a color set of size `k` plus one
/// vertex below it in each of its columns; a color set of size `k - 1` plus
/// the same; a size-`k` color set with its lowest vertex in one column
/// traded for a vertex just above it, plus one vertex below it in the other
/// column; and the backwards clusters, whose two columns carry the wrong
/// colors and are topped by a single vertex of the opposite color.
pub fn predict_empty_clusters(layout: &Layout) -> Vec<VertexSet> {
    let k = layout.k();
    let n = layout.n();
    let mut out = BTreeSet::new();
    for cs in color_sets(layout) {
        let (l, r) = (cs.left_column, cs.right_column());
        let below_l = below_color_set(layout, &cs, l);
        let below_r = below_color_set(layout, &cs, r);
        if cs.len() == k || cs.len() + 1 == k {
            for &x in &below_l {
                for &y in &below_r {
                    out.insert(cs.members.with(x).with(y));
                }
            }
        }
        if cs.len() == k {
            for (col, other_below) in [(l, &below_r), (r, &below_l)] {
                let inside = members_in(layout, &cs, col);
                let Some(&dropped) = inside.first() else {
                    continue;
                };
                let ceiling = inside.get(1).map(|&v| layout.height(v));
                let base = {
                    let mut s = cs.members;
                    s.remove(dropped);
                    s
                };
                for w in layout.column(col) {
                    let h = layout.height(w);
                    if h > layout.height(dropped) && ceiling.is_none_or(|c| h < c) {
                        for &z in other_below.iter() {
                            out.insert(base.with(w).with(z));
                        }
                    }
                }
            }
        }
    }
    for set in predict_backwards_clusters(layout) {
        out.insert(set);
    }
    out.into_iter().filter(|s| 3 * s.len() > n).collect()
}

/// Backwards clusters: in a column pair `(L, R)`, either a red vertex `y` of
/// `R` above the blue vertices of `L` beneath it plus one more vertex of `L`
/// below those, or a blue vertex `x` of `L` above the red vertices of `R`
/// beneath it plus one more vertex of `R` below those.
pub fn predict_backwards_clusters(layout: &Layout) -> Vec<VertexSet> {
    let mut out = BTreeSet::new();
    for l in 0..3 {
        let r = crate::layout::right_of(l);
        for (top_col, run_col, top_color) in [(r, l, Color::Red), (l, r, Color::Blue)] {
            let run_color = top_color.flip();
            for top in layout.column(top_col) {
                if layout.is_bottom(top) || layout.color(top) != top_color {
                    continue;
                }
                let run: Vec<usize> = layout
                    .column(run_col)
                    .into_iter()
                    .filter(|&v| {
                        !layout.is_bottom(v)
                            && layout.color(v) == run_color
                            && layout.is_higher(top, v)
                    })
                    .collect();
                let Some(lowest) = run.iter().map(|&v| layout.height(v)).min() else {
                    continue;
                };
                let run_set: VertexSet = run.iter().copied().collect();
                for w in layout.column(run_col) {
                    if layout.height(w) < lowest {
                        out.insert(run_set.with(w).with(top));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Each color set plus the bottom vertex of any of its columns whose second
/// lowest vertex is in the set; the defining size is the set's size plus two.
pub fn predict_empty_cores(layout: &Layout) -> Vec<EmptyCore> {
    let mut out: Vec<EmptyCore> = color_sets(layout)
        .iter()
        .map(|cs| {
            let mut members = cs.members;
            for col in [cs.left_column, cs.right_column()] {
                if let Some(second) = layout.vertex_at(col, 2) {
                    if cs.members.contains(second) {
                        members.insert(col);
                    }
                }
            }
            EmptyCore {
                members,
                defining_size: cs.len() + 2,
            }
        })
        .filter(|c| c.members.len() >= 2)
        .collect();
    out.sort_by_key(|c| (c.members.len(), c.defining_size, c.members));
    out
}

/// Each color set together with every vertex below it in both its columns.
pub fn predict_empty_unions(layout: &Layout) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = color_sets(layout)
        .iter()
        .map(|cs| {
            let mut s = cs.members;
            for col in [cs.left_column, cs.right_column()] {
                for v in below_color_set(layout, cs, col) {
                    s.insert(v);
                }
            }
            s
        })
        .collect();
    out.sort();
    out
}

/// Per column, the bottom vertex and the run of same-colored vertices
/// directly above it.
pub fn predict_column_legs(layout: &Layout) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for col in 0..3 {
        let column = layout.column(col);
        let mut leg = VertexSet::singleton(column[0]);
        if let Some(&second) = column.get(1) {
            let c = layout.color(second);
            for &v in &column[1..] {
                if layout.color(v) != c {
                    break;
                }
                leg.insert(v);
            }
        }
        out.push(leg);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{complex_from_layout, enumerate_construction4, exceptional_complex7};

    fn brute_clusters(ts: &TripleSystem) -> BTreeSet<VertexSet> {
        let n = ts.n();
        let free = |s: u64| {
            let vs: Vec<usize> = VertexSet::from_bits(s).to_vec();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    for l in j + 1..vs.len() {
                        if ts.has(vs[i], vs[j], vs[l]) {
                            return false;
                        }
                    }
                }
            }
            true
        };
        (0u64..1 << n)
            .filter(|&s| 3 * s.count_ones() as usize > n && free(s))
            .filter(|&s| (0..n).all(|v| s >> v & 1 == 1 || !free(s | 1 << v)))
            .map(VertexSet::from_bits)
            .collect()
    }

    #[test]
    fn clusters_match_subset_scan() {
        for n in 5..=9 {
            for l in enumerate_construction4(n).unwrap() {
                let ts = complex_from_layout(&l);
                let fast: BTreeSet<VertexSet> =
                    empty_clusters(&ts).iter().map(|c| c.members).collect();
                assert_eq!(fast, brute_clusters(&ts), "n={n}\n{l}");
            }
        }
        let ex = exceptional_complex7();
        let fast: BTreeSet<VertexSet> = empty_clusters(&ex).iter().map(|c| c.members).collect();
        assert_eq!(fast, brute_clusters(&ex));
    }

    #[test]
    fn exceptional7_has_no_four_cluster() {
        assert!(empty_clusters(&exceptional_complex7())
            .iter()
            .all(|c| c.size() < 4));
    }

    #[test]
    fn indistinguishable_errors_and_examples() {
        let ts = crate::construction::turan_original(6).unwrap();
        assert!(indistinguishable(&ts, 0, 0).is_err());
        assert!(indistinguishable(&ts, 0, 6).is_err());
        // the two vertices of column 0 are interchangeable in Turán's construction
        assert_eq!(indistinguishable(&ts, 0, 3), Ok(true));
        assert_eq!(indistinguishable(&ts, 0, 1), Ok(false));
    }

    #[test]
    fn indistinguishable_swap_is_automorphism() {
        for l in enumerate_construction4(8).unwrap() {
            let ts = complex_from_layout(&l);
            let deg = ts.degrees();
            for u in 0..8 {
                for v in u + 1..8 {
                    let same = indistinguishable(&ts, u, v).unwrap();
                    let mut perm: Vec<usize> = (0..8).collect();
                    perm.swap(u, v);
                    assert_eq!(same, ts.relabel(&perm).unwrap() == ts);
                    if deg[u] != deg[v] {
                        assert!(!same);
                    }
                }
            }
        }
    }

    #[test]
    fn turan6_tower_by_hand() {
        // Six clusters {0,1,3}, {0,3,4} and rotations; the two through a
        // column pair meet in exactly that pair, which no other cluster
        // touches twice. Each union is therefore two whole columns.
        let ts = crate::construction::turan_original(6).unwrap();
        let tower = InvariantTower::compute(&ts);
        assert_eq!(tower.clusters.len(), 6);
        let cores: BTreeSet<VertexSet> = tower.cores.iter().map(|c| c.members).collect();
        let pairs: BTreeSet<VertexSet> = [[0, 3], [1, 4], [2, 5]]
            .iter()
            .map(|p| p.iter().copied().collect())
            .collect();
        assert_eq!(cores, pairs);
        let sizes: Vec<usize> = tower.unions.iter().map(|u| u.members.len()).collect();
        assert_eq!(sizes, vec![4, 4, 4]);
        let legs: BTreeSet<VertexSet> = tower.legs.iter().map(|l| l.members).collect();
        assert_eq!(legs, pairs);
        assert!(tower.feet.iter().all(|f| f.foot == f.leg));
        let cs = color_sets(&Layout::all_red(6).unwrap());
        for core in &tower.cores {
            assert!(cs.iter().any(|c| c.members.is_subset(core.members)));
        }
    }

    #[test]
    fn foot_is_whole_leg_on_ties() {
        let ts = crate::construction::turan_original(6).unwrap();
        // 0 and 3 are twins, so they tie.
        let links = Links::new(&ts);
        let leg: VertexSet = [0, 3].into_iter().collect();
        assert_eq!(foot_of(&links, 6, leg), leg);
    }

    #[test]
    fn fingerprint_json_is_sorted() {
        let json = fingerprint(&exceptional_complex7()).to_json();
        let keys: Vec<&str> = json
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(keys.contains(&"cluster_sizes"));
    }
}
