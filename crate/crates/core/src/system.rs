//! Triple systems on a complete 1-skeleton.
//!
//! A [`TripleSystem`] is the triangle set of a 2-dimensional simplicial complex
//! that contains every vertex and every edge, so the only freedom is which
//! 3-subsets are faces. Triples are kept in a dense bitset indexed by their
//! colex rank `a + C(b,2) + C(c,3)`.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{parse_err, Error, Result};
use crate::vertex_set::VertexSet;

/// Largest vertex count a system may have (vertex sets are 64-bit masks).
pub const MAX_VERTICES: usize = 64;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Colex rank of the sorted triple `a < b < c`.
#[inline]
pub fn triple_rank(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c);
    a + b * (b - 1) / 2 + c * (c - 1) * (c - 2) / 6
}

#[inline]
fn sort3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let (b, c) = if b < c { (b, c) } else { (c, b) };
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a, b, c)
}

/// Three distinct vertices, stored in increasing order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([u8; 3]);

impl Triple {
    /// Builds a triple from three distinct vertices given in any order.
    pub fn new(x: usize, y: usize, z: usize) -> Result<Self> {
        if x == y || y == z || x == z {
            return Err(Error::DegenerateTriple([x, y, z]));
        }
        let (a, b, c) = sort3(x, y, z);
        if c >= MAX_VERTICES {
            return Err(Error::VertexOutOfRange {
                vertex: c,
                n: MAX_VERTICES,
            });
        }
        Ok(Triple([a as u8, b as u8, c as u8]))
    }

    pub fn a(self) -> usize {
        self.0[0] as usize
    }

    pub fn b(self) -> usize {
        self.0[1] as usize
    }

    pub fn c(self) -> usize {
        self.0[2] as usize
    }

    pub fn vertices(self) -> [usize; 3] {
        [self.a(), self.b(), self.c()]
    }

    pub fn contains(self, v: usize) -> bool {
        self.vertices().contains(&v)
    }

    pub fn rank(self) -> usize {
        triple_rank(self.a(), self.b(), self.c())
    }

    pub fn as_set(self) -> VertexSet {
        self.vertices().into_iter().collect()
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.a(), self.b(), self.c())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a(), self.b(), self.c())
    }
}

/// The triangles of a complex on `n` vertices with all `C(n,2)` edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    n: usize,
    bits: FixedBitSet,
}

impl TripleSystem {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(TripleSystem {
            n,
            bits: FixedBitSet::with_capacity(binomial(n, 3) as usize),
        })
    }

    /// Every 3-subset of `0..n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut ts = Self::empty(n)?;
        ts.bits.insert_range(..);
        Ok(ts)
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(n: usize, triples: I) -> Result<Self> {
        let mut ts = Self::empty(n)?;
        for t in triples {
            ts.check_vertex(t.c())?;
            ts.bits.insert(t.rank());
        }
        Ok(ts)
    }

    /// Like [`from_triples`](Self::from_triples) but from raw vertex arrays.
    pub fn from_arrays(n: usize, triples: &[[usize; 3]]) -> Result<Self> {
        let ts = triples
            .iter()
            .map(|&[x, y, z]| Triple::new(x, y, z))
            .collect::<Result<Vec<_>>>()?;
        Self::from_triples(n, ts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn insert_vertices(&mut self, x: usize, y: usize, z: usize) {
        let (a, b, c) = sort3(x, y, z);
        self.bits.insert(triple_rank(a, b, c));
    }

    pub(crate) fn remove_vertices(&mut self, x: usize, y: usize, z: usize) {
        let (a, b, c) = sort3(x, y, z);
        self.bits.set(triple_rank(a, b, c), false);
    }

    pub fn contains(&self, t: Triple) -> bool {
        t.c() < self.n && self.bits.contains(t.rank())
    }

    /// Membership test for three distinct in-range vertices in any order.
    #[inline]
    pub fn has(&self, x: usize, y: usize, z: usize) -> bool {
        let (a, b, c) = sort3(x, y, z);
        self.bits.contains(triple_rank(a, b, c))
    }

    /// The triples in lexicographic order.
    pub fn triples(&self) -> Vec<Triple> {
        let mut out = Vec::with_capacity(self.triangle_count());
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    if self.has(a, b, c) {
                        out.push(Triple([a as u8, b as u8, c as u8]));
                    }
                }
            }
        }
        out
    }

    pub fn triangle_count(&self) -> usize {
        self.bits.count_ones(..)
    }

    /// The 3-subsets that are not triangles, in lexicographic order.
    pub fn missing_triples(&self) -> Vec<Triple> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    if !self.has(a, b, c) {
                        out.push(Triple([a as u8, b as u8, c as u8]));
                    }
                }
            }
        }
        out
    }

    /// Some 4-set carrying all four of its triples, if one exists.
    pub fn find_k4(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if !self.has(a, b, c) {
                        continue;
                    }
                    for d in c + 1..n {
                        if self.has(a, b, d) && self.has(a, c, d) && self.has(b, c, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// True when adding any absent triple would complete a K4.
    pub fn is_maximal_k4_free(&self) -> Result<bool> {
        if let Some(q) = self.find_k4() {
            return Err(Error::ContainsK4(q));
        }
        Ok(self
            .missing_triples()
            .into_iter()
            .all(|t| self.completes_k4(t)))
    }

    /// Whether `t` together with the present triples would span a K4.
    pub fn completes_k4(&self, t: Triple) -> bool {
        let [a, b, c] = t.vertices();
        (0..self.n)
            .filter(|&d| d != a && d != b && d != c)
            .any(|d| self.has(a, b, d) && self.has(a, c, d) && self.has(b, c, d))
    }

    pub fn vertex_triangle_count(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.degree(v))
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        let mut count = 0;
        for x in 0..self.n {
            if x == v {
                continue;
            }
            for y in x + 1..self.n {
                if y != v && self.has(v, x, y) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Triangle count of every vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for t in self.triples() {
            for v in t.vertices() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// The vertices `w` with `{u, v, w}` a triangle.
    pub fn link(&self, u: usize, v: usize) -> VertexSet {
        (0..self.n)
            .filter(|&w| w != u && w != v && self.has(u, v, w))
            .collect()
    }

    /// Induced system on the other `n-1` vertices, relabelled in order.
    pub fn delete_vertex(&self, v: usize) -> Result<TripleSystem> {
        self.check_vertex(v)?;
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut out = TripleSystem::empty(self.n - 1)?;
        for t in self.triples() {
            if !t.contains(v) {
                let [a, b, c] = t.vertices();
                out.insert_vertices(shift(a), shift(b), shift(c));
            }
        }
        Ok(out)
    }

    /// Induced system on `keep`, relabelled `0..|keep|` in increasing order.
    pub fn induced(&self, keep: VertexSet) -> TripleSystem {
        let kept = keep.to_vec();
        let mut out = TripleSystem::empty(kept.len()).expect("subset of a valid system");
        for i in 0..kept.len() {
            for j in i + 1..kept.len() {
                for l in j + 1..kept.len() {
                    if self.has(kept[i], kept[j], kept[l]) {
                        out.insert_vertices(i, j, l);
                    }
                }
            }
        }
        out
    }

    /// Image of the system under `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<TripleSystem> {
        check_permutation(perm, self.n)?;
        let mut out = TripleSystem::empty(self.n)?;
        for t in self.triples() {
            let [a, b, c] = t.vertices();
            out.insert_vertices(perm[a], perm[b], perm[c]);
        }
        Ok(out)
    }

    pub fn with_triple(&self, t: Triple) -> Result<TripleSystem> {
        self.check_vertex(t.c())?;
        let mut out = self.clone();
        out.bits.insert(t.rank());
        Ok(out)
    }

    pub fn render(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for t in self.triples() {
            s.push_str(&t.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<TripleSystem> {
        let mut ts: Option<TripleSystem> = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(sys) = ts.as_mut() else {
                let n = line
                    .strip_prefix("n=")
                    .ok_or_else(|| parse_err(line_no, "expected header `n=<count>`"))?
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(line_no, format!("bad vertex count: {e}")))?;
                ts = Some(TripleSystem::empty(n).map_err(|e| parse_err(line_no, e.to_string()))?);
                continue;
            };
            let fields = line
                .split_whitespace()
                .map(|f| f.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(line_no, format!("bad vertex: {e}")))?;
            let &[a, b, c] = fields.as_slice() else {
                return Err(parse_err(
                    line_no,
                    format!("expected 3 vertices, found {}", fields.len()),
                ));
            };
            if !(a < b && b < c) {
                return Err(parse_err(line_no, "triple must be strictly increasing"));
            }
            if c >= sys.n {
                return Err(parse_err(
                    line_no,
                    format!("vertex {c} out of range for n={}", sys.n),
                ));
            }
            if sys.has(a, b, c) {
                return Err(parse_err(line_no, format!("duplicate triple {a} {b} {c}")));
            }
            sys.insert_vertices(a, b, c);
        }
        ts.ok_or_else(|| parse_err(last_line.max(1), "missing header `n=<count>`"))
    }
}

impl fmt::Debug for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleSystem(n={}, {:?})", self.n, self.triples())
    }
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(n));
        }
    }
    Ok(())
}
