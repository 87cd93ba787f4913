//! Compiling layouts into triple systems, the balance conditions on
//! colorings, the conjectured extremal counts, and the enumerator of the
//! pairwise non-isomorphic extremal family.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{left_of, right_of, Color, Layout};
use crate::system::TripleSystem;
use crate::vertex_set::VertexSet;

/// Which of the four exclusion rules removes a 3-set from the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MissingRule {
    /// Three vertices in one column whose top two share a color.
    SameColumn,
    /// Two in a column with the higher red, third in the column to the right.
    RedRight,
    /// Two in a column with the higher blue, third in the column to the left.
    BlueLeft,
    /// Blue atop the left column, red atop the right, and the lone vertex highest.
    Crossing,
}

/// First rule that excludes `{u, v, w}`, or `None` when it is a triangle.
pub fn missing_rule(layout: &Layout, u: usize, v: usize, w: usize) -> Option<MissingRule> {
    let col = |x| layout.column_of(x);
    let (cu, cv, cw) = (col(u), col(v), col(w));
    if cu == cv && cv == cw {
        let mut t = [u, v, w];
        t.sort_by_key(|&x| layout.height(x));
        return (layout.color(t[1]) == layout.color(t[2])).then_some(MissingRule::SameColumn);
    }
    // Name the pair sharing a column (p above q) and the lone vertex r.
    let (p, q, r) = if cu == cv {
        (u, v, w)
    } else if cu == cw {
        (u, w, v)
    } else if cv == cw {
        (v, w, u)
    } else {
        return None;
    };
    let (p, _q) = if layout.is_higher(p, q) {
        (p, q)
    } else {
        (q, p)
    };
    let x = col(p);
    let y = col(r);
    if layout.color(p) == Color::Red && y == right_of(x) {
        return Some(MissingRule::RedRight);
    }
    if layout.color(p) == Color::Blue && y == left_of(x) {
        return Some(MissingRule::BlueLeft);
    }
    if layout.is_higher(r, p) {
        let (left_top, right_top) = if y == right_of(x) { (p, r) } else { (r, p) };
        if layout.color(left_top) == Color::Blue && layout.color(right_top) == Color::Red {
            return Some(MissingRule::Crossing);
        }
    }
    None
}

/// All 3-sets not excluded by any of the four rules.
pub fn complex_from_layout(layout: &Layout) -> TripleSystem {
    let n = layout.n();
    let mut ts = TripleSystem::complete(n).expect("layout sizes are in range");
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if missing_rule(layout, a, b, c).is_some() {
                    ts.remove_vertices(a, b, c);
                }
            }
        }
    }
    ts
}

/// The conjectured maximum number of triangles in a K4-free system on `n` vertices.
pub fn conjectured_max(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    let k = (n / 3) as u64;
    let twice = match n % 3 {
        0 => 5 * k * k * k - 3 * k * k,
        1 => 5 * k * k * k + 2 * k * k - k,
        _ => 5 * k * k * k + 7 * k * k + 2 * k,
    };
    Ok(twice / 2)
}

/// Red/blue counts per column among the vertices above a cutoff row:
/// column 0 has `a` red and `b` blue, column 1 `c` and `d`, column 2 `e` and `f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PrefixCounts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    pub f: u64,
}

impl PrefixCounts {
    /// Counts over rows strictly above `cutoff`.
    pub fn above(layout: &Layout, cutoff: usize) -> PrefixCounts {
        let mut rb = [[0u64; 2]; 3];
        for v in layout.colored().filter(|&v| layout.row_of(v) > cutoff) {
            let slot = usize::from(layout.color(v) == Color::Blue);
            rb[layout.column_of(v)][slot] += 1;
        }
        PrefixCounts {
            a: rb[0][0],
            b: rb[0][1],
            c: rb[1][0],
            d: rb[1][1],
            e: rb[2][0],
            f: rb[2][1],
        }
    }

    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d + self.e + self.f
    }
}

/// Number of missing triangles whose lowest row is a full row directly below
/// a prefix with the given counts.
pub fn missing_row_formula(pc: PrefixCounts) -> u64 {
    let s = pc.total();
    let sq = |x: u64| x * x;
    (sq(pc.a + pc.d) + sq(pc.b + pc.e) + sq(pc.c + pc.f) + sq(s)) / 2
}

/// Red vertices of one column plus blue vertices of the column to its right,
/// bottom row excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColorSet {
    pub left_column: usize,
    pub members: VertexSet,
}

impl ColorSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn right_column(&self) -> usize {
        right_of(self.left_column)
    }
}

fn color_set_above(layout: &Layout, left: usize, cutoff: usize) -> ColorSet {
    let right = right_of(left);
    let members = layout
        .colored()
        .filter(|&v| layout.row_of(v) > cutoff)
        .filter(|&v| {
            let c = layout.column_of(v);
            (c == left && layout.color(v) == Color::Red)
                || (c == right && layout.color(v) == Color::Blue)
        })
        .collect();
    ColorSet {
        left_column: left,
        members,
    }
}

/// The three color sets, indexed by their left column.
pub fn color_sets(layout: &Layout) -> [ColorSet; 3] {
    color_sets_above(layout, 1)
}

/// Color sets restricted to rows strictly above `cutoff`.
pub fn color_sets_above(layout: &Layout, cutoff: usize) -> [ColorSet; 3] {
    [0, 1, 2].map(|c| color_set_above(layout, c, cutoff))
}

/// After removing the bottom `j` rows, every color set has `k - j` or `k - j + 1`
/// vertices, for every `1 <= j <= k`.
pub fn color_sets_balanced(layout: &Layout) -> bool {
    let k = layout.k();
    (1..=k).all(|j| {
        color_sets_above(layout, j)
            .iter()
            .all(|cs| cs.len() == k - j || cs.len() == k - j + 1)
    })
}

fn red_counts_in_top_rows(layout: &Layout, j: usize) -> [i64; 3] {
    let first = layout.rows() + 1 - j;
    let mut r = [0i64; 3];
    for v in layout.colored() {
        if layout.row_of(v) >= first && layout.color(v) == Color::Red {
            r[layout.column_of(v)] += 1;
        }
    }
    r
}

/// Residue-specific prefix rule on red counts per column (`r[c]` for column `c`).
fn prefix_rule_holds(residue: usize, r: [i64; 3]) -> bool {
    match residue {
        // n = 3k+1: a column has no more reds than its left neighbour, except
        // column 0 (holding the top vertex) may have one more.
        1 => (0..3).all(|c| r[c] <= r[left_of(c)] + i64::from(c == 0)),
        // n = 3k+2: no fewer reds than the left neighbour, except column 2
        // (empty in the top row) may have one fewer.
        2 => (0..3).all(|c| r[c] >= r[left_of(c)] - i64::from(c == 2)),
        _ => true,
    }
}

/// The coloring conditions restricting which layouts are kept.
pub fn check_coloring_conditions(layout: &Layout) -> bool {
    if layout.residue() == 0 {
        return (2..=layout.rows()).all(|row| {
            let cols: Vec<Color> = (0..3)
                .map(|c| layout.color(layout.vertex_at(c, row).unwrap()))
                .collect();
            cols.iter().all(|&c| c == cols[0])
        });
    }
    (1..=layout.k()).all(|j| prefix_rule_holds(layout.residue(), red_counts_in_top_rows(layout, j)))
}

/// The extra restrictions of the final family: a red top row, and for
/// `n = 3k + 1` a red highest vertex in every column.
pub fn check_construction4(layout: &Layout) -> bool {
    if layout.rows() > 1
        && layout
            .colored()
            .any(|v| layout.is_top_row(v) && layout.color(v) == Color::Blue)
    {
        return false;
    }
    if layout.residue() == 1 {
        for col in 0..3 {
            let column = layout.column(col);
            if let Some(&top) = column.last() {
                if !layout.is_bottom(top) && layout.color(top) == Color::Blue {
                    return false;
                }
            }
        }
    }
    true
}

/// How one full intermediate row is filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RowCode {
    AllRed,
    AllBlue,
    OneRed { blue_higher: bool },
    TwoRed { blue_higher: bool },
}

impl RowCode {
    pub const ALL: [RowCode; 6] = [
        RowCode::AllRed,
        RowCode::AllBlue,
        RowCode::OneRed { blue_higher: false },
        RowCode::OneRed { blue_higher: true },
        RowCode::TwoRed { blue_higher: false },
        RowCode::TwoRed { blue_higher: true },
    ];

    fn reds(self) -> usize {
        match self {
            RowCode::AllRed => 3,
            RowCode::AllBlue => 0,
            RowCode::OneRed { .. } => 1,
            RowCode::TwoRed { .. } => 2,
        }
    }

    fn blue_higher(self) -> bool {
        matches!(
            self,
            RowCode::OneRed { blue_higher: true } | RowCode::TwoRed { blue_higher: true }
        )
    }
}

/// Column sets of size `r` that keep the prefix rule satisfied after adding a row.
fn red_placements(residue: usize, counts: [i64; 3], r: usize) -> Vec<[bool; 3]> {
    let mut out = Vec::new();
    for mask in 0u8..8 {
        if mask.count_ones() as usize != r {
            continue;
        }
        let reds = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
        if residue == 0 && r != 0 && r != 3 {
            continue;
        }
        let next = [0, 1, 2].map(|c| counts[c] + i64::from(reds[c]));
        if prefix_rule_holds(residue, next) {
            out.push(reds);
        }
    }
    out
}

/// One representative of every class of the final construction on `n`
/// vertices, in a fixed deterministic order.
pub fn enumerate_construction4(n: usize) -> Result<Vec<Layout>> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    let probe = Layout::all_red(n)?;
    // Top row all red; free rows run from the highest full row below it down to row 2.
    let top_free = probe.rows() - 1;
    let free_rows: Vec<usize> = (2..=top_free).rev().collect();
    let mut top_counts = [0i64; 3];
    for col in 0..3 {
        if let Some(v) = probe.vertex_at(col, probe.rows()) {
            if !probe.is_bottom(v) {
                top_counts[col] += 1;
            }
        }
    }

    let mut out = Vec::new();
    let mut colors = vec![Color::Red; n];
    let mut swaps = Vec::new();
    fill_rows(
        &probe,
        &free_rows,
        top_counts,
        &mut colors,
        &mut swaps,
        &mut out,
    )?;
    Ok(out)
}

fn fill_rows(
    probe: &Layout,
    rows: &[usize],
    counts: [i64; 3],
    colors: &mut Vec<Color>,
    swaps: &mut Vec<(usize, usize)>,
    out: &mut Vec<Layout>,
) -> Result<()> {
    let Some((&row, rest)) = rows.split_first() else {
        let layout = Layout::new(probe.n(), colors.clone(), swaps.iter().copied())?;
        if check_coloring_conditions(&layout) && check_construction4(&layout) {
            out.push(layout);
        }
        return Ok(());
    };
    for code in RowCode::ALL {
        let placements = red_placements(probe.residue(), counts, code.reds());
        debug_assert!(placements.len() <= 1, "red placement is forced");
        let Some(reds) = placements.into_iter().next() else {
            continue;
        };
        for col in 0..3 {
            let v = probe.vertex_at(col, row).unwrap();
            colors[v] = if reds[col] { Color::Red } else { Color::Blue };
        }
        let pushed = if code.blue_higher() {
            let col = (0..3)
                .find(|&c| !reds[c] && reds[right_of(c)])
                .expect("mixed rows have a blue-left/red-right pair");
            swaps.push((col, row));
            true
        } else {
            false
        };
        let next = [0, 1, 2].map(|c| counts[c] + i64::from(reds[c]));
        fill_rows(probe, rest, next, colors, swaps, out)?;
        if pushed {
            swaps.pop();
        }
    }
    for col in 0..3 {
        colors[probe.vertex_at(col, row).unwrap()] = Color::Red;
    }
    Ok(())
}

/// Row code of a full intermediate row.
pub fn row_code(layout: &Layout, row: usize) -> Option<RowCode> {
    if row < 2 || row > layout.k() {
        return None;
    }
    let reds = (0..3)
        .filter(|&c| layout.color(layout.vertex_at(c, row).unwrap()) == Color::Red)
        .count();
    let blue_higher = (0..3).any(|c| layout.swap_flags().contains(&(c, row)));
    Some(match reds {
        3 => RowCode::AllRed,
        0 => RowCode::AllBlue,
        1 => RowCode::OneRed { blue_higher },
        _ => RowCode::TwoRed { blue_higher },
    })
}

/// Size of the enumerated family predicted by the row-filling count.
pub fn expected_family_size(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    let k = (n / 3) as u32;
    Ok(match (n % 3, k) {
        (0, 1) | (1, 1) => 1,
        (0, _) => 2u64.pow(k - 2),
        (1, _) => 3 * 6u64.pow(k - 2),
        _ => 6u64.pow(k - 1),
    })
}

/// Turán's construction: the all-red layout.
pub fn turan_original(n: usize) -> Result<TripleSystem> {
    Ok(complex_from_layout(&Layout::all_red(n)?))
}

/// The extremal 7-vertex system outside the enumerated family: the all-red
/// 6-vertex complex plus a vertex 6 joined to every (top row, bottom row) pair.
pub fn exceptional_complex7() -> TripleSystem {
    let base = Layout::all_red(6).expect("valid");
    let six = complex_from_layout(&base);
    let mut ts = TripleSystem::empty(7).expect("valid");
    for t in six.triples() {
        let [a, b, c] = t.vertices();
        ts.insert_vertices(a, b, c);
    }
    for top in 3..6 {
        for bottom in 0..3 {
            ts.insert_vertices(6, top, bottom);
        }
    }
    ts
}

/// The two colorings for which the empty-core description breaks down:
/// `n = 3k+1` with a single blue vertex, second from the top in column 0 and
/// above the red vertex to its right; and `n = 3k+2` with every colored
/// vertex below the top row blue. Only meaningful for `k >= 2`.
pub fn is_exceptional_construction(layout: &Layout) -> bool {
    let k = layout.k();
    if k < 2 {
        return false;
    }
    let blues: Vec<usize> = layout
        .colored()
        .filter(|&v| layout.color(v) == Color::Blue)
        .collect();
    match layout.residue() {
        1 => {
            let second = layout.vertex_at(0, k).unwrap();
            blues == [second] && layout.swap_flags().contains(&(0, k))
        }
        2 => layout
            .colored()
            .filter(|&v| !layout.is_top_row(v))
            .all(|v| layout.color(v) == Color::Blue),
        _ => false,
    }
}

/// Every coloring of the non-bottom vertices on the fixed grid, with every
/// combination of swap flags. Exponential; meant for small `n`.
pub fn all_layouts(n: usize) -> Result<Vec<Layout>> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    let colored = n.saturating_sub(3);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << colored) {
        let colors: Vec<Color> = (0..n)
            .map(|v| {
                if v >= 3 && mask >> (v - 3) & 1 == 1 {
                    Color::Blue
                } else {
                    Color::Red
                }
            })
            .collect();
        let base = Layout::new(n, colors.clone(), [])?;
        let pairs = base.swappable_pairs();
        for flags in 0u64..(1u64 << pairs.len()) {
            let chosen = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| flags >> i & 1 == 1)
                .map(|(_, &p)| p);
            out.push(Layout::new(n, colors.clone(), chosen)?);
        }
    }
    Ok(out)
}
