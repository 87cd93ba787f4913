//! Column/row layouts with a red/blue coloring and a total vertex order.
//!
//! Vertices live on a grid of three cyclically ordered columns (the column to
//! the right of `c` is `c + 1 mod 3`) and `ceil(n/3)` rows, row 1 at the
//! bottom. Vertex ids are row-major from the bottom: the vertex at column `c`
//! of row `r` is `3 * (r - 1) + c`. Empty slots only occur in the top row:
//! with `n = 3k + 1` the top row holds column 0 only, with `n = 3k + 2`
//! columns 0 and 1.
//!
//! A vertex in a higher row is always higher. Within a row the only relative
//! order that affects any triangle is that of a blue vertex and the red vertex
//! immediately to its right; each such pair carries an explicit flag saying
//! whether the blue vertex is the higher one.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::system::MAX_VERTICES;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Column to the right of `c`.
#[inline]
pub fn right_of(c: usize) -> usize {
    (c + 1) % 3
}

/// Column to the left of `c`.
#[inline]
pub fn left_of(c: usize) -> usize {
    (c + 2) % 3
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Layout {
    n: usize,
    colors: Vec<Color>,
    /// `(column, row)` of every blue vertex that sits above the red vertex to its right.
    blue_higher: BTreeSet<(usize, usize)>,
    height: Vec<usize>,
}

impl Layout {
    /// Builds a layout. Bottom-row colors are normalized to red and every
    /// swap flag must name a blue vertex with a red vertex to its right in the
    /// same row.
    pub fn new(
        n: usize,
        mut colors: Vec<Color>,
        blue_higher: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Layout> {
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        if colors.len() != n {
            return Err(Error::InvalidLayout(format!(
                "{} colors given for {n} vertices",
                colors.len()
            )));
        }
        for c in colors.iter_mut().take(3) {
            *c = Color::Red;
        }
        let blue_higher: BTreeSet<_> = blue_higher.into_iter().collect();
        let mut layout = Layout {
            n,
            colors,
            blue_higher,
            height: Vec::new(),
        };
        for &(col, row) in &layout.blue_higher {
            if !layout.is_swappable_pair(col, row) {
                return Err(Error::InvalidLayout(format!(
                    "swap c{col}r{row} does not name a blue vertex with a red vertex to its right"
                )));
            }
        }
        layout.height = layout.compute_heights();
        Ok(layout)
    }

    /// Colors given per `(column, row)`.
    pub fn from_fn(n: usize, color: impl Fn(usize, usize) -> Color) -> Result<Layout> {
        let colors = (0..n).map(|v| color(v % 3, v / 3 + 1)).collect();
        Layout::new(n, colors, [])
    }

    /// Every vertex red.
    pub fn all_red(n: usize) -> Result<Layout> {
        Layout::from_fn(n, |_, _| Color::Red)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n / 3
    }

    pub fn residue(&self) -> usize {
        self.n % 3
    }

    pub fn rows(&self) -> usize {
        self.n.div_ceil(3)
    }

    pub fn vertex_at(&self, col: usize, row: usize) -> Option<usize> {
        if col > 2 || row == 0 {
            return None;
        }
        let v = 3 * (row - 1) + col;
        (v < self.n).then_some(v)
    }

    pub fn column_of(&self, v: usize) -> usize {
        v % 3
    }

    pub fn row_of(&self, v: usize) -> usize {
        v / 3 + 1
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn is_bottom(&self, v: usize) -> bool {
        v < 3
    }

    pub fn is_top_row(&self, v: usize) -> bool {
        self.row_of(v) == self.rows()
    }

    /// Vertices of a column, lowest first.
    pub fn column(&self, col: usize) -> Vec<usize> {
        (col..self.n).step_by(3).collect()
    }

    pub fn column_set(&self, col: usize) -> VertexSet {
        self.column(col).into_iter().collect()
    }

    /// Vertices outside the bottom row, whose color matters.
    pub fn colored(&self) -> impl Iterator<Item = usize> + '_ {
        3..self.n
    }

    pub fn swap_flags(&self) -> &BTreeSet<(usize, usize)> {
        &self.blue_higher
    }

    /// Position of `v` in the total order (0 = lowest).
    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    pub fn is_higher(&self, u: usize, v: usize) -> bool {
        self.height[u] > self.height[v]
    }

    /// Whether `(col, row)` is a blue vertex with a red vertex to its right in the same row.
    pub fn is_swappable_pair(&self, col: usize, row: usize) -> bool {
        match (self.vertex_at(col, row), self.vertex_at(right_of(col), row)) {
            (Some(b), Some(r)) => {
                row > 1 && self.colors[b] == Color::Blue && self.colors[r] == Color::Red
            }
            _ => false,
        }
    }

    /// All blue-left/red-right pairs `(column, row)` whose relative order is significant.
    pub fn swappable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for row in 2..=self.rows() {
            for col in 0..3 {
                if self.is_swappable_pair(col, row) {
                    out.push((col, row));
                }
            }
        }
        out
    }

    fn compute_heights(&self) -> Vec<usize> {
        let mut height = vec![0; self.n];
        let mut next = 0;
        for row in 1..=self.rows() {
            let mut order: Vec<usize> = (0..3).filter_map(|c| self.vertex_at(c, row)).collect();
            for col in 0..3 {
                if !self.is_swappable_pair(col, row) {
                    continue;
                }
                let blue = self.vertex_at(col, row).unwrap();
                let red = self.vertex_at(right_of(col), row).unwrap();
                let pb = order.iter().position(|&x| x == blue).unwrap();
                let pr = order.iter().position(|&x| x == red).unwrap();
                let want_blue_higher = self.blue_higher.contains(&(col, row));
                if (pb > pr) != want_blue_higher {
                    order.swap(pb, pr);
                }
            }
            for v in order {
                height[v] = next;
                next += 1;
            }
        }
        height
    }

    pub fn render(&self) -> String {
        let mut s = format!("layout n={} k={}\n", self.n, self.k());
        for row in (1..=self.rows()).rev() {
            let cells: Vec<&str> = (0..3)
                .map(|c| match self.vertex_at(c, row) {
                    None => ".",
                    Some(_) if row == 1 => "x",
                    Some(v) if self.colors[v] == Color::Red => "R",
                    Some(_) => "B",
                })
                .collect();
            s.push_str(&cells.join(" "));
            for col in 0..3 {
                if self.blue_higher.contains(&(col, row)) {
                    s.push_str(&format!(" swap c{col}r{row}"));
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Layout> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing `layout n=<n> k=<k>` header"))?;
        let mut n = None;
        let mut k = None;
        let mut words = header.split_whitespace();
        if words.next() != Some("layout") {
            return Err(parse_err(hline, "header must start with `layout`"));
        }
        for w in words {
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| parse_err(hline, format!("bad number in `{w}`: {e}")))
            };
            if let Some(v) = w.strip_prefix("n=") {
                n = Some(num(v)?);
            } else if let Some(v) = w.strip_prefix("k=") {
                k = Some(num(v)?);
            } else {
                return Err(parse_err(hline, format!("unexpected `{w}` in header")));
            }
        }
        let n = n.ok_or_else(|| parse_err(hline, "header lacks n="))?;
        if !(3..=MAX_VERTICES).contains(&n) {
            return Err(parse_err(
                hline,
                format!("n={n} outside 3..={MAX_VERTICES}"),
            ));
        }
        if k != Some(n / 3) {
            return Err(parse_err(
                hline,
                format!("header needs k={} for n={n}", n / 3),
            ));
        }
        let rows = n.div_ceil(3);
        let mut colors = vec![Color::Red; n];
        let mut swaps = Vec::new();
        for row in (1..=rows).rev() {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hline, format!("missing line for row {row}")))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 3 {
                return Err(parse_err(ln, "expected three column cells"));
            }
            for (col, &cell) in tokens[..3].iter().enumerate() {
                let slot = (3 * (row - 1) + col < n).then_some(3 * (row - 1) + col);
                match (slot, cell) {
                    (None, ".") => {}
                    (None, _) => return Err(parse_err(ln, format!("column {col} must be empty"))),
                    (Some(_), "x") if row == 1 => {}
                    (Some(_), _) if row == 1 => {
                        return Err(parse_err(ln, "bottom row cells are written `x`"))
                    }
                    (Some(v), "R") => colors[v] = Color::Red,
                    (Some(v), "B") => colors[v] = Color::Blue,
                    (Some(_), other) => return Err(parse_err(ln, format!("bad cell `{other}`"))),
                }
            }
            let mut rest = tokens[3..].iter();
            while let Some(&word) = rest.next() {
                if word != "swap" {
                    return Err(parse_err(ln, format!("unexpected `{word}`")));
                }
                let spec = rest
                    .next()
                    .ok_or_else(|| parse_err(ln, "`swap` needs c<i>r<j>"))?;
                let (c, r) = spec
                    .strip_prefix('c')
                    .and_then(|s| s.split_once('r'))
                    .and_then(|(c, r)| Some((c.parse::<usize>().ok()?, r.parse::<usize>().ok()?)))
                    .ok_or_else(|| parse_err(ln, format!("bad swap `{spec}`")))?;
                if r != row {
                    return Err(parse_err(ln, format!("swap c{c}r{r} is not on row {row}")));
                }
                swaps.push((c, r));
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after the bottom row"));
        }
        Layout::new(n, colors, swaps).map_err(|e| parse_err(hline, e.to_string()))
    }
}

impl fmt::Debug for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
