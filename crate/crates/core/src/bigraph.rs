//! Bipartite graphs between an `X` side (rows) and a `Y` side (columns).
//!
//! Each row is stored as a [`ColSet`], a fixed-width bit vector over the
//! columns. Biclique detection, complements and neighborhood intersections all
//! reduce to word-level AND / popcount on these rows.

use std::fmt;

use crate::error::{parse_err, Error, Result};

/// Largest supported number of columns.
pub const MAX_SIDE: usize = WORDS * 64;

const WORDS: usize = 5;

/// A set of column indices `< MAX_SIDE`, one bit per column.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColSet([u64; WORDS]);

impl ColSet {
    pub const EMPTY: ColSet = ColSet([0; WORDS]);

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_SIDE);
        let mut w = [0u64; WORDS];
        for (k, word) in w.iter_mut().enumerate() {
            let lo = k * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        ColSet(w)
    }

    /// Builds a set from a bit mask over the first 64 columns.
    pub fn from_mask(mask: u64) -> Self {
        let mut w = [0u64; WORDS];
        w[0] = mask;
        ColSet(w)
    }

    #[inline]
    pub fn contains(self, j: usize) -> bool {
        j < MAX_SIDE && self.0[j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, j: usize) {
        self.0[j / 64] |= 1u64 << (j % 64);
    }

    #[inline]
    pub fn remove(&mut self, j: usize) {
        self.0[j / 64] &= !(1u64 << (j % 64));
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersect(self, other: ColSet) -> ColSet {
        ColSet(std::array::from_fn(|k| self.0[k] & other.0[k]))
    }

    #[inline]
    pub fn union(self, other: ColSet) -> ColSet {
        ColSet(std::array::from_fn(|k| self.0[k] | other.0[k]))
    }

    #[inline]
    pub fn is_subset(self, other: ColSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Complement relative to `{0..n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> ColSet {
        let full = ColSet::full(n);
        ColSet(std::array::from_fn(|k| !self.0[k] & full.0[k]))
    }

    /// The `k` smallest members, or `None` if there are fewer than `k`.
    pub fn first(self, k: usize) -> Option<ColSet> {
        if self.len() < k {
            return None;
        }
        Some(self.iter().take(k).collect())
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let words = self.0;
        (0..WORDS).flat_map(move |k| {
            let mut bits = words[k];
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(k * 64 + j)
                }
            })
        })
    }
}

impl FromIterator<usize> for ColSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ColSet::EMPTY;
        for j in iter {
            s.insert(j);
        }
        s
    }
}

impl fmt::Debug for ColSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Forbidden biclique `K_{s,t}`: `s` vertices on the X side, `t` on the Y side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BicliqueShape {
    pub s: usize,
    pub t: usize,
}

impl BicliqueShape {
    pub fn new(s: usize, t: usize) -> Self {
        assert!(s >= 1 && t >= 1, "biclique shape needs s, t >= 1");
        BicliqueShape { s, t }
    }

    /// The same pattern with the roles of the two sides swapped.
    pub fn transposed(self) -> Self {
        BicliqueShape {
            s: self.t,
            t: self.s,
        }
    }
}

impl fmt::Display for BicliqueShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{},{}}}", self.s, self.t)
    }
}

/// A concrete `K_{s,t}` occurrence: row indices and column indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
}

impl Biclique {
    /// Re-checks the occurrence edge by edge.
    pub fn is_in(&self, g: &BipartiteGraph) -> bool {
        self.row_set
            .iter()
            .all(|&i| i < g.m() && self.col_set.iter().all(|&j| g.has_edge(i, j)))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n: usize,
    rows: Vec<ColSet>,
}

impl BipartiteGraph {
    /// The edgeless graph on `m + n` vertices.
    pub fn empty(m: usize, n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(BipartiteGraph {
            n,
            rows: vec![ColSet::EMPTY; m],
        })
    }

    /// The complete graph `K_{m,n}`.
    pub fn complete(m: usize, n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(BipartiteGraph {
            n,
            rows: vec![ColSet::full(n); m],
        })
    }

    /// Builds a graph from explicit 0-based neighborhoods `lists[i] = N(x_i)`.
    /// Repeated indices collapse.
    pub fn from_neighbor_lists<L, I>(m: usize, n: usize, lists: L) -> Result<Self>
    where
        L: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        check_width(n)?;
        let mut rows = Vec::with_capacity(m);
        for (i, list) in lists.into_iter().enumerate() {
            let mut row = ColSet::EMPTY;
            for j in list {
                if j >= n {
                    return Err(Error::ColumnOutOfRange { row: i, col: j, n });
                }
                row.insert(j);
            }
            rows.push(row);
        }
        if rows.len() != m {
            return Err(Error::RowCountMismatch {
                expected: m,
                got: rows.len(),
            });
        }
        Ok(BipartiteGraph { n, rows })
    }

    /// Builds a graph from row bit-sets. Bits at or above `n` are rejected.
    pub fn from_rows(n: usize, rows: Vec<ColSet>) -> Result<Self> {
        check_width(n)?;
        for (i, r) in rows.iter().enumerate() {
            if !r.is_subset(ColSet::full(n)) {
                let col = r.iter().find(|&j| j >= n).unwrap_or(n);
                return Err(Error::ColumnOutOfRange { row: i, col, n });
            }
        }
        Ok(BipartiteGraph { n, rows })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> ColSet {
        self.rows[i]
    }

    pub fn rows(&self) -> &[ColSet] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert!(j < self.n, "column {j} out of range");
        if present {
            self.rows[i].insert(j);
        } else {
            self.rows[i].remove(j);
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// `Δ(G_X)`, the largest row degree (0 when there are no rows).
    pub fn max_degree_x(&self) -> usize {
        self.rows.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    /// Column degrees, counted directly from the rows.
    pub fn col_degrees(&self) -> Vec<usize> {
        (0..self.n)
            .map(|j| self.rows.iter().filter(|r| r.contains(j)).count())
            .collect()
    }

    pub fn complement(&self) -> BipartiteGraph {
        BipartiteGraph {
            n: self.n,
            rows: self.rows.iter().map(|r| r.complement(self.n)).collect(),
        }
    }

    /// Swaps the roles of X and Y.
    pub fn transpose(&self) -> BipartiteGraph {
        let mut rows = vec![ColSet::EMPTY; self.n];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter() {
                rows[j].insert(i);
            }
        }
        BipartiteGraph { n: self.m(), rows }
    }

    /// The subgraph induced on the first `m` rows and first `n` columns.
    pub fn restrict(&self, m: usize, n: usize) -> BipartiteGraph {
        assert!(m <= self.m() && n <= self.n);
        let keep = ColSet::full(n);
        BipartiteGraph {
            n,
            rows: self.rows[..m].iter().map(|r| r.intersect(keep)).collect(),
        }
    }

    /// `G ⊆ other` on identical vertex sets.
    pub fn is_subgraph_of(&self, other: &BipartiteGraph) -> bool {
        self.m() == other.m()
            && self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(*b))
    }

    /// Columns adjacent to every row in `rows`; all columns if `rows` is empty.
    pub fn common_neighborhood<I: IntoIterator<Item = usize>>(&self, rows: I) -> ColSet {
        rows.into_iter()
            .fold(ColSet::full(self.n), |acc, i| acc.intersect(self.rows[i]))
    }

    /// `|N(x_i) ∪ ...|` over the given rows.
    pub fn neighborhood_union<I: IntoIterator<Item = usize>>(&self, rows: I) -> ColSet {
        rows.into_iter()
            .fold(ColSet::EMPTY, |acc, i| acc.union(self.rows[i]))
    }

    /// Finds a `K_{s,t}` with `s` rows and `t` columns.
    ///
    /// Row subsets are enumerated in lexicographic order and a prefix is
    /// abandoned once its common neighborhood drops below `t`, so the witness
    /// returned is the lexicographically least `(row_set, col_set)` pair.
    pub fn contains_biclique(&self, shape: BicliqueShape) -> Option<Biclique> {
        if shape.s > self.m() || shape.t > self.n {
            return None;
        }
        let mut chosen = Vec::with_capacity(shape.s);
        let cols = self.biclique_rec(shape, 0, ColSet::full(self.n), &mut chosen)?;
        Some(Biclique {
            row_set: chosen,
            col_set: cols.iter().collect(),
        })
    }

    fn biclique_rec(
        &self,
        shape: BicliqueShape,
        start: usize,
        common: ColSet,
        chosen: &mut Vec<usize>,
    ) -> Option<ColSet> {
        if chosen.len() == shape.s {
            return common.first(shape.t);
        }
        let need = shape.s - chosen.len();
        for i in start..=self.m() - need {
            let next = common.intersect(self.rows[i]);
            if next.len() < shape.t {
                continue;
            }
            chosen.push(i);
            if let Some(c) = self.biclique_rec(shape, i + 1, next, chosen) {
                return Some(c);
            }
            chosen.pop();
        }
        None
    }

    /// Parses the matrix text format: `m n` then `m` lines of `n` characters
    /// from `{0,1}`.
    pub fn parse_matrix(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (m, n) = parse_header(lines.next())?;
        let mut rows = Vec::with_capacity(m);
        for (lineno, line) in lines {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            if rows.len() == m {
                return Err(parse_err(lineno + 1, "more rows than declared"));
            }
            if line.len() != n {
                return Err(parse_err(
                    lineno + 1,
                    format!("expected {n} characters, got {}", line.len()),
                ));
            }
            let mut row = ColSet::EMPTY;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '1' => row.insert(j),
                    '0' => {}
                    c => return Err(parse_err(lineno + 1, format!("unexpected character {c:?}"))),
                }
            }
            rows.push(row);
        }
        if rows.len() != m {
            return Err(parse_err(
                0,
                format!("expected {m} rows, got {}", rows.len()),
            ));
        }
        BipartiteGraph::from_rows(n, rows)
    }

    pub fn to_matrix_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m(), self.n);
        for r in &self.rows {
            for j in 0..self.n {
                out.push(if r.contains(j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the neighbor-list format: `m n` then one line per row holding
    /// 1-based column indices (an empty line is an empty neighborhood).
    /// Lines starting with `#` are comments.
    pub fn parse_neighbor_lists(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (m, n) = parse_header(lines.by_ref().find(|(_, l)| !l.trim().is_empty()))?;
        check_width(n)?;
        let mut rows = Vec::with_capacity(m);
        for (lineno, line) in lines {
            if rows.len() == m {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(parse_err(lineno + 1, "more rows than declared"));
            }
            let mut row = ColSet::EMPTY;
            for tok in line.split_whitespace() {
                let j: usize = tok
                    .parse()
                    .map_err(|_| parse_err(lineno + 1, format!("bad column index {tok:?}")))?;
                if j == 0 || j > n {
                    return Err(Error::ColumnOutOfRange {
                        row: rows.len(),
                        col: j.wrapping_sub(1),
                        n,
                    });
                }
                row.insert(j - 1);
            }
            rows.push(row);
        }
        // trailing empty neighborhoods may have been lost with trailing newlines
        while rows.len() < m {
            rows.push(ColSet::EMPTY);
        }
        BipartiteGraph::from_rows(n, rows)
    }

    pub fn to_neighbor_list_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m(), self.n);
        for r in &self.rows {
            let cols: Vec<String> = r.iter().map(|j| (j + 1).to_string()).collect();
            out.push_str(&cols.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BipartiteGraph {}x{}", self.m(), self.n)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_SIDE {
        Err(Error::TooWide(n))
    } else {
        Ok(())
    }
}

fn parse_header(line: Option<(usize, &str)>) -> Result<(usize, usize)> {
    let (lineno, line) = line.ok_or_else(|| parse_err(1, "missing header"))?;
    let mut it = line.split_whitespace().map(|t| t.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(m)), Some(Ok(n)), None) => Ok((m, n)),
        _ => Err(parse_err(lineno + 1, "header must be \"m n\"")),
    }
}

/// All `k`-subsets of `{0..n-1}` as bit masks, in lexicographic order of their
/// sorted index vectors.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    fn rec(n: usize, k: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            rec(n, k - 1, i + 1, acc | 1 << i, out);
        }
    }
    assert!(n <= 32);
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, 0, &mut out);
    }
    out
}
