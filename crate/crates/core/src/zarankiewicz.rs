//! Zarankiewicz numbers `z((m,n), K_{s,t})`: the most edges a subgraph of
//! `K_{m,n}` can have without containing `K_{s,t}` (`s` rows, `t` columns).

use std::collections::BTreeMap;
use std::fmt;

use crate::arrowing::SearchConfig;
use crate::bigraph::{BicliqueShape, BipartiteGraph};
use crate::error::{parse_err, Result};
use crate::search::{self, Family, FamilyKind, Problem, MAX_PATTERN_ROWS};

const BUNDLED: &str = include_str!("../data/z_bounds.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Upper bound quoted from the literature.
    Cited(String),
    ComputedExact,
    /// Search stopped on its node budget; `[lower, upper]` is what it proved.
    ComputedBounded,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Cited(c) => write!(f, "cited {c}"),
            Provenance::ComputedExact => f.write_str("exact"),
            Provenance::ComputedBounded => f.write_str("bounded"),
        }
    }
}

/// Key `(m, n, s, t)`.
pub type ZKey = (usize, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZEntry {
    pub m: usize,
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub lower: usize,
    pub upper: usize,
    pub extremal: Option<BipartiteGraph>,
    pub provenance: Provenance,
    /// Nodes explored to produce this entry (0 for cited data).
    pub nodes: u64,
}

impl ZEntry {
    pub fn key(&self) -> ZKey {
        (self.m, self.n, self.s, self.t)
    }

    pub fn is_exact(&self) -> bool {
        self.provenance == Provenance::ComputedExact
    }

    /// The same fact for `z((n,m), K_{t,s})`.
    pub fn transposed(&self) -> ZEntry {
        ZEntry {
            m: self.n,
            n: self.m,
            s: self.t,
            t: self.s,
            extremal: self.extremal.as_ref().map(BipartiteGraph::transpose),
            ..self.clone()
        }
    }
}

impl fmt::Display for ZEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n, s, t) = self.key();
        match self.provenance {
            Provenance::ComputedExact => {
                write!(f, "z(({m},{n}),K_{{{s},{t}}}) = {} exact", self.lower)
            }
            Provenance::ComputedBounded => write!(
                f,
                "z(({m},{n}),K_{{{s},{t}}}) in [{}, {}] bounded (nodes={})",
                self.lower, self.upper, self.nodes
            ),
            Provenance::Cited(ref c) => {
                write!(f, "z(({m},{n}),K_{{{s},{t}}}) <= {} cited {c}", self.upper)
            }
        }
    }
}

fn normalize(key: ZKey) -> (ZKey, bool) {
    let (m, n, s, t) = key;
    let flipped = (n, m, t, s);
    if flipped < key {
        (flipped, true)
    } else {
        (key, false)
    }
}

/// Entries keyed up to transposition `(m,n,s,t) ~ (n,m,t,s)`.
#[derive(Clone, Debug, Default)]
pub struct ZTable {
    entries: BTreeMap<ZKey, ZEntry>,
}

impl ZTable {
    pub fn new() -> Self {
        ZTable::default()
    }

    /// Inserts an entry, replacing any entry for the same normalized key.
    pub fn insert(&mut self, entry: ZEntry) {
        let (key, flipped) = normalize(entry.key());
        let entry = if flipped { entry.transposed() } else { entry };
        self.entries.insert(key, entry);
    }

    /// Inserts a computed entry, keeping the tighter upper bound if a cited
    /// one is already present.
    pub fn merge_computed(&mut self, entry: ZEntry) {
        match self.lookup(entry.m, entry.n, entry.s, entry.t) {
            Some(old) if !entry.is_exact() && old.upper < entry.upper => {}
            _ => self.insert(entry),
        }
    }

    pub fn lookup(&self, m: usize, n: usize, s: usize, t: usize) -> Option<ZEntry> {
        let (key, flipped) = normalize((m, n, s, t));
        let e = self.entries.get(&key)?;
        Some(if flipped { e.transposed() } else { e.clone() })
    }

    pub fn upper(&self, m: usize, n: usize, shape: BicliqueShape) -> Option<usize> {
        self.lookup(m, n, shape.s, shape.t).map(|e| e.upper)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in normalized-key order.
    pub fn iter(&self) -> impl Iterator<Item = &ZEntry> {
        self.entries.values()
    }

    /// Parses the data format: one `m n s t upper <citation>` per line, `#`
    /// comments allowed.
    pub fn parse(text: &str) -> Result<ZTable> {
        let mut table = ZTable::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 5 {
                return Err(parse_err(
                    lineno + 1,
                    "expected \"m n s t upper <citation>\"",
                ));
            }
            let nums = toks[..5]
                .iter()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| parse_err(lineno + 1, "non-numeric field"))?;
            if nums[2] == 0 || nums[3] == 0 {
                return Err(parse_err(lineno + 1, "shape sides must be positive"));
            }
            let key = normalize((nums[0], nums[1], nums[2], nums[3])).0;
            if table.entries.contains_key(&key) {
                return Err(parse_err(lineno + 1, "duplicate entry"));
            }
            table.insert(ZEntry {
                m: nums[0],
                n: nums[1],
                s: nums[2],
                t: nums[3],
                lower: 0,
                upper: nums[4],
                extremal: None,
                provenance: Provenance::Cited(toks[5..].join(" ")),
                nodes: 0,
            });
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in self.iter() {
            let cite = match &e.provenance {
                Provenance::Cited(c) => c.clone(),
                p => p.to_string(),
            };
            out.push_str(&format!(
                "{} {} {} {} {} {}\n",
                e.m, e.n, e.s, e.t, e.upper, cite
            ));
        }
        out
    }
}

/// The literature upper bounds shipped with the crate.
pub fn bundled_table() -> ZTable {
    ZTable::parse(BUNDLED).expect("bundled bound table parses")
}

/// Computes `z((m,n), K_{s,t})` by branch and bound over columns.
///
/// Falls back to `ComputedBounded` when a task runs out of nodes. Instances
/// whose shorter side exceeds 16 are rejected.
pub fn z_exact(m: usize, n: usize, s: usize, t: usize, config: &SearchConfig) -> Result<ZEntry> {
    let shape = BicliqueShape::new(s, t);
    if s > m || t > n {
        return Ok(ZEntry {
            m,
            n,
            s,
            t,
            lower: m * n,
            upper: m * n,
            extremal: Some(BipartiteGraph::complete(m, n)?),
            provenance: Provenance::ComputedExact,
            nodes: 0,
        });
    }
    // pattern rows run over the shorter side
    let transposed = m > n && n <= MAX_PATTERN_ROWS;
    let (rows, cols, pshape) = if transposed {
        (n, m, shape.transposed())
    } else {
        (m, n, shape)
    };
    let problem = Problem {
        rows,
        cols,
        families: Family::forbid(FamilyKind::Cover, rows, pshape)
            .into_iter()
            .collect(),
        max_column_weight: rows,
        edge_window: None,
    };
    problem.check()?;
    let out = problem.max_edges(config.node_budget, config.worker_count);
    let graph = out
        .best
        .as_ref()
        .map(|cols| search::to_graph(rows, cols, transposed));
    let lower = graph.as_ref().map_or(0, BipartiteGraph::edge_count);
    Ok(ZEntry {
        m,
        n,
        s,
        t,
        lower,
        upper: if out.complete {
            lower
        } else {
            out.upper.min(m * n)
        },
        extremal: graph,
        provenance: if out.complete {
            Provenance::ComputedExact
        } else {
            Provenance::ComputedBounded
        },
        nodes: out.nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyStatus {
    /// Exact value at most the cited bound.
    Consistent { exact: usize, cited: usize },
    /// Search was inconclusive but its lower bound does not exceed the citation.
    LowerOnly { lower: usize, cited: usize },
    /// A computed lower bound exceeds the cited upper bound.
    Violation { lower: usize, cited: usize },
    /// The key has no cited entry; the computed entry is reported for reference.
    Uncited(ZEntry),
    /// Too wide to search.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub lines: Vec<(ZKey, ConsistencyStatus)>,
}

impl ConsistencyReport {
    pub fn violations(&self) -> usize {
        self.lines
            .iter()
            .filter(|(_, s)| matches!(s, ConsistencyStatus::Violation { .. }))
            .count()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((m, n, s, t), status) in &self.lines {
            write!(f, "({m},{n},{s},{t}): ")?;
            match status {
                ConsistencyStatus::Consistent { exact, cited } => {
                    writeln!(f, "consistent exact {exact} <= {cited}")?
                }
                ConsistencyStatus::LowerOnly { lower, cited } => {
                    writeln!(f, "checked: lower {lower} <= {cited} only")?
                }
                ConsistencyStatus::Violation { lower, cited } => {
                    writeln!(f, "VIOLATION computed {lower} > cited {cited}")?
                }
                ConsistencyStatus::Uncited(e) => writeln!(f, "uncited ({e})")?,
                ConsistencyStatus::Skipped => writeln!(f, "skipped (too wide)")?,
            }
        }
        Ok(())
    }
}

/// Checks every entry of `table` against a fresh search.
pub fn consistency_check(table: &ZTable, config: &SearchConfig) -> ConsistencyReport {
    let keys: Vec<ZKey> = table.iter().map(ZEntry::key).collect();
    check_keys(table, &keys, config)
}

/// Like [`consistency_check`] for an explicit list of keys; keys missing from
/// the table are reported as uncited.
pub fn check_keys(table: &ZTable, keys: &[ZKey], config: &SearchConfig) -> ConsistencyReport {
    let mut lines = Vec::new();
    for &(m, n, s, t) in keys {
        let computed = z_exact(m, n, s, t, config);
        let status = match (table.lookup(m, n, s, t), computed) {
            (_, Err(_)) => ConsistencyStatus::Skipped,
            (None, Ok(e)) => ConsistencyStatus::Uncited(e),
            (Some(c), Ok(e)) if e.lower > c.upper => ConsistencyStatus::Violation {
                lower: e.lower,
                cited: c.upper,
            },
            (Some(c), Ok(e)) if e.is_exact() => ConsistencyStatus::Consistent {
                exact: e.lower,
                cited: c.upper,
            },
            (Some(c), Ok(e)) => ConsistencyStatus::LowerOnly {
                lower: e.lower,
                cited: c.upper,
            },
        };
        lines.push(((m, n, s, t), status));
    }
    ConsistencyReport { lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn bundled_contents() {
        let t = bundled_table();
        assert_eq!(t.len(), 14);
        assert_eq!(t.lookup(10, 14, 2, 2).unwrap().upper, 42);
        assert_eq!(t.lookup(14, 10, 2, 2).unwrap().upper, 42);
        assert_eq!(t.lookup(5, 6, 2, 2).unwrap().upper, 14);
        assert_eq!(t.lookup(8, 16, 4, 4).unwrap().upper, 90);
        assert!(t.lookup(2, 2, 2, 2).is_none());
        assert!(t
            .iter()
            .all(|e| matches!(e.provenance, Provenance::Cited(_))));
        let again = ZTable::parse(&t.to_text()).unwrap();
        assert_eq!(again.to_text(), t.to_text());
    }

    #[test]
    fn parse_rejects_duplicates_after_transpose() {
        assert!(ZTable::parse("3 4 2 2 7 a\n4 3 2 2 7 b\n").is_err());
        assert!(ZTable::parse("3 4 2\n").is_err());
    }

    #[test]
    fn tiny_values() {
        assert_eq!(z_exact(2, 2, 2, 2, &cfg()).unwrap().lower, 3);
        assert_eq!(z_exact(3, 3, 2, 2, &cfg()).unwrap().lower, 6);
        for n in 1..12 {
            let e = z_exact(1, n, 2, 2, &cfg()).unwrap();
            assert_eq!((e.lower, e.upper), (n, n));
            assert!(e.is_exact());
        }
        // transposed orientation
        assert_eq!(z_exact(20, 2, 2, 2, &cfg()).unwrap().lower, 21);
    }

    #[test]
    fn extremal_is_sound() {
        let e = z_exact(4, 7, 2, 2, &cfg()).unwrap();
        let g = e.extremal.unwrap();
        assert_eq!(g.edge_count(), e.lower);
        assert_eq!((g.m(), g.n()), (4, 7));
        assert!(g.contains_biclique(BicliqueShape::new(2, 2)).is_none());
    }

    #[test]
    fn budget_degrades_provenance() {
        let e = z_exact(
            6,
            8,
            2,
            2,
            &SearchConfig {
                node_budget: 5,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(e.provenance, Provenance::ComputedBounded);
        assert!(e.lower <= e.upper);
    }

    #[test]
    fn uncited_key_is_reported() {
        let r = check_keys(&bundled_table(), &[(2, 2, 2, 2), (5, 6, 2, 2)], &cfg());
        assert!(matches!(r.lines[0].1, ConsistencyStatus::Uncited(_)));
        assert!(matches!(
            r.lines[1].1,
            ConsistencyStatus::Consistent { cited: 14, .. }
        ));
        assert_eq!(r.violations(), 0);
    }
}
