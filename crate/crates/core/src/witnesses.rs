//! Explicit good colorings and the set-size claims made about them.
//!
//! A witness is a subgraph `G ⊆ K_{m,n}` meant to avoid one biclique in `G`
//! and another in the complement. Every numeric claim attached to a witness is
//! recomputed by [`verify_witness`]; a refuted claim is reported, never raised.

use std::fmt;

use crate::bigraph::{subsets_of_size, Biclique, BicliqueShape, BipartiteGraph};
use crate::error::{parse_err, Error, Result};

/// A checkable statement about the neighborhoods of a set of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    /// `|N(x_i) ∩ N(x_j)| = value` for every pair `i < j` in `rows`.
    PairwiseIntersection,
    /// `|N(x_i)| = value` for every `i` in `rows`.
    Degree,
    /// `|∪ N(x_i)| = value` over every `k`-subset of `rows`.
    UnionOfEach { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub kind: ClaimKind,
    /// 0-based rows the claim ranges over.
    pub rows: Vec<usize>,
    pub value: usize,
}

impl Claim {
    fn new(
        name: &str,
        kind: ClaimKind,
        rows: impl IntoIterator<Item = usize>,
        value: usize,
    ) -> Self {
        Claim {
            name: name.to_string(),
            kind,
            rows: rows.into_iter().collect(),
            value,
        }
    }

    pub fn describe(&self) -> String {
        let rows = fmt_rows(&self.rows);
        match self.kind {
            ClaimKind::PairwiseIntersection => {
                format!("|N(x_i) ∩ N(x_j)| = {} for all i < j in {rows}", self.value)
            }
            ClaimKind::Degree => format!("|N(x_i)| = {} for all i in {rows}", self.value),
            ClaimKind::UnionOfEach { k } if k == self.rows.len() => {
                format!("|∪ N(x_i)| = {} over {rows}", self.value)
            }
            ClaimKind::UnionOfEach { k } => {
                format!(
                    "|∪ N(x_i)| = {} over every {k}-subset of {rows}",
                    self.value
                )
            }
        }
    }

    /// Evaluates the claim on `g`, collecting every instance whose size differs.
    pub fn evaluate(&self, g: &BipartiteGraph) -> ClaimResult {
        let groups: Vec<Vec<usize>> = match self.kind {
            ClaimKind::Degree => self.rows.iter().map(|&i| vec![i]).collect(),
            ClaimKind::PairwiseIntersection => choose(&self.rows, 2),
            ClaimKind::UnionOfEach { k } => choose(&self.rows, k),
        };
        let mut observed = Vec::new();
        let mut counterexamples = Vec::new();
        for group in groups {
            let size = match self.kind {
                ClaimKind::PairwiseIntersection => {
                    g.common_neighborhood(group.iter().copied()).len()
                }
                _ => g.neighborhood_union(group.iter().copied()).len(),
            };
            if !observed.contains(&size) {
                observed.push(size);
            }
            if size != self.value {
                counterexamples.push((group, size));
            }
        }
        observed.sort_unstable();
        ClaimResult {
            name: self.name.clone(),
            statement: self.describe(),
            expected: self.value,
            observed,
            counterexamples,
        }
    }

    fn to_comment(&self) -> String {
        let kind = match self.kind {
            ClaimKind::PairwiseIntersection => "intersect2".to_string(),
            ClaimKind::Degree => "degree".to_string(),
            ClaimKind::UnionOfEach { k } => format!("union{k}"),
        };
        let rows: Vec<String> = self.rows.iter().map(|i| (i + 1).to_string()).collect();
        format!(
            "# claim: {} = {} {} rows {}",
            self.name,
            self.value,
            kind,
            rows.join(",")
        )
    }

    fn from_comment(line: usize, body: &str) -> Result<Self> {
        let (name, rest) = body
            .split_once('=')
            .ok_or_else(|| parse_err(line, "claim must read \"<name> = <value> ...\""))?;
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let bad = || parse_err(line, format!("malformed claim {body:?}"));
        if toks.len() != 4 || toks[2] != "rows" {
            return Err(bad());
        }
        let value = toks[0].parse().map_err(|_| bad())?;
        let kind = match toks[1] {
            "intersect2" => ClaimKind::PairwiseIntersection,
            "degree" => ClaimKind::Degree,
            k => ClaimKind::UnionOfEach {
                k: k.strip_prefix("union")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(bad)?,
            },
        };
        let rows = toks[3]
            .split(',')
            .map(|r| r.parse::<usize>().ok().filter(|&r| r >= 1).map(|r| r - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Ok(Claim {
            name: name.trim().to_string(),
            kind,
            rows,
            value,
        })
    }
}

fn fmt_rows(rows: &[usize]) -> String {
    let names: Vec<String> = rows.iter().map(|i| format!("x{}", i + 1)).collect();
    format!("{{{}}}", names.join(","))
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if items.len() > 32 {
        // only small row sets are ever claimed about
        panic!("claim ranges over too many rows");
    }
    subsets_of_size(items.len(), k)
        .into_iter()
        .map(|mask| {
            (0..items.len())
                .filter(|p| mask >> p & 1 == 1)
                .map(|p| items[p])
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub name: String,
    pub statement: String,
    pub expected: usize,
    /// Distinct sizes seen across all instances of the claim.
    pub observed: Vec<usize>,
    /// `(rows, size)` for every instance that disagrees with `expected`.
    pub counterexamples: Vec<(Vec<usize>, usize)>,
}

impl ClaimResult {
    pub fn confirmed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecord {
    pub name: String,
    pub graph: BipartiteGraph,
    pub avoid_in_g: BicliqueShape,
    pub avoid_in_complement: BicliqueShape,
    pub claims: Vec<Claim>,
    pub source: String,
}

/// Outcome of [`verify_witness`].
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub avoid_in_g: BicliqueShape,
    pub avoid_in_complement: BicliqueShape,
    /// Least occurrence of `avoid_in_g` in `G`, if any.
    pub in_g: Option<Biclique>,
    /// Least occurrence of `avoid_in_complement` in the complement, if any.
    pub in_complement: Option<Biclique>,
    pub claims: Vec<ClaimResult>,
}

impl PropertyReport {
    /// `G` avoids the first shape and its complement avoids the second,
    /// regardless of what the attached claims say.
    pub fn good_coloring(&self) -> bool {
        self.in_g.is_none() && self.in_complement.is_none()
    }

    pub fn all_claims_confirmed(&self) -> bool {
        self.claims.iter().all(ClaimResult::confirmed)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = |b: &Option<Biclique>| match b {
            None => "free".to_string(),
            Some(b) => format!(
                "CONTAINED at rows {} cols {{{}}}",
                fmt_rows(&b.row_set),
                b.col_set
                    .iter()
                    .map(|j| format!("y{}", j + 1))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        };
        writeln!(f, "witness {} ({}x{})", self.name, self.m, self.n)?;
        writeln!(f, "  G: {} {}", self.avoid_in_g, free(&self.in_g))?;
        writeln!(
            f,
            "  complement: {} {}",
            self.avoid_in_complement,
            free(&self.in_complement)
        )?;
        for c in &self.claims {
            let verdict = if c.confirmed() {
                "confirmed"
            } else {
                "refuted (paper-discrepancy)"
            };
            let observed: Vec<String> = c.observed.iter().map(|v| v.to_string()).collect();
            write!(
                f,
                "  claim {}: {} | expected {} computed {} | {}",
                c.name,
                c.statement,
                c.expected,
                observed.join("/"),
                verdict
            )?;
            if let Some((rows, size)) = c.counterexamples.first() {
                write!(f, " (first counterexample {} -> {size})", fmt_rows(rows))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "  good_coloring = {}", self.good_coloring())
    }
}

pub fn verify_witness(w: &WitnessRecord) -> PropertyReport {
    let g = &w.graph;
    PropertyReport {
        name: w.name.clone(),
        m: g.m(),
        n: g.n(),
        avoid_in_g: w.avoid_in_g,
        avoid_in_complement: w.avoid_in_complement,
        in_g: g.contains_biclique(w.avoid_in_g),
        in_complement: g.complement().contains_biclique(w.avoid_in_complement),
        claims: w.claims.iter().map(|c| c.evaluate(g)).collect(),
    }
}

fn k22() -> BicliqueShape {
    BicliqueShape::new(2, 2)
}

fn k44() -> BicliqueShape {
    BicliqueShape::new(4, 4)
}

/// Converts 1-based neighborhoods to a graph.
fn one_based(m: usize, n: usize, lists: &[&[usize]]) -> BipartiteGraph {
    BipartiteGraph::from_neighbor_lists(m, n, lists.iter().map(|l| l.iter().map(|&j| j - 1)))
        .expect("builtin witness data is in range")
}

/// Five rows of degree 7 on 25 columns, pairwise meeting in one column.
pub fn witness_5_25() -> WitnessRecord {
    let graph = one_based(
        5,
        25,
        &[
            &[1, 2, 3, 4, 5, 6, 7],
            &[1, 8, 9, 10, 11, 12, 13],
            &[2, 8, 14, 15, 16, 17, 18],
            &[3, 9, 14, 19, 20, 21, 22],
            &[4, 10, 15, 19, 23, 24, 25],
        ],
    );
    WitnessRecord {
        name: "paper-5x25".into(),
        graph,
        avoid_in_g: k22(),
        avoid_in_complement: k44(),
        claims: vec![
            Claim::new("pairwise", ClaimKind::PairwiseIntersection, 0..5, 1),
            Claim::new("degree", ClaimKind::Degree, 0..5, 7),
            Claim::new("union-of-four", ClaimKind::UnionOfEach { k: 4 }, 0..5, 22),
        ],
        source: "explicit lower-bound coloring for m = 5 (BR_5 >= 26)".into(),
    }
}

/// Seven rows of degree 6 on 21 columns; any two rows meet in one column and
/// any four rows cover 18 columns.
pub fn witness_7_21() -> WitnessRecord {
    let graph = one_based(
        7,
        21,
        &[
            &[1, 2, 3, 4, 5, 6],
            &[1, 7, 8, 9, 10, 11],
            &[2, 7, 12, 13, 14, 15],
            &[3, 8, 12, 16, 17, 18],
            &[4, 9, 13, 16, 19, 20],
            &[5, 10, 14, 17, 19, 21],
            &[6, 11, 15, 18, 20, 21],
        ],
    );
    WitnessRecord {
        name: "paper-7x21".into(),
        graph,
        avoid_in_g: k22(),
        avoid_in_complement: k44(),
        claims: vec![
            Claim::new("E1", ClaimKind::PairwiseIntersection, 0..7, 1),
            Claim::new("E2", ClaimKind::UnionOfEach { k: 4 }, 0..7, 18),
        ],
        source: "explicit lower-bound coloring for m = 6, 7 (BR_7 >= 22)".into(),
    }
}

/// The 8x15 coloring, given as the 15x8 incidence block (rows are `y_j`,
/// columns are `x_i`) and transcribed without corrections.
const BLOCK_8_15: [[u8; 8]; 15] = [
    [1, 1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 1, 0],
    [1, 0, 0, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1],
];

pub fn witness_8_15() -> WitnessRecord {
    let lists: Vec<Vec<usize>> = (0..8)
        .map(|i| (0..15).filter(|&j| BLOCK_8_15[j][i] == 1).collect())
        .collect();
    let graph = BipartiteGraph::from_neighbor_lists(8, 15, lists)
        .expect("builtin witness data is in range");
    let x1 = 0..4;
    let x2 = 4..8;
    WitnessRecord {
        name: "paper-8x15".into(),
        graph,
        avoid_in_g: k22(),
        avoid_in_complement: k44(),
        claims: vec![
            Claim::new("P1", ClaimKind::PairwiseIntersection, 0..8, 1),
            Claim::new("P2", ClaimKind::Degree, x1.clone(), 4),
            Claim::new("P3", ClaimKind::Degree, x2.clone(), 5),
            Claim::new("P4", ClaimKind::UnionOfEach { k: 4 }, x1.clone(), 13),
            Claim::new("P5", ClaimKind::UnionOfEach { k: 4 }, x2.clone(), 14),
            Claim::new("M1", ClaimKind::UnionOfEach { k: 2 }, x1.clone(), 7),
            Claim::new("M2", ClaimKind::UnionOfEach { k: 3 }, x1, 10),
            Claim::new("M3", ClaimKind::UnionOfEach { k: 2 }, x2.clone(), 9),
            Claim::new("M4", ClaimKind::UnionOfEach { k: 3 }, x2, 12),
        ],
        source: "explicit lower-bound coloring for m = 8 (BR_8 >= 16)".into(),
    }
}

/// A good coloring of `K_{m,n}` for `(K_{2,2}, K_{4,4})` when `m <= 4`, for
/// every `n`: empty for `m <= 3`, otherwise column `j` joined to row `j mod 4`.
pub fn nonexistence_family(m: usize, n: usize) -> Result<BipartiteGraph> {
    if !(1..=4).contains(&m) {
        return Err(Error::FamilyOutOfRange(m));
    }
    let mut g = BipartiteGraph::empty(m, n)?;
    if m == 4 {
        for j in 0..n {
            g.set_edge(j % 4, j, true);
        }
    }
    Ok(g)
}

/// Wraps [`nonexistence_family`] as a witness record.
pub fn nonexistence_witness(m: usize, n: usize) -> Result<WitnessRecord> {
    Ok(WitnessRecord {
        name: format!("family-{m}x{n}"),
        graph: nonexistence_family(m, n)?,
        avoid_in_g: k22(),
        avoid_in_complement: k44(),
        claims: if m == 4 {
            vec![Claim::new(
                "degree-1-columns",
                ClaimKind::UnionOfEach { k: 4 },
                0..4,
                n,
            )]
        } else {
            Vec::new()
        },
        source: "constructed family for m <= 4".into(),
    })
}

pub const BUILTIN_NAMES: [&str; 3] = ["paper-5x25", "paper-7x21", "paper-8x15"];

pub fn builtin(name: &str) -> Result<WitnessRecord> {
    match name {
        "paper-5x25" => Ok(witness_5_25()),
        "paper-7x21" => Ok(witness_7_21()),
        "paper-8x15" => Ok(witness_8_15()),
        other => Err(Error::UnknownWitness(other.to_string())),
    }
}

impl WitnessRecord {
    /// A record with no claims, checked for the given pair of shapes.
    pub fn bare(
        name: impl Into<String>,
        graph: BipartiteGraph,
        g_shape: BicliqueShape,
        c_shape: BicliqueShape,
    ) -> Self {
        WitnessRecord {
            name: name.into(),
            graph,
            avoid_in_g: g_shape,
            avoid_in_complement: c_shape,
            claims: Vec::new(),
            source: String::new(),
        }
    }

    /// Serializes as the neighbor-list format preceded by `#` header lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# name: {}\n", self.name));
        out.push_str(&format!(
            "# avoid: {} {} {} {}\n",
            self.avoid_in_g.s,
            self.avoid_in_g.t,
            self.avoid_in_complement.s,
            self.avoid_in_complement.t
        ));
        if !self.source.is_empty() {
            out.push_str(&format!("# source: {}\n", self.source));
        }
        for c in &self.claims {
            out.push_str(&c.to_comment());
            out.push('\n');
        }
        out.push_str(&self.graph.to_neighbor_list_text());
        out
    }

    /// Inverse of [`WitnessRecord::to_text`]. A file without an `# avoid:`
    /// line defaults to `(K_{2,2}, K_{4,4})`.
    pub fn from_text(text: &str) -> Result<Self> {
        let graph = BipartiteGraph::parse_neighbor_lists(text)?;
        let mut w = WitnessRecord::bare("unnamed", graph, k22(), k44());
        for (lineno, line) in text.lines().enumerate() {
            let Some(body) = line.trim_start().strip_prefix('#') else {
                continue;
            };
            let body = body.trim();
            if let Some(name) = body.strip_prefix("name:") {
                w.name = name.trim().to_string();
            } else if let Some(src) = body.strip_prefix("source:") {
                w.source = src.trim().to_string();
            } else if let Some(avoid) = body.strip_prefix("avoid:") {
                let v: Vec<usize> = avoid
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| parse_err(lineno + 1, "avoid needs four integers"))?;
                if v.len() != 4 || v.contains(&0) {
                    return Err(parse_err(lineno + 1, "avoid needs four positive integers"));
                }
                w.avoid_in_g = BicliqueShape::new(v[0], v[1]);
                w.avoid_in_complement = BicliqueShape::new(v[2], v[3]);
            } else if let Some(claim) = body.strip_prefix("claim:") {
                let c = Claim::from_comment(lineno + 1, claim)?;
                if c.rows.iter().any(|&r| r >= w.graph.m()) {
                    return Err(parse_err(lineno + 1, "claim names a row outside the graph"));
                }
                w.claims.push(c);
            }
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_by_twenty_five() {
        let w = witness_5_25();
        let g = &w.graph;
        assert_eq!(g.row_degrees(), vec![7; 5]);
        assert_eq!(g.edge_count(), 35);
        assert_eq!(g.complement().edge_count(), 90);
        assert_eq!(g.max_degree_x(), 7);
        assert_eq!(
            g.row(3).iter().map(|j| j + 1).collect::<Vec<_>>(),
            vec![3, 9, 14, 19, 20, 21, 22]
        );
        assert_eq!(
            g.common_neighborhood([0, 1]).iter().collect::<Vec<_>>(),
            vec![0]
        );
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(g.common_neighborhood([i, j]).len(), 1);
            }
            assert_eq!(g.neighborhood_union((0..5).filter(|&k| k != i)).len(), 22);
        }
        let r = verify_witness(&w);
        assert!(r.good_coloring());
        assert!(r.all_claims_confirmed());
    }

    #[test]
    fn seven_by_twenty_one() {
        let w = witness_7_21();
        let g = &w.graph;
        assert_eq!(g.max_degree_x(), 6);
        assert_eq!(g.neighborhood_union(0..4).len(), 18);
        for rows in choose(&(0..7).collect::<Vec<_>>(), 4) {
            let uncovered = g.neighborhood_union(rows).complement(21).len();
            assert_eq!(uncovered, 3);
        }
        assert!(g.complement().contains_biclique(k44()).is_none());
        let r = verify_witness(&w);
        assert!(r.good_coloring());
        assert!(r.all_claims_confirmed());
    }

    #[test]
    fn eight_by_fifteen_transcription() {
        let g = witness_8_15().graph;
        assert_eq!(g.row(0).iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(g.contains_biclique(k22()).is_none());
        // the literal matrix leaves a K_{4,4} in the complement
        let b = g.complement().contains_biclique(k44()).unwrap();
        assert_eq!(
            (b.row_set, b.col_set),
            (vec![0, 1, 3, 7], vec![7, 8, 9, 13])
        );
        assert!(g.common_neighborhood([2, 7]).is_empty());
        assert_eq!(g.row(7).len(), 4);
    }

    #[test]
    fn family_rejects_large_m() {
        assert_eq!(nonexistence_family(5, 3), Err(Error::FamilyOutOfRange(5)));
        assert_eq!(nonexistence_family(0, 3), Err(Error::FamilyOutOfRange(0)));
        let g = nonexistence_family(3, 100).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.complement().contains_biclique(k44()).is_none());
    }

    #[test]
    fn refuted_claim_is_data() {
        let mut w = witness_5_25();
        w.claims
            .push(Claim::new("wrong", ClaimKind::Degree, 0..2, 6));
        let r = verify_witness(&w);
        assert!(r.good_coloring());
        let bad = r.claims.last().unwrap();
        assert!(!bad.confirmed());
        assert_eq!(bad.observed, vec![7]);
        assert_eq!(bad.counterexamples.len(), 2);
        assert!(r.to_string().contains("refuted"));
    }

    #[test]
    fn witness_text_roundtrip() {
        for name in BUILTIN_NAMES {
            let w = builtin(name).unwrap();
            assert_eq!(WitnessRecord::from_text(&w.to_text()).unwrap(), w);
        }
        let w = nonexistence_witness(4, 9).unwrap();
        assert_eq!(WitnessRecord::from_text(&w.to_text()).unwrap(), w);
        assert!(builtin("paper-9x9").is_err());
        assert!(WitnessRecord::from_text("# claim: x = 1 degree rows 9\n2 2\n1\n2\n").is_err());
    }
}
