//! Deciding `K_{m,n} -> (H1, H2)` with certificates, and scanning `n` for
//! the m-bipartite Ramsey number `BR_m(H1, H2)`.
//!
//! `Arrows` means no good coloring exists: every subgraph `G` of `K_{m,n}`
//! contains `H1`, or its complement contains `H2`.

use std::fmt;

use crate::bigraph::{BicliqueShape, BipartiteGraph};
use crate::search::{self, Family, FamilyKind, Objective, Problem, MAX_PATTERN_ROWS};
use crate::witnesses::{verify_witness, WitnessRecord};
use crate::zarankiewicz::{bundled_table, Provenance, ZTable};

/// Printed at the head of every decision report.
pub const POLARITY: &str =
    "# polarity: ARROWS = no good coloring exists (every G has H1 in G or H2 in the complement); NOT-ARROWS = a good coloring exists";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Nodes allowed in each top-level search task.
    pub node_budget: u64,
    /// Cap `Δ(G_X)` using the degree lemmas for `(K_{2,2}, K_{4,4})`.
    pub use_degree_lemmas: bool,
    /// Restrict `|E(G)|` to the window implied by the bound table.
    pub use_edge_window: bool,
    pub worker_count: usize,
    /// Results never depend on `worker_count`; kept for the CLI contract.
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 50_000_000,
            use_degree_lemmas: true,
            use_edge_window: true,
            worker_count: 1,
            deterministic: true,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget: node_budget.max(1),
            ..SearchConfig::default()
        }
    }

    /// Plain search: no lemma or window pruning.
    pub fn unpruned(self) -> Self {
        SearchConfig {
            use_degree_lemmas: false,
            use_edge_window: false,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Arrows,
    NotArrows,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `host_m * host_n > z1_upper + z2_upper` on a sub-host of `K_{m,n}`.
    Counting {
        host_m: usize,
        host_n: usize,
        z1_upper: usize,
        z2_upper: usize,
        citations: Vec<String>,
    },
    /// The search space was exhausted without finding a good coloring.
    Exhaustive { nodes: u64 },
    /// An external solver reported the CNF encoding unsatisfiable.
    ExternalSat {
        digest: String,
        solver_verdict: String,
    },
    /// A verified good coloring.
    Witness { graph: BipartiteGraph },
    /// No certificate: the budget ran out.
    Budget { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecision {
    pub m: usize,
    pub n: usize,
    pub shape1: BicliqueShape,
    pub shape2: BicliqueShape,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl ArrowDecision {
    /// One report line; `witness_path` names the file a witness was written to.
    pub fn report_line(&self, witness_path: Option<&str>) -> String {
        let (m, n) = (self.m, self.n);
        let tag = match self.verdict {
            Verdict::Arrows => "ARROWS",
            Verdict::NotArrows => "NOT-ARROWS",
            Verdict::Unknown => "UNKNOWN",
        };
        let cert = match &self.certificate {
            Certificate::Counting {
                host_m,
                host_n,
                z1_upper,
                z2_upper,
                ..
            } => {
                format!("certificate=counting host={host_m}x{host_n} edges={} z1={z1_upper} z2={z2_upper}", host_m * host_n)
            }
            Certificate::Exhaustive { nodes } => format!("certificate=exhaustive nodes={nodes}"),
            Certificate::ExternalSat {
                digest,
                solver_verdict,
            } => {
                format!("certificate=external-sat verdict={solver_verdict} digest={digest}")
            }
            Certificate::Witness { graph } => match witness_path {
                Some(p) => format!("witness={p} edges={}", graph.edge_count()),
                None => format!("witness=inline edges={}", graph.edge_count()),
            },
            Certificate::Budget { nodes } => format!("nodes={nodes}"),
        };
        format!("{tag} {m} {n} | {} {} | {cert}", self.shape1, self.shape2)
    }

    pub fn witness(&self) -> Option<&BipartiteGraph> {
        match &self.certificate {
            Certificate::Witness { graph } => Some(graph),
            _ => None,
        }
    }

    /// Checks the certificate invariants: witnesses verify as good colorings,
    /// counting certificates satisfy the strict inequality.
    pub fn is_sound(&self) -> bool {
        match (&self.verdict, &self.certificate) {
            (Verdict::NotArrows, Certificate::Witness { graph }) => {
                graph.m() == self.m
                    && graph.n() == self.n
                    && verify_witness(&WitnessRecord::bare(
                        "decision",
                        graph.clone(),
                        self.shape1,
                        self.shape2,
                    ))
                    .good_coloring()
            }
            (
                Verdict::Arrows,
                Certificate::Counting {
                    host_m,
                    host_n,
                    z1_upper,
                    z2_upper,
                    ..
                },
            ) => host_m <= &self.m && host_n <= &self.n && host_m * host_n > z1_upper + z2_upper,
            (Verdict::Arrows, Certificate::Exhaustive { .. } | Certificate::ExternalSat { .. }) => {
                true
            }
            (Verdict::Unknown, Certificate::Budget { .. }) => true,
            _ => false,
        }
    }
}

impl fmt::Display for ArrowDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report_line(None))
    }
}

/// Result of the counting test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountingCheck {
    Certified(ArrowDecision),
    /// Both bounds known on the full host but `m*n <= z1 + z2`.
    Inconclusive {
        edges: usize,
        z1_upper: usize,
        z2_upper: usize,
    },
    /// No bound for one or both shapes on the full host.
    MissingData {
        shape1: bool,
        shape2: bool,
    },
}

impl CountingCheck {
    pub fn decision(&self) -> Option<&ArrowDecision> {
        match self {
            CountingCheck::Certified(d) => Some(d),
            _ => None,
        }
    }
}

fn citation(table: &ZTable, m: usize, n: usize, shape: BicliqueShape) -> String {
    match table.lookup(m, n, shape.s, shape.t).map(|e| e.provenance) {
        Some(Provenance::Cited(c)) => format!("z(({m},{n}),{shape})<= {c}"),
        Some(p) => format!("z(({m},{n}),{shape}) {p}"),
        None => String::new(),
    }
}

/// Certifies arrowing when the edges of some sub-host `K_{m',n'} ⊆ K_{m,n}`
/// exceed the sum of the two Zarankiewicz upper bounds. The full host is
/// tried first, then sub-hosts in decreasing `(m', n')` order.
pub fn counting_certificate(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    table: &ZTable,
) -> CountingCheck {
    let mut hosts: Vec<(usize, usize)> = table
        .iter()
        .flat_map(|e| [(e.m, e.n), (e.n, e.m)])
        .filter(|&(a, b)| a <= m && b <= n)
        .collect();
    hosts.push((m, n));
    hosts.sort_unstable_by(|a, b| b.cmp(a));
    hosts.dedup();
    for (hm, hn) in hosts {
        let (Some(z1), Some(z2)) = (table.upper(hm, hn, shape1), table.upper(hm, hn, shape2))
        else {
            continue;
        };
        if hm * hn > z1 + z2 {
            return CountingCheck::Certified(ArrowDecision {
                m,
                n,
                shape1,
                shape2,
                verdict: Verdict::Arrows,
                certificate: Certificate::Counting {
                    host_m: hm,
                    host_n: hn,
                    z1_upper: z1,
                    z2_upper: z2,
                    citations: vec![
                        citation(table, hm, hn, shape1),
                        citation(table, hm, hn, shape2),
                    ],
                },
            });
        }
    }
    match (table.upper(m, n, shape1), table.upper(m, n, shape2)) {
        (Some(z1), Some(z2)) => CountingCheck::Inconclusive {
            edges: m * n,
            z1_upper: z1,
            z2_upper: z2,
        },
        (a, b) => CountingCheck::MissingData {
            shape1: a.is_none(),
            shape2: b.is_none(),
        },
    }
}

/// Inclusive range of `|E(G)|` a good coloring of `K_{m,n}` can have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeWindow {
    pub min_edges: usize,
    pub max_edges: usize,
}

impl EdgeWindow {
    pub fn is_empty(&self) -> bool {
        self.min_edges > self.max_edges
    }
}

impl fmt::Display for EdgeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty [{}, {}]", self.min_edges, self.max_edges)
        } else {
            write!(f, "[{}, {}]", self.min_edges, self.max_edges)
        }
    }
}

/// `[m*n - z2, z1]`, with missing bounds left open (`0` or `m*n`).
pub fn edge_window(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    table: &ZTable,
) -> EdgeWindow {
    let total = m * n;
    EdgeWindow {
        min_edges: table
            .upper(m, n, shape2)
            .map_or(0, |z2| total.saturating_sub(z2)),
        max_edges: table.upper(m, n, shape1).map_or(total, |z1| z1.min(total)),
    }
}

/// Upper bound on `Δ(G_X)` for any good coloring of `K_{m,n}` for
/// `(K_{2,2}, K_{4,4})`.
///
/// A row of degree 8 meets every other row's neighborhood in at most one
/// column, so four other rows leave four of its columns uncovered; with nine
/// rows, degree 7 suffices by pigeonhole.
pub fn degree_cap(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
) -> Option<usize> {
    if shape1 != BicliqueShape::new(2, 2) || shape2 != BicliqueShape::new(4, 4) {
        return None;
    }
    if m >= 9 && n >= 9 {
        Some(6)
    } else if m >= 5 && n >= 8 {
        Some(7)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(BipartiteGraph),
    /// Exhaustive search proved there is no good coloring.
    NoneExists {
        nodes: u64,
    },
    /// Budget ran out first.
    Unknown {
        nodes: u64,
    },
}

/// Looks for a good coloring of `K_{m,n}`: `G` free of `shape1`, complement
/// free of `shape2`.
pub fn search_good_coloring(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    config: &SearchConfig,
) -> crate::Result<SearchOutcome> {
    let window = config
        .use_edge_window
        .then(|| edge_window(m, n, shape1, shape2, &bundled_table()));
    search_good_coloring_within(m, n, shape1, shape2, window, config)
}

/// [`search_good_coloring`] restricted to colorings whose edge count lies in
/// `window`; `config.use_edge_window` is ignored.
pub fn search_good_coloring_within(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    window: Option<EdgeWindow>,
    config: &SearchConfig,
) -> crate::Result<SearchOutcome> {
    // pattern rows run over the shorter side
    let transposed = m > n && n <= MAX_PATTERN_ROWS || m > MAX_PATTERN_ROWS;
    let (rows, cols) = if transposed { (n, m) } else { (m, n) };
    let (p1, p2) = if transposed {
        (shape1.transposed(), shape2.transposed())
    } else {
        (shape1, shape2)
    };
    let mut families: Vec<Family> = Vec::new();
    families.extend(Family::forbid(FamilyKind::Cover, rows, p1));
    families.extend(Family::forbid(FamilyKind::Avoid, rows, p2));
    let mut max_column_weight = rows;
    if config.use_degree_lemmas {
        if let Some(cap) = degree_cap(m, n, shape1, shape2) {
            if transposed {
                max_column_weight = max_column_weight.min(cap);
            } else {
                families.push(Family::row_degree_cap(rows, cap));
            }
        }
    }
    let edge_window = window.map(|w| (w.min_edges, w.max_edges));
    let problem = Problem {
        rows,
        cols,
        families,
        max_column_weight,
        edge_window,
    };
    problem.check()?;
    let out = problem.solve(
        Objective::Feasible,
        config.node_budget,
        config.worker_count,
        None,
    );
    Ok(match out.best {
        Some(columns) => {
            let g = search::to_graph(rows, &columns, transposed);
            assert!(
                g.contains_biclique(shape1).is_none()
                    && g.complement().contains_biclique(shape2).is_none(),
                "search returned an invalid coloring"
            );
            assert!(window.is_none_or(|w| (w.min_edges..=w.max_edges).contains(&g.edge_count())));
            SearchOutcome::Found(g)
        }
        None if out.complete => SearchOutcome::NoneExists { nodes: out.nodes },
        None => SearchOutcome::Unknown { nodes: out.nodes },
    })
}

/// Decides arrowing: counting certificate first, then search.
pub fn arrows(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    config: &SearchConfig,
) -> crate::Result<ArrowDecision> {
    if let CountingCheck::Certified(d) =
        counting_certificate(m, n, shape1, shape2, &bundled_table())
    {
        return Ok(d);
    }
    let decision = |verdict, certificate| ArrowDecision {
        m,
        n,
        shape1,
        shape2,
        verdict,
        certificate,
    };
    Ok(match search_good_coloring(m, n, shape1, shape2, config)? {
        SearchOutcome::Found(graph) => decision(Verdict::NotArrows, Certificate::Witness { graph }),
        SearchOutcome::NoneExists { nodes } => {
            decision(Verdict::Arrows, Certificate::Exhaustive { nodes })
        }
        SearchOutcome::Unknown { nodes } => {
            decision(Verdict::Unknown, Certificate::Budget { nodes })
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BrResult {
    /// Least `n` with `Arrows`, all smaller `n` certified `NotArrows`.
    Value(usize),
    /// `Arrows` at `arrows_at` (if any), but some smaller `n` stayed unknown.
    UnknownTainted {
        first_unknown: usize,
        arrows_at: Option<usize>,
    },
    /// Every scanned `n` is `NotArrows`.
    NotFound { n_max: usize },
}

#[derive(Clone, Debug)]
pub struct BrScan {
    pub m: usize,
    pub shape1: BicliqueShape,
    pub shape2: BicliqueShape,
    pub decisions: Vec<ArrowDecision>,
    pub result: BrResult,
}

impl fmt::Display for BrScan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{POLARITY}")?;
        for d in &self.decisions {
            writeln!(f, "{d}")?;
        }
        let head = format!("BR_{}({}, {})", self.m, self.shape1, self.shape2);
        match self.result {
            BrResult::Value(n) => writeln!(f, "{head} = {n}"),
            BrResult::NotFound { n_max } => writeln!(f, "{head}: none up to n = {n_max}"),
            BrResult::UnknownTainted {
                first_unknown,
                arrows_at: Some(n),
            } => {
                writeln!(f, "{head} <= {n} (unknown at n = {first_unknown})")
            }
            BrResult::UnknownTainted {
                first_unknown,
                arrows_at: None,
            } => {
                writeln!(f, "{head}: unknown from n = {first_unknown}")
            }
        }
    }
}

/// Scans `n = max(t1, t2) ..= n_max` and stops at the first `Arrows`.
pub fn br_m(
    m: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    n_max: usize,
    config: &SearchConfig,
) -> crate::Result<BrScan> {
    let start = shape1.t.max(shape2.t);
    let mut decisions = Vec::new();
    let mut first_unknown = None;
    let mut arrows_at = None;
    for n in start..=n_max {
        let d = arrows(m, n, shape1, shape2, config)?;
        let verdict = d.verdict;
        decisions.push(d);
        match verdict {
            Verdict::Arrows => {
                arrows_at = Some(n);
                break;
            }
            Verdict::Unknown if first_unknown.is_none() => first_unknown = Some(n),
            _ => {}
        }
    }
    let result = match (first_unknown, arrows_at) {
        (None, Some(n)) => BrResult::Value(n),
        (None, None) => BrResult::NotFound { n_max },
        (Some(u), a) => BrResult::UnknownTainted {
            first_unknown: u,
            arrows_at: a,
        },
    };
    Ok(BrScan {
        m,
        shape1,
        shape2,
        decisions,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(s: usize, t: usize) -> BicliqueShape {
        BicliqueShape::new(s, t)
    }

    #[test]
    fn counting_examples() {
        let t = bundled_table();
        let d = counting_certificate(10, 14, sh(2, 2), sh(4, 4), &t);
        let d = d.decision().unwrap();
        assert_eq!(d.verdict, Verdict::Arrows);
        assert!(d.is_sound());
        assert_eq!(
            counting_certificate(8, 16, sh(2, 2), sh(4, 4), &t),
            CountingCheck::Inconclusive {
                edges: 128,
                z1_upper: 38,
                z2_upper: 90
            }
        );
        assert!(matches!(
            counting_certificate(1, 1, sh(2, 2), sh(4, 4), &t),
            CountingCheck::MissingData { .. }
        ));
        // inherited from the 10x14 sub-host
        let d = counting_certificate(13, 14, sh(2, 2), sh(4, 4), &t);
        match &d.decision().unwrap().certificate {
            Certificate::Counting { host_m, host_n, .. } => {
                assert_eq!((*host_m, *host_n), (10, 14))
            }
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn windows() {
        let t = bundled_table();
        let w = edge_window(8, 16, sh(2, 2), sh(4, 4), &t);
        assert_eq!((w.min_edges, w.max_edges), (38, 38));
        let w = edge_window(9, 14, sh(2, 2), sh(4, 4), &t);
        assert_eq!((w.min_edges, w.max_edges), (38, 39));
        assert!(edge_window(10, 14, sh(2, 2), sh(4, 4), &t).is_empty());
        let w = edge_window(3, 3, sh(2, 2), sh(4, 4), &t);
        assert_eq!((w.min_edges, w.max_edges), (0, 9));
    }

    #[test]
    fn caps() {
        assert_eq!(degree_cap(5, 26, sh(2, 2), sh(4, 4)), Some(7));
        assert_eq!(degree_cap(9, 14, sh(2, 2), sh(4, 4)), Some(6));
        assert_eq!(degree_cap(4, 8, sh(2, 2), sh(4, 4)), None);
        assert_eq!(degree_cap(9, 14, sh(2, 2), sh(3, 3)), None);
    }

    #[test]
    fn trivial_searches() {
        let c = SearchConfig::default();
        assert!(matches!(
            search_good_coloring(3, 3, sh(1, 1), sh(3, 3), &c).unwrap(),
            SearchOutcome::NoneExists { .. }
        ));
        let d = arrows(2, 2, sh(1, 1), sh(1, 1), &c).unwrap();
        assert_eq!(d.verdict, Verdict::Arrows);
        let d = arrows(7, 21, sh(2, 2), sh(4, 4), &c).unwrap();
        assert_eq!(d.verdict, Verdict::NotArrows);
        assert!(d.is_sound());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let c = SearchConfig {
            node_budget: 3,
            ..SearchConfig::default()
        }
        .unpruned();
        let out = search_good_coloring(6, 20, sh(2, 2), sh(4, 4), &c).unwrap();
        assert!(matches!(out, SearchOutcome::Unknown { .. }));
    }
}
