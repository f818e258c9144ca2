//! Column-by-column branch and bound over row patterns.
//!
//! A subgraph of `K_{r,c}` is built one column at a time; each column is a
//! bit mask over the `r` rows. Only doubly lexical matrices are generated:
//! columns are lexicographically nonincreasing (row 0 most significant) and
//! rows are lexicographically nonincreasing (column 0 most significant).
//! Every matrix can be brought into this form by permuting rows and columns,
//! so no good coloring or extremal value is lost. In particular the first
//! column is always `1^d 0^(r-d)`.
//!
//! Children are explored heaviest column first, then lexicographically
//! descending.
//!
//! Constraints are counting families over row subsets:
//! - *cover*: at most `limit` columns may contain the subset (forbids a
//!   biclique in the graph, and caps row degrees with singleton subsets);
//! - *avoid*: at most `limit` columns may be disjoint from the subset
//!   (forbids a biclique in the complement).
//!
//! Work is split into one task per popcount of the first column. Each task
//! owns its node budget and shares nothing with the others, so results do not
//! depend on how many workers run the tasks.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bigraph::{subsets_of_size, BicliqueShape, BipartiteGraph, ColSet};
use crate::error::{Error, Result};

/// Largest pattern side the engine enumerates (`2^16` column patterns).
pub const MAX_PATTERN_ROWS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FamilyKind {
    Cover,
    Avoid,
}

#[derive(Clone, Debug)]
pub(crate) struct Family {
    kind: FamilyKind,
    subsets: Vec<u32>,
    /// Size of every subset; families hold all subsets of this size.
    size: usize,
    limit: u32,
}

impl Family {
    /// Forbids `shape` with `shape.s` pattern rows and `shape.t` columns.
    pub fn forbid(kind: FamilyKind, rows: usize, shape: BicliqueShape) -> Option<Family> {
        if shape.s > rows {
            return None;
        }
        Some(Family {
            kind,
            subsets: subsets_of_size(rows, shape.s),
            size: shape.s,
            limit: (shape.t - 1) as u32,
        })
    }

    /// At most `cap` columns contain any single row.
    pub fn row_degree_cap(rows: usize, cap: usize) -> Family {
        Family {
            kind: FamilyKind::Cover,
            subsets: subsets_of_size(rows, 1),
            size: 1,
            limit: cap as u32,
        }
    }

    /// Counter increments caused by a column of weight `w` out of `rows`.
    #[inline]
    fn usage(&self, rows: usize, w: usize) -> u64 {
        match self.kind {
            FamilyKind::Cover => binomial(w, self.size),
            FamilyKind::Avoid => binomial(rows - w, self.size),
        }
    }

    #[inline]
    fn hits(&self, subset: u32, column: u32) -> bool {
        match self.kind {
            FamilyKind::Cover => column & subset == subset,
            FamilyKind::Avoid => column & subset == 0,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub rows: usize,
    pub cols: usize,
    pub families: Vec<Family>,
    /// Columns with more ones than this are never generated.
    pub max_column_weight: usize,
    /// Inclusive bounds on the total number of ones.
    pub edge_window: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Objective {
    Feasible,
    MaxEdges,
}

#[derive(Clone, Debug)]
pub(crate) struct TaskOutcome {
    pub nodes: u64,
    pub complete: bool,
    /// Best (or first, for feasibility) column list found.
    pub best: Option<Vec<u32>>,
    /// Upper bound on edges within this task's subtree.
    pub upper: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub nodes: u64,
    pub complete: bool,
    pub best: Option<Vec<u32>>,
    pub upper: usize,
}

impl Problem {
    pub fn check(&self) -> Result<()> {
        if self.rows > MAX_PATTERN_ROWS {
            return Err(Error::SearchTooWide(self.rows));
        }
        Ok(())
    }

    /// All admissible column patterns in canonical order.
    fn candidates(&self) -> Vec<u32> {
        let r = self.rows as u32;
        let mut all: Vec<u32> = (0u32..1 << r)
            .filter(|c| c.count_ones() as usize <= self.max_column_weight)
            .collect();
        all.sort_by_key(|&c| {
            std::cmp::Reverse((c.count_ones(), c.reverse_bits() >> (32 - r.max(1))))
        });
        all
    }

    /// Maximum number of ones: asks for `ub`, `ub - 1`, ... ones in turn,
    /// starting from the counting bound at the root, so every run prunes
    /// against its target from the first node.
    pub fn max_edges(&self, node_budget: u64, workers: usize) -> Outcome {
        let initial_candidates = Searcher::new(self, &[]).initial_candidates();
        let heaviest = heaviest_upto(self.rows, &initial_candidates);
        let wmax = heaviest.last().copied().unwrap_or(0) as usize;
        let mut target = Searcher::new(self, &heaviest).edge_ceiling(wmax);
        let mut nodes = 0;
        while target > 0 {
            let out = self.solve(Objective::MaxEdges, node_budget, workers, Some(target - 1));
            nodes += out.nodes;
            if out.best.is_some() || !out.complete {
                let found = out.best.as_ref().map_or(0, |b| edges_of(b));
                // every larger target was refuted, so reaching this one is exact
                let complete = out.complete || found >= target;
                let best = match out.best {
                    Some(b) => Some(b),
                    // keep a greedy incumbent as the lower bound
                    None => self.solve(Objective::MaxEdges, 0, 1, None).best,
                };
                let found = best.as_ref().map_or(0, |b| edges_of(b));
                let upper = if complete { found } else { target.max(found) };
                return Outcome {
                    nodes,
                    complete,
                    best,
                    upper,
                };
            }
            target -= 1;
        }
        let empty = (self.cols == 0 || initial_candidates.contains(&0)).then(|| vec![0; self.cols]);
        Outcome {
            nodes,
            complete: empty.is_some(),
            best: empty,
            upper: 0,
        }
    }

    /// Runs every first-column task and merges the results deterministically.
    /// With `floor`, only solutions with more than `floor` ones count.
    pub fn solve(
        &self,
        objective: Objective,
        node_budget: u64,
        workers: usize,
        floor: Option<usize>,
    ) -> Outcome {
        let initial_candidates = Searcher::new(self, &[]).initial_candidates();
        let heaviest = heaviest_upto(self.rows, &initial_candidates);

        let mut best = None;
        let mut best_edges = floor;
        if objective == Objective::MaxEdges && self.cols > 0 && floor.is_none() {
            // cheap incumbent: greedy descent in each task
            for d in (0..=self.rows).rev() {
                let mut s = Searcher::new(self, &heaviest);
                if let Some(cols) = s.greedy(&initial_candidates, d) {
                    let e = edges_of(&cols);
                    if best_edges.is_none_or(|b| e > b) {
                        best_edges = Some(e);
                        best = Some(cols);
                    }
                }
            }
        }
        if self.cols == 0 {
            let ok = self.edge_window.is_none_or(|(lo, _)| lo == 0);
            return Outcome {
                nodes: 0,
                complete: true,
                best: ok.then(Vec::new),
                upper: 0,
            };
        }

        let tasks: Vec<usize> = (0..=self.rows.min(self.max_column_weight)).rev().collect();
        let found_at = AtomicUsize::new(usize::MAX);
        let run = |(k, &d): (usize, &usize)| -> Option<TaskOutcome> {
            if objective == Objective::Feasible && found_at.load(Ordering::Relaxed) < k {
                return None;
            }
            let mut s = Searcher::new(self, &heaviest);
            s.objective = objective;
            s.budget = node_budget;
            s.best_edges = best_edges;
            let out = s.run_task(&initial_candidates, d);
            if objective == Objective::Feasible && out.best.is_some() {
                found_at.fetch_min(k, Ordering::Relaxed);
            }
            Some(out)
        };
        let results: Vec<Option<TaskOutcome>> = if workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
            match pool {
                Ok(pool) => pool.install(|| tasks.par_iter().enumerate().map(run).collect()),
                Err(_) => tasks.iter().enumerate().map(run).collect(),
            }
        } else {
            let mut out = Vec::with_capacity(tasks.len());
            for t in tasks.iter().enumerate() {
                let r = run(t);
                let stop = objective == Objective::Feasible
                    && r.as_ref().is_some_and(|r| r.best.is_some());
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        };

        let mut nodes = 0;
        let mut complete = true;
        let mut upper = best_edges.unwrap_or(0);
        for r in results.into_iter() {
            let Some(r) = r else { break };
            nodes += r.nodes;
            upper = upper.max(r.upper);
            match objective {
                Objective::Feasible => {
                    if r.best.is_some() {
                        return Outcome {
                            nodes,
                            complete: true,
                            upper,
                            best: r.best,
                        };
                    }
                    complete &= r.complete;
                }
                Objective::MaxEdges => {
                    complete &= r.complete;
                    if let Some(cols) = r.best {
                        let e = edges_of(&cols);
                        if best_edges.is_none_or(|b| e > b) {
                            best_edges = Some(e);
                            best = Some(cols);
                        }
                    }
                }
            }
        }
        match objective {
            Objective::Feasible => Outcome {
                nodes,
                complete,
                best: None,
                upper,
            },
            Objective::MaxEdges => {
                let b = best_edges.unwrap_or(0);
                Outcome {
                    nodes,
                    complete,
                    best,
                    upper: if complete { b } else { upper.max(b) },
                }
            }
        }
    }
}

/// `out[k]` is the largest weight among `candidates` with lexicographic rank
/// at most `k`: a bound on every column that may follow rank `k`.
fn heaviest_upto(rows: usize, candidates: &[u32]) -> Vec<u8> {
    let mut out = vec![0u8; 1 << rows];
    for &c in candidates {
        let k = lex_key(c, rows) as usize;
        out[k] = out[k].max(c.count_ones() as u8);
    }
    for k in 1..out.len() {
        out[k] = out[k].max(out[k - 1]);
    }
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

fn edges_of(cols: &[u32]) -> usize {
    cols.iter().map(|c| c.count_ones() as usize).sum()
}

struct Searcher<'a> {
    p: &'a Problem,
    heaviest: &'a [u8],
    objective: Objective,
    counters: Vec<Vec<u32>>,
    chosen: Vec<u32>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    best_edges: Option<usize>,
    best: Option<Vec<u32>>,
    /// Per-depth scratch buffers for candidate lists.
    lists: Vec<Vec<u32>>,
    /// Bit `i` set while rows `i` and `i + 1` agree on every placed column.
    ties: Vec<u32>,
    banned: Vec<(FamilyKind, u32)>,
    /// Total counter value per family.
    used: Vec<u64>,
}

impl<'a> Searcher<'a> {
    fn new(p: &'a Problem, heaviest: &'a [u8]) -> Self {
        Searcher {
            p,
            heaviest,
            objective: Objective::Feasible,
            counters: p
                .families
                .iter()
                .map(|f| vec![0; f.subsets.len()])
                .collect(),
            chosen: Vec::with_capacity(p.cols),
            nodes: 0,
            budget: u64::MAX,
            exhausted: false,
            best_edges: None,
            best: None,
            lists: vec![Vec::new(); p.cols + 1],
            ties: vec![if p.rows == 0 {
                0
            } else {
                (1u32 << (p.rows - 1)) - 1
            }],
            banned: Vec::new(),
            used: vec![0; p.families.len()],
        }
    }

    /// Candidates surviving the families whose limit is already zero.
    fn initial_candidates(&self) -> Vec<u32> {
        let zero: Vec<(FamilyKind, u32)> = self
            .p
            .families
            .iter()
            .filter(|f| f.limit == 0)
            .flat_map(|f| f.subsets.iter().map(move |&s| (f.kind, s)))
            .collect();
        self.p
            .candidates()
            .into_iter()
            .filter(|&c| !zero.iter().any(|&(k, s)| blocks(k, s, c)))
            .collect()
    }

    /// Places `column`, returning how many subsets it newly saturated (they
    /// are pushed onto `self.banned`).
    fn apply(&mut self, column: u32) -> usize {
        let before = self.banned.len();
        let w = column.count_ones() as usize;
        for (f, u) in self.p.families.iter().zip(self.used.iter_mut()) {
            *u += f.usage(self.p.rows, w);
        }
        for (f, counters) in self.p.families.iter().zip(self.counters.iter_mut()) {
            if f.limit == 0 {
                continue;
            }
            for (s, c) in f.subsets.iter().zip(counters.iter_mut()) {
                if f.hits(*s, column) {
                    *c += 1;
                    if *c == f.limit {
                        self.banned.push((f.kind, *s));
                    }
                }
            }
        }
        self.chosen.push(column);
        let t = *self.ties.last().expect("tie stack is never empty");
        self.ties.push(t & !(column ^ column >> 1));
        self.banned.len() - before
    }

    fn undo(&mut self, column: u32, new_bans: usize) {
        let w = column.count_ones() as usize;
        for (f, u) in self.p.families.iter().zip(self.used.iter_mut()) {
            *u -= f.usage(self.p.rows, w);
        }
        for (f, counters) in self.p.families.iter().zip(self.counters.iter_mut()) {
            if f.limit == 0 {
                continue;
            }
            for (s, c) in f.subsets.iter().zip(counters.iter_mut()) {
                if f.hits(*s, column) {
                    *c -= 1;
                }
            }
        }
        self.chosen.pop();
        self.ties.pop();
        let len = self.banned.len() - new_bans;
        self.banned.truncate(len);
    }

    /// Candidates of `parent` that stay admissible after placing `column`:
    /// not lexicographically above it and not blocked by a new saturation.
    fn child_list(&self, parent: &[u32], column: u32, new_bans: usize, out: &mut Vec<u32>) {
        out.clear();
        let top = lex_key(column, self.p.rows);
        let bans = &self.banned[self.banned.len() - new_bans..];
        out.extend(parent.iter().copied().filter(|&c| {
            lex_key(c, self.p.rows) <= top && !bans.iter().any(|&(k, s)| blocks(k, s, c))
        }));
    }

    /// Row order stays nonincreasing if `column` is placed next.
    #[inline]
    fn keeps_rows_sorted(&self, column: u32) -> bool {
        let t = *self.ties.last().expect("tie stack is never empty");
        !column & column >> 1 & t == 0
    }

    fn greedy(&mut self, initial: &[u32], d: usize) -> Option<Vec<u32>> {
        let first = first_column(d);
        let pos = initial.iter().position(|&c| c == first)?;
        let mut list: Vec<u32> = initial.to_vec();
        let mut stack = Vec::new();
        let mut c = initial[pos];
        loop {
            let bans = self.apply(c);
            stack.push((c, bans));
            if self.chosen.len() == self.p.cols {
                break;
            }
            let mut next = Vec::new();
            self.child_list(&list, c, bans, &mut next);
            list = next;
            match list.iter().find(|&&x| self.keeps_rows_sorted(x)) {
                Some(&x) => c = x,
                None => {
                    while let Some((c, b)) = stack.pop() {
                        self.undo(c, b);
                    }
                    return None;
                }
            }
        }
        let cols = self.chosen.clone();
        while let Some((c, b)) = stack.pop() {
            self.undo(c, b);
        }
        Some(cols)
    }

    fn run_task(&mut self, initial: &[u32], d: usize) -> TaskOutcome {
        let first = first_column(d);
        let task_upper = self.later_weight(first).max(d) * self.p.cols;
        let done = |s: &Self, complete| TaskOutcome {
            nodes: s.nodes,
            complete,
            best: s.best.clone(),
            upper: if complete {
                s.best.as_ref().map_or(0, |b| edges_of(b))
            } else {
                task_upper
            },
        };
        if !initial.contains(&first) {
            return done(self, true);
        }
        if self.objective == Objective::MaxEdges && self.best_edges.is_some_and(|b| task_upper <= b)
        {
            return done(self, true);
        }
        self.visit(initial, first);
        let complete = !self.exhausted;
        done(self, complete)
    }

    /// Places `column` at depth `depth` (0-based) and explores below it.
    /// Returns `true` when the search should stop.
    fn visit(&mut self, parent: &[u32], column: u32) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return true;
        }
        let bans = self.apply(column);
        let depth = self.chosen.len();
        let stop = if depth < self.p.cols && self.hopeless(column) {
            false
        } else if depth == self.p.cols {
            self.leaf()
        } else {
            let mut list = std::mem::take(&mut self.lists[depth]);
            self.child_list(parent, column, bans, &mut list);
            let stop = self.expand(&list);
            self.lists[depth] = list;
            stop
        };
        self.undo(column, bans);
        stop
    }

    fn leaf(&mut self) -> bool {
        let e = edges_of(&self.chosen);
        if let Some((lo, hi)) = self.p.edge_window {
            if e < lo || e > hi {
                return false;
            }
        }
        match self.objective {
            Objective::Feasible => {
                self.best = Some(self.chosen.clone());
                true
            }
            Objective::MaxEdges => {
                if self.best_edges.is_none_or(|b| e > b) {
                    self.best_edges = Some(e);
                    self.best = Some(self.chosen.clone());
                }
                false
            }
        }
    }

    /// Most ones the remaining columns can add: each cover family has
    /// `limit * C(rows, size)` capacity, a column of weight `w` uses
    /// `C(w, size)` of it, and cost is convex in `w`.
    fn edge_ceiling(&self, wmax: usize) -> usize {
        let k = (self.p.cols - self.chosen.len()) as u64;
        let mut best = k as usize * wmax;
        for (f, &used) in self.p.families.iter().zip(&self.used) {
            if f.kind != FamilyKind::Cover {
                continue;
            }
            let slack = f.limit as u64 * f.subsets.len() as u64 - used;
            let mut level = 0;
            while level < wmax && k * binomial(level + 1, f.size) <= slack {
                level += 1;
            }
            let mut total = k * level as u64;
            if level < wmax {
                let rest = slack - k * binomial(level, f.size);
                let step = binomial(level + 1, f.size) - binomial(level, f.size);
                total += k.min(rest / step);
            }
            best = best.min(total as usize);
        }
        best
    }

    /// No completion below the just placed `column` can beat the incumbent
    /// or reach the edge window.
    fn hopeless(&self, column: u32) -> bool {
        let target = match self.objective {
            Objective::MaxEdges => match self.best_edges {
                Some(b) => b + 1,
                None => return false,
            },
            Objective::Feasible => match self.p.edge_window {
                Some((lo, _)) => lo,
                None => return false,
            },
        };
        edges_of(&self.chosen) + self.edge_ceiling(self.later_weight(column)) < target
    }

    /// Largest weight any column placed after `column` can have.
    #[inline]
    fn later_weight(&self, column: u32) -> usize {
        self.heaviest[lex_key(column, self.p.rows) as usize] as usize
    }

    fn expand(&mut self, list: &[u32]) -> bool {
        let depth = self.chosen.len();
        let remaining = self.p.cols - depth;
        let edges = edges_of(&self.chosen);
        let min_weight = list.last().map_or(0, |c| c.count_ones() as usize);
        // list is heaviest first and every entry ranks below the last column
        let ceiling = self
            .chosen
            .last()
            .map_or(self.p.rows, |&c| self.later_weight(c));
        for &c in list {
            if !self.keeps_rows_sorted(c) {
                continue;
            }
            let w = c.count_ones() as usize;
            let reach = edges + w + (remaining - 1) * self.later_weight(c);
            let loose = edges + w + (remaining - 1) * ceiling;
            match self.objective {
                Objective::MaxEdges => {
                    if self.best_edges.is_some_and(|b| loose <= b) {
                        break;
                    }
                    if self.best_edges.is_some_and(|b| reach <= b) {
                        continue;
                    }
                }
                Objective::Feasible => {
                    if let Some((lo, hi)) = self.p.edge_window {
                        if loose < lo {
                            break;
                        }
                        if reach < lo || edges + w + (remaining - 1) * min_weight > hi {
                            continue;
                        }
                    }
                }
            }
            if self.visit(list, c) {
                return true;
            }
        }
        false
    }
}

#[inline]
fn blocks(kind: FamilyKind, subset: u32, column: u32) -> bool {
    match kind {
        FamilyKind::Cover => column & subset == subset,
        FamilyKind::Avoid => column & subset == 0,
    }
}

/// Lexicographic rank of a column with row 0 most significant.
#[inline]
fn lex_key(column: u32, rows: usize) -> u32 {
    if rows == 0 {
        0
    } else {
        column.reverse_bits() >> (32 - rows)
    }
}

#[inline]
fn first_column(d: usize) -> u32 {
    if d == 0 {
        0
    } else {
        (1u32 << d) - 1
    }
}

/// Converts pattern columns back to a graph. Without `transposed`, pattern
/// rows are graph rows; with it, each pattern column is a graph row.
pub(crate) fn to_graph(rows: usize, columns: &[u32], transposed: bool) -> BipartiteGraph {
    if transposed {
        let rs = columns
            .iter()
            .map(|&c| ColSet::from_mask(c as u64))
            .collect();
        BipartiteGraph::from_rows(rows, rs).expect("pattern width within range")
    } else {
        let mut g = BipartiteGraph::empty(rows, columns.len()).expect("column count within range");
        for (j, &c) in columns.iter().enumerate() {
            for i in 0..rows {
                if c >> i & 1 == 1 {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }
}
