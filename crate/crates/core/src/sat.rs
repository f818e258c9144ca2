//! CNF encoding of good colorings in DIMACS format, and decoding of solver
//! answers.
//!
//! Variable `var(i, j) = i*n + j + 1` is true iff edge `(x_i, y_j)` is in `G`.
//! For every `s1`-set of rows and `t1`-set of columns some edge is absent, and
//! for every `s2`-set of rows and `t2`-set of columns some edge is present.
//! The instance is satisfiable iff a good coloring exists.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::arrowing::{ArrowDecision, Certificate, Verdict};
use crate::bigraph::{BicliqueShape, BipartiteGraph};
use crate::error::{parse_err, Error, Result};
use crate::witnesses::{verify_witness, WitnessRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub m: usize,
    pub n: usize,
    pub shape1: BicliqueShape,
    pub shape2: BicliqueShape,
    /// `m*n` edge variables plus any auxiliary symmetry-breaking variables.
    pub variable_count: usize,
    pub clauses: Vec<Vec<i32>>,
    pub symmetry_breaking: bool,
    pub notes: Vec<String>,
}

impl CnfInstance {
    #[inline]
    pub fn var(&self, i: usize, j: usize) -> i32 {
        (i * self.n + j + 1) as i32
    }

    pub fn edge_variables(&self) -> usize {
        self.m * self.n
    }

    /// Checks every clause against an assignment (`model[v-1]` is variable `v`).
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize - 1;
                model.get(v).is_some_and(|&b| b == (lit > 0))
            })
        })
    }

    /// The assignment describing `g`'s edges (auxiliary variables false).
    pub fn assignment_of(&self, g: &BipartiteGraph) -> Vec<bool> {
        let mut model = vec![false; self.variable_count];
        for i in 0..self.m {
            for j in g.row(i).iter() {
                model[self.var(i, j) as usize - 1] = true;
            }
        }
        model
    }

    /// `sha256:<stream length>:<hex>` over the canonical header and clause lines.
    pub fn digest(&self) -> String {
        let stream = self.clause_stream();
        let hash = Sha256::digest(stream.as_bytes());
        let mut hex = String::with_capacity(64);
        for b in hash {
            let _ = write!(hex, "{b:02x}");
        }
        format!("sha256:{}:{hex}", stream.len())
    }

    fn clause_stream(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            for lit in c {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut p = k;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            if idx[p] < n - k + p {
                break;
            }
            if p == 0 {
                return;
            }
        }
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Expected clause count of the plain encoding.
pub fn expected_clause_count(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
) -> usize {
    binomial(m, shape1.s) * binomial(n, shape1.t) + binomial(m, shape2.s) * binomial(n, shape2.t)
}

pub fn encode(m: usize, n: usize, shape1: BicliqueShape, shape2: BicliqueShape) -> CnfInstance {
    encode_with(m, n, shape1, shape2, false)
}

/// Like [`encode`]; with `symmetry_breaking`, also requires the columns to be
/// lexicographically nonincreasing (row 0 most significant), using auxiliary
/// prefix-equality variables. This keeps satisfiability unchanged.
pub fn encode_with(
    m: usize,
    n: usize,
    shape1: BicliqueShape,
    shape2: BicliqueShape,
    symmetry_breaking: bool,
) -> CnfInstance {
    let mut inst = CnfInstance {
        m,
        n,
        shape1,
        shape2,
        variable_count: m * n,
        clauses: Vec::with_capacity(expected_clause_count(m, n, shape1, shape2)),
        symmetry_breaking,
        notes: Vec::new(),
    };
    let var = |i: usize, j: usize| (i * n + j + 1) as i32;
    let mut clauses = Vec::new();
    for (shape, sign, label) in [(shape1, -1, "shape1"), (shape2, 1, "shape2")] {
        if shape.s > m || shape.t > n {
            inst.notes.push(format!(
                "{label} {shape} does not fit K_{{{m},{n}}}: family empty, constraint vacuous"
            ));
            continue;
        }
        for_each_subset(m, shape.s, |rows| {
            for_each_subset(n, shape.t, |cols| {
                let mut clause = Vec::with_capacity(rows.len() * cols.len());
                for &i in rows {
                    for &j in cols {
                        clause.push(sign * var(i, j));
                    }
                }
                clauses.push(clause);
            });
        });
    }
    if shape2.s > m || shape2.t > n {
        inst.notes.push(format!("any {shape1}-free G is good"));
    }
    if symmetry_breaking && m > 0 {
        // eq(j, k): columns j and j+1 agree on rows 0..k
        for j in 0..n.saturating_sub(1) {
            let mut prev_eq: Option<i32> = None;
            for i in 0..m {
                let (a, b) = (var(i, j), var(i, j + 1));
                let mut c = vec![a, -b];
                if let Some(e) = prev_eq {
                    c.push(-e);
                }
                clauses.push(c);
                if i + 1 < m {
                    inst.variable_count += 1;
                    let e = inst.variable_count as i32;
                    let guard: Vec<i32> = prev_eq.map(|p| vec![-p]).unwrap_or_default();
                    let mut c1 = guard.clone();
                    c1.extend([-a, -b, e]);
                    let mut c2 = guard;
                    c2.extend([a, b, e]);
                    clauses.push(c1);
                    clauses.push(c2);
                    prev_eq = Some(e);
                }
            }
        }
    }
    inst.clauses = clauses;
    inst
}

/// Reads an assignment back as a graph. The model must assign exactly the
/// instance's variables.
pub fn decode(instance: &CnfInstance, model: &[bool]) -> Result<BipartiteGraph> {
    if model.len() != instance.variable_count {
        return Err(Error::ModelLength {
            expected: instance.variable_count,
            got: model.len(),
        });
    }
    let mut g = BipartiteGraph::empty(instance.m, instance.n)?;
    for i in 0..instance.m {
        for j in 0..instance.n {
            if model[instance.var(i, j) as usize - 1] {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

pub fn write_dimacs(instance: &CnfInstance) -> String {
    let mut out = String::new();
    let (s1, s2) = (instance.shape1, instance.shape2);
    let _ = writeln!(
        out,
        "c meta m={} n={} shape1={},{} shape2={},{} vars=row-major var(i,j)=i*n+j+1 symmetry={}",
        instance.m, instance.n, s1.s, s1.t, s2.s, s2.t, instance.symmetry_breaking
    );
    let _ = writeln!(out, "c digest {}", instance.digest());
    for note in &instance.notes {
        let _ = writeln!(out, "c note {note}");
    }
    out.push_str(&instance.clause_stream());
    out
}

/// Parses a file produced by [`write_dimacs`] (the `c meta` line is required).
pub fn read_dimacs(text: &str) -> Result<CnfInstance> {
    let mut meta = None;
    let mut header = None;
    let mut notes = Vec::new();
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("c meta ") {
            meta = Some(parse_meta(lineno + 1, rest)?);
        } else if let Some(note) = line.strip_prefix("c note ") {
            notes.push(note.to_string());
        } else if line.starts_with('c') || line.is_empty() {
            continue;
        } else if let Some(rest) = line.strip_prefix("p cnf ") {
            let v: Vec<usize> = rest
                .split_whitespace()
                .filter_map(|t| t.parse().ok())
                .collect();
            if v.len() != 2 {
                return Err(parse_err(lineno + 1, "bad problem line"));
            }
            header = Some((v[0], v[1]));
        } else {
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| parse_err(lineno + 1, format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
    }
    let (m, n, shape1, shape2, symmetry_breaking) =
        meta.ok_or_else(|| parse_err(0, "missing c meta line"))?;
    let (variable_count, count) = header.ok_or_else(|| parse_err(0, "missing p cnf line"))?;
    if count != clauses.len() || !current.is_empty() {
        return Err(parse_err(
            0,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    Ok(CnfInstance {
        m,
        n,
        shape1,
        shape2,
        variable_count,
        clauses,
        symmetry_breaking,
        notes,
    })
}

type Meta = (usize, usize, BicliqueShape, BicliqueShape, bool);

fn parse_meta(line: usize, rest: &str) -> Result<Meta> {
    let mut m = None;
    let mut n = None;
    let mut s1 = None;
    let mut s2 = None;
    let mut sym = false;
    let shape = |v: &str| -> Option<BicliqueShape> {
        let (a, b) = v.split_once(',')?;
        let (a, b) = (a.parse().ok()?, b.parse().ok()?);
        (a >= 1 && b >= 1).then(|| BicliqueShape::new(a, b))
    };
    for kv in rest.split_whitespace() {
        match kv.split_once('=') {
            Some(("m", v)) => m = v.parse().ok(),
            Some(("n", v)) => n = v.parse().ok(),
            Some(("shape1", v)) => s1 = shape(v),
            Some(("shape2", v)) => s2 = shape(v),
            Some(("symmetry", v)) => sym = v == "true",
            _ => {}
        }
    }
    match (m, n, s1, s2) {
        (Some(m), Some(n), Some(a), Some(b)) => Ok((m, n, a, b, sym)),
        _ => Err(parse_err(line, "incomplete meta line")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverResult {
    /// `model[v-1]` is the value of variable `v`.
    Sat(Vec<bool>),
    Unsat,
    Unknown(String),
}

/// Parses competition-style solver output (`s ...` status and `v ...` value
/// lines). Variables not mentioned in the `v` lines make the model short,
/// which [`decode`] rejects.
pub fn read_solver_output(text: &str) -> SolverResult {
    let mut status = None;
    let mut lits: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim().to_string());
        } else if let Some(v) = line.strip_prefix("v ") {
            for tok in v.split_whitespace() {
                match tok.parse::<i32>() {
                    Ok(0) => {}
                    Ok(l) => lits.push(l),
                    Err(_) => return SolverResult::Unknown(format!("bad value token {tok:?}")),
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => {
            let len = lits
                .iter()
                .map(|l| l.unsigned_abs() as usize)
                .max()
                .unwrap_or(0);
            let mut seen = vec![false; len];
            let mut model = vec![false; len];
            for l in lits {
                let v = l.unsigned_abs() as usize - 1;
                if seen[v] && model[v] != (l > 0) {
                    return SolverResult::Unknown(format!("variable {} assigned both ways", v + 1));
                }
                seen[v] = true;
                model[v] = l > 0;
            }
            if let Some(v) = seen.iter().position(|s| !s) {
                return SolverResult::Unknown(format!("variable {} unassigned", v + 1));
            }
            SolverResult::Sat(model)
        }
        Some("UNSATISFIABLE") => SolverResult::Unsat,
        Some(other) => SolverResult::Unknown(format!("solver status {other:?}")),
        None => SolverResult::Unknown("no status line".to_string()),
    }
}

/// Formats a model the way [`read_solver_output`] expects it.
pub fn write_solver_output(model: &[bool]) -> String {
    let mut out = String::from("s SATISFIABLE\nv");
    for (v, &b) in model.iter().enumerate() {
        let lit = (v + 1) as i64;
        let _ = write!(out, " {}", if b { lit } else { -lit });
    }
    out.push_str(" 0\n");
    out
}

/// Turns a solver answer into a decision. A model becomes a `NotArrows`
/// witness only after it decodes and verifies as a good coloring.
pub fn decision_from_solver(
    instance: &CnfInstance,
    result: &SolverResult,
) -> Result<ArrowDecision> {
    let decision = |verdict, certificate| ArrowDecision {
        m: instance.m,
        n: instance.n,
        shape1: instance.shape1,
        shape2: instance.shape2,
        verdict,
        certificate,
    };
    match result {
        SolverResult::Sat(model) => {
            let g = decode(instance, model)?;
            let report = verify_witness(&WitnessRecord::bare(
                "solver-model",
                g.clone(),
                instance.shape1,
                instance.shape2,
            ));
            if !report.good_coloring() {
                return Err(Error::ModelRejected(report.to_string()));
            }
            Ok(decision(
                Verdict::NotArrows,
                Certificate::Witness { graph: g },
            ))
        }
        SolverResult::Unsat => Ok(decision(
            Verdict::Arrows,
            Certificate::ExternalSat {
                digest: instance.digest(),
                solver_verdict: "UNSAT".to_string(),
            },
        )),
        SolverResult::Unknown(_) => {
            Ok(decision(Verdict::Unknown, Certificate::Budget { nodes: 0 }))
        }
    }
}

/// A small DPLL solver with unit propagation, for desk-scale instances.
pub fn solve_dpll(instance: &CnfInstance) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; instance.variable_count];
    if dpll(&instance.clauses, &mut assign) {
        Some(assign.into_iter().map(|a| a.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn dpll(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    // unit propagation to fixpoint
    loop {
        let mut unit = None;
        for c in clauses {
            let mut free = None;
            let mut free_count = 0;
            let mut sat = false;
            for &l in c {
                let v = l.unsigned_abs() as usize - 1;
                match assign[v] {
                    Some(b) if b == (l > 0) => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        free_count += 1;
                        free = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            match free_count {
                0 => {
                    for v in trail {
                        assign[v] = None;
                    }
                    return false;
                }
                1 => {
                    unit = free;
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some(l) => {
                let v = l.unsigned_abs() as usize - 1;
                assign[v] = Some(l > 0);
                trail.push(v);
            }
            None => break,
        }
    }
    let Some(v) = assign.iter().position(Option::is_none) else {
        return true;
    };
    for value in [true, false] {
        assign[v] = Some(value);
        if dpll(clauses, assign) {
            return true;
        }
    }
    assign[v] = None;
    for v in trail {
        assign[v] = None;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::witness_5_25;

    fn sh(s: usize, t: usize) -> BicliqueShape {
        BicliqueShape::new(s, t)
    }

    #[test]
    fn subsets_iterate_in_order() {
        let mut all = Vec::new();
        for_each_subset(4, 2, |s| all.push(s.to_vec()));
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_subset(25, 4, |_| count += 1);
        assert_eq!(count, 12650);
        for_each_subset(2, 3, |_| panic!("no subsets"));
        let mut empty = 0;
        for_each_subset(3, 0, |s| {
            assert!(s.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn five_by_twenty_five_counts() {
        let inst = encode(5, 25, sh(2, 2), sh(4, 4));
        assert_eq!(inst.variable_count, 125);
        assert_eq!(inst.clauses.len(), 66250);
        assert_eq!(expected_clause_count(5, 25, sh(2, 2), sh(4, 4)), 66250);
        assert!(write_dimacs(&inst).contains("\np cnf 125 66250\n"));
        let w = witness_5_25().graph;
        let model = inst.assignment_of(&w);
        assert!(inst.satisfied_by(&model));
        assert_eq!(decode(&inst, &model).unwrap(), w);
    }

    #[test]
    fn oversized_shape_has_no_clauses() {
        let inst = encode(2, 2, sh(2, 2), sh(4, 4));
        assert_eq!(inst.clauses.len(), 1);
        assert!(inst
            .notes
            .iter()
            .any(|n| n.contains("shape2") && n.contains("vacuous")));
    }

    #[test]
    fn decode_rejects_wrong_length() {
        let inst = encode(2, 3, sh(2, 2), sh(2, 2));
        assert_eq!(
            decode(&inst, &[false; 5]),
            Err(Error::ModelLength {
                expected: 6,
                got: 5
            })
        );
        assert_eq!(decode(&inst, &[false; 6]).unwrap().edge_count(), 0);
    }

    #[test]
    fn dimacs_roundtrip_and_digest() {
        let inst = encode_with(3, 4, sh(2, 2), sh(2, 3), true);
        let text = write_dimacs(&inst);
        let back = read_dimacs(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.digest(), inst.digest());
        assert!(read_dimacs("p cnf 1 1\n1 0\n").is_err());
    }

    #[test]
    fn solver_output_parsing() {
        let model = vec![true, false, true];
        assert_eq!(
            read_solver_output(&write_solver_output(&model)),
            SolverResult::Sat(model)
        );
        assert_eq!(
            read_solver_output("c hi\ns UNSATISFIABLE\n"),
            SolverResult::Unsat
        );
        assert!(matches!(
            read_solver_output("garbage"),
            SolverResult::Unknown(_)
        ));
        assert!(matches!(
            read_solver_output("s SATISFIABLE\nv 1 -3 0\n"),
            SolverResult::Unknown(_)
        ));
        assert!(matches!(
            read_solver_output("s SATISFIABLE\nv 1 x 0\n"),
            SolverResult::Unknown(_)
        ));
    }

    #[test]
    fn bad_model_is_rejected() {
        let inst = encode(3, 3, sh(2, 2), sh(2, 2));
        // complete graph contains K_{2,2}
        let r = decision_from_solver(&inst, &SolverResult::Sat(vec![true; 9]));
        assert!(matches!(r, Err(Error::ModelRejected(_))));
        let d = decision_from_solver(&inst, &SolverResult::Unsat).unwrap();
        assert_eq!(d.verdict, Verdict::Arrows);
        match d.certificate {
            Certificate::ExternalSat { digest, .. } => assert_eq!(digest, inst.digest()),
            c => panic!("unexpected {c:?}"),
        }
    }

    #[test]
    fn symmetry_breaking_preserves_satisfiability() {
        for (m, n) in [(2, 3), (3, 3), (3, 4), (2, 5)] {
            for (a, b) in [
                (sh(1, 1), sh(2, 2)),
                (sh(2, 2), sh(2, 2)),
                (sh(2, 2), sh(3, 3)),
            ] {
                let plain = solve_dpll(&encode(m, n, a, b)).is_some();
                let sym = solve_dpll(&encode_with(m, n, a, b, true)).is_some();
                assert_eq!(plain, sym, "{m}x{n} {a} {b}");
            }
        }
    }
}
