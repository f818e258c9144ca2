mod common;

use biramsey::arrowing::{search_good_coloring, SearchConfig, SearchOutcome, Verdict};
use biramsey::sat::{
    decision_from_solver, decode, encode, encode_with, expected_clause_count, read_dimacs,
    read_solver_output, solve_dpll, write_dimacs, write_solver_output, SolverResult,
};
use biramsey::witnesses::{verify_witness, WitnessRecord};
use common::*;
use proptest::prelude::*;

const SHAPE_PAIRS: [((usize, usize), (usize, usize)); 7] = [
    ((1, 1), (2, 2)),
    ((1, 1), (3, 3)),
    ((2, 2), (2, 2)),
    ((2, 2), (3, 3)),
    ((2, 2), (4, 4)),
    ((1, 2), (2, 1)),
    ((2, 3), (3, 2)),
];

#[test]
fn encoding_agrees_with_search() {
    for (m, n) in small_hosts(16) {
        for ((s1, t1), (s2, t2)) in SHAPE_PAIRS {
            let (a, b) = (sh(s1, t1), sh(s2, t2));
            let found = match search_good_coloring(m, n, a, b, &SearchConfig::default()).unwrap() {
                SearchOutcome::Found(_) => true,
                SearchOutcome::NoneExists { .. } => false,
                SearchOutcome::Unknown { .. } => panic!("budget exhausted"),
            };
            for symmetry in [false, true] {
                let inst = encode_with(m, n, a, b, symmetry);
                if !symmetry {
                    assert_eq!(inst.clauses.len(), expected_clause_count(m, n, a, b));
                }
                assert!(inst.clauses.iter().all(|c| !c.is_empty()));
                assert!(inst
                    .clauses
                    .iter()
                    .flatten()
                    .all(|l| l.unsigned_abs() as usize <= inst.variable_count));
                let model = solve_dpll(&inst);
                assert_eq!(
                    model.is_some(),
                    found,
                    "{m}x{n} {a} {b} symmetry={symmetry}"
                );
                if let Some(model) = model {
                    assert!(inst.satisfied_by(&model));
                    let g = decode(&inst, &model).unwrap();
                    let w = WitnessRecord::bare("dpll", g, a, b);
                    assert!(verify_witness(&w).good_coloring());
                }
            }
        }
    }
}

#[test]
fn clause_semantics_match_oracle() {
    // every assignment satisfies the plain encoding iff it is a good coloring
    for (m, n) in small_hosts(9) {
        for ((s1, t1), (s2, t2)) in SHAPE_PAIRS {
            let inst = encode(m, n, sh(s1, t1), sh(s2, t2));
            for code in 0u64..1 << (m * n) {
                let rows = rows_of(code, m, n);
                let good =
                    !has_biclique(&rows, s1, t1) && !has_biclique(&complement(&rows, n), s2, t2);
                let model: Vec<bool> = (0..m * n).map(|v| code >> v & 1 == 1).collect();
                assert_eq!(inst.satisfied_by(&model), good);
            }
        }
    }
}

#[test]
fn unsat_becomes_arrows_with_digest() {
    let inst = encode(3, 3, sh(1, 1), sh(3, 3));
    assert!(solve_dpll(&inst).is_none());
    let d = decision_from_solver(&inst, &read_solver_output("s UNSATISFIABLE\n")).unwrap();
    assert_eq!(d.verdict, Verdict::Arrows);
    assert!(d.report_line(None).contains(&inst.digest()));
    let unknown = decision_from_solver(&inst, &read_solver_output("s UNKNOWN\n")).unwrap();
    assert_eq!(unknown.verdict, Verdict::Unknown);
}

#[test]
fn digests_are_stable_and_distinct() {
    let a = encode(4, 5, sh(2, 2), sh(3, 3));
    assert_eq!(a.digest(), encode(4, 5, sh(2, 2), sh(3, 3)).digest());
    assert_ne!(a.digest(), encode(4, 6, sh(2, 2), sh(3, 3)).digest());
    assert_ne!(
        a.digest(),
        encode_with(4, 5, sh(2, 2), sh(3, 3), true).digest()
    );
    assert!(a.digest().starts_with("sha256:"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn model_round_trip(m in 1usize..6, n in 1usize..8, bits in any::<u64>()) {
        let inst = encode(m, n, sh(2, 2), sh(2, 2));
        let model: Vec<bool> = (0..m * n).map(|v| bits >> v & 1 == 1).collect();
        let text = write_solver_output(&model);
        prop_assert_eq!(read_solver_output(&text), SolverResult::Sat(model.clone()));
        let g = decode(&inst, &model).unwrap();
        prop_assert_eq!(inst.assignment_of(&g), model);
    }

    #[test]
    fn dimacs_round_trip(m in 1usize..5, n in 1usize..6, s in 1usize..3, t in 1usize..3, sym in any::<bool>()) {
        let inst = encode_with(m, n, sh(s, t), sh(t, s), sym);
        prop_assert_eq!(read_dimacs(&write_dimacs(&inst)).unwrap(), inst);
    }
}
