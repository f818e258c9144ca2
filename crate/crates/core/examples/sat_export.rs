//! Writes the CNF for an arrowing instance and shows how solver answers are
//! read back. A tiny instance is solved in-process.
//!
//! cargo run --example sat_export -- 5 26 out.cnf

use biramsey::sat::{
    decision_from_solver, encode, solve_dpll, write_dimacs, write_solver_output, SolverResult,
};
use biramsey::BicliqueShape;

fn main() -> biramsey::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m = args.first().and_then(|a| a.parse().ok()).unwrap_or(5);
    let n = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(26);
    let (a, b) = (BicliqueShape::new(2, 2), BicliqueShape::new(4, 4));
    let inst = encode(m, n, a, b);
    println!(
        "K_{{{m},{n}}}: {} variables, {} clauses, {}",
        inst.variable_count,
        inst.clauses.len(),
        inst.digest()
    );
    if let Some(path) = args.get(2) {
        if let Err(e) = std::fs::write(path, write_dimacs(&inst)) {
            eprintln!("{path}: {e}");
            std::process::exit(2);
        }
        println!("written to {path}");
    }

    // (K_{1,2}, K_{2,2}) on K_{3,3}: solved here, then fed back as solver text
    let small = encode(3, 3, BicliqueShape::new(1, 2), BicliqueShape::new(2, 2));
    let answer = match solve_dpll(&small) {
        Some(model) => write_solver_output(&model),
        None => "s UNSATISFIABLE\n".to_string(),
    };
    let result = biramsey::sat::read_solver_output(&answer);
    println!("small instance: {}", decision_from_solver(&small, &result)?);
    let bogus = SolverResult::Sat(vec![true; small.variable_count]);
    match decision_from_solver(&small, &bogus) {
        Ok(d) => println!("unexpected: {d}"),
        Err(e) => println!("bogus model: {e}"),
    }
    Ok(())
}
