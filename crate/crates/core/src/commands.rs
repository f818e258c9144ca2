//! The command surface behind the `biramsey` binary. Each command returns its
//! text output and exit code so it can be tested without a process.

use std::fmt::Write as _;
use std::path::Path;

use crate::arrowing::{arrows, br_m, ArrowDecision, BrResult, SearchConfig, Verdict, POLARITY};
use crate::bigraph::{BicliqueShape, BipartiteGraph};
use crate::error::Error;
use crate::reproduce::reproduce;
use crate::sat::{decision_from_solver, encode, read_dimacs, read_solver_output, write_dimacs};
use crate::witnesses::{
    builtin, nonexistence_witness, verify_witness, WitnessRecord, BUILTIN_NAMES,
};
use crate::zarankiewicz::z_exact;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ARROWS: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub code: i32,
}

impl CommandOutput {
    fn new(text: String, code: i32) -> Self {
        CommandOutput { text, code }
    }

    fn error(e: impl std::fmt::Display) -> Self {
        CommandOutput::new(format!("error: {e}\n"), EXIT_MALFORMED)
    }
}

fn read_file(path: &Path) -> Result<String, CommandOutput> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandOutput::error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandOutput> {
    std::fs::write(path, text).map_err(|e| CommandOutput::error(format!("{}: {e}", path.display())))
}

/// Loads a witness from a builtin name, `family-MxN`, or a file in the
/// neighbor-list (optionally annotated) or matrix format.
pub fn load_witness(target: &str) -> Result<WitnessRecord, CommandOutput> {
    if BUILTIN_NAMES.contains(&target) {
        return builtin(target).map_err(CommandOutput::error);
    }
    if let Some((m, n)) = target
        .strip_prefix("family-")
        .and_then(|d| d.split_once('x'))
    {
        if let (Ok(m), Ok(n)) = (m.parse(), n.parse()) {
            return nonexistence_witness(m, n).map_err(CommandOutput::error);
        }
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(CommandOutput::error(Error::UnknownWitness(
            target.to_string(),
        )));
    }
    let text = read_file(path)?;
    let is_matrix = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .nth(1)
        .is_some_and(|l| !l.trim().is_empty() && l.trim().chars().all(|c| c == '0' || c == '1'));
    let name = path
        .file_name()
        .map_or(target.to_string(), |s| s.to_string_lossy().into_owned());
    if is_matrix {
        if let Ok(g) = BipartiteGraph::parse_matrix(&text) {
            let (a, b) = (BicliqueShape::new(2, 2), BicliqueShape::new(4, 4));
            return Ok(WitnessRecord::bare(name, g, a, b));
        }
    }
    let mut w = WitnessRecord::from_text(&text).map_err(CommandOutput::error)?;
    if w.name == "unnamed" {
        w.name = name;
    }
    Ok(w)
}

/// Exit 0 iff the witness is a good coloring; 1 if not; 2 if unreadable.
pub fn verify_witness_cmd(target: &str) -> CommandOutput {
    let w = match load_witness(target) {
        Ok(w) => w,
        Err(out) => return out,
    };
    let report = verify_witness(&w);
    let code = if report.good_coloring() {
        EXIT_OK
    } else {
        EXIT_NOT_ARROWS
    };
    CommandOutput::new(report.to_string(), code)
}

/// Exit 0 when the value is exact, 3 when only bounded.
pub fn zmax_cmd(m: usize, n: usize, s: usize, t: usize, config: &SearchConfig) -> CommandOutput {
    if s == 0 || t == 0 {
        return CommandOutput::error("shape sizes must be positive");
    }
    match z_exact(m, n, s, t, config) {
        Ok(e) => {
            let code = if e.is_exact() { EXIT_OK } else { EXIT_UNKNOWN };
            let mut text = format!("{e}\n");
            if let Some(g) = &e.extremal {
                let _ = write!(text, "# extremal graph\n{}", g.to_matrix_text());
            }
            CommandOutput::new(text, code)
        }
        Err(e) => CommandOutput::error(e),
    }
}

fn decision_code(d: &ArrowDecision) -> i32 {
    match d.verdict {
        Verdict::Arrows => EXIT_OK,
        Verdict::NotArrows => EXIT_NOT_ARROWS,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn decision_text(d: &ArrowDecision, witness_out: Option<&Path>) -> Result<String, CommandOutput> {
    let mut text = format!("{POLARITY}\n");
    match (d.witness(), witness_out) {
        (Some(g), Some(path)) => {
            let w = WitnessRecord::bare(
                format!("witness-{}x{}", d.m, d.n),
                g.clone(),
                d.shape1,
                d.shape2,
            );
            write_file(path, &w.to_text())?;
            let _ = writeln!(text, "{}", d.report_line(Some(&path.display().to_string())));
        }
        (Some(g), None) => {
            let _ = write!(text, "{}\n{}", d.report_line(None), g.to_matrix_text());
        }
        (None, _) => {
            let _ = writeln!(text, "{}", d.report_line(None));
        }
    }
    Ok(text)
}

pub struct ArrowArgs<'a> {
    pub m: usize,
    pub n: usize,
    pub shape1: BicliqueShape,
    pub shape2: BicliqueShape,
    pub emit_cnf: Option<&'a Path>,
    pub witness_out: Option<&'a Path>,
}

/// Exit 0 Arrows, 1 NotArrows, 3 Unknown.
pub fn arrow_cmd(args: &ArrowArgs, config: &SearchConfig) -> CommandOutput {
    let run = || -> Result<CommandOutput, CommandOutput> {
        let d = arrows(args.m, args.n, args.shape1, args.shape2, config)
            .map_err(CommandOutput::error)?;
        let mut text = decision_text(&d, args.witness_out)?;
        if let Some(path) = args.emit_cnf {
            let inst = encode(args.m, args.n, args.shape1, args.shape2);
            write_file(path, &write_dimacs(&inst))?;
            let _ = writeln!(
                text,
                "# cnf written to {} digest={}",
                path.display(),
                inst.digest()
            );
        }
        Ok(CommandOutput::new(text, decision_code(&d)))
    };
    run().unwrap_or_else(|e| e)
}

/// Turns an external solver's output on an emitted CNF into a decision.
/// Exit codes follow `arrow`; a model that fails verification exits 2.
pub fn import_sat_cmd(cnf: &Path, solver_output: &Path) -> CommandOutput {
    let run = || -> Result<CommandOutput, CommandOutput> {
        let inst = read_dimacs(&read_file(cnf)?).map_err(CommandOutput::error)?;
        let result = read_solver_output(&read_file(solver_output)?);
        let d = decision_from_solver(&inst, &result).map_err(CommandOutput::error)?;
        let mut text = decision_text(&d, None)?;
        if let crate::sat::SolverResult::Unknown(why) = &result {
            let _ = writeln!(text, "# solver output not usable: {why}");
        }
        Ok(CommandOutput::new(text, decision_code(&d)))
    };
    run().unwrap_or_else(|e| e)
}

/// Scan for `BR_m(K_{2,2}, K_{4,4})`. Exit 0 on a certified value, 1 when no
/// `n` up to `n_max` arrows, 3 when tainted by an unknown.
pub fn brm_cmd(m: usize, n_max: usize, config: &SearchConfig) -> CommandOutput {
    let (a, b) = (BicliqueShape::new(2, 2), BicliqueShape::new(4, 4));
    let scan = match br_m(m, a, b, n_max, config) {
        Ok(s) => s,
        Err(e) => return CommandOutput::error(e),
    };
    let mut text = scan.to_string();
    let code = match scan.result {
        BrResult::Value(_) => EXIT_OK,
        BrResult::NotFound { n_max } => {
            if let Ok(w) = nonexistence_witness(m, n_max) {
                let good = verify_witness(&w).good_coloring();
                let _ = writeln!(
                    text,
                    "nonexistence family {} at n = {n_max}: good_coloring = {good}",
                    w.name
                );
            }
            EXIT_NOT_ARROWS
        }
        BrResult::UnknownTainted { .. } => EXIT_UNKNOWN,
    };
    CommandOutput::new(text, code)
}

/// Exit 0 when every row is reproduced, 3 otherwise.
pub fn reproduce_cmd(config: &SearchConfig) -> CommandOutput {
    match reproduce(config) {
        Ok(r) => {
            let code = if r.all_reproduced() {
                EXIT_OK
            } else {
                EXIT_UNKNOWN
            };
            CommandOutput::new(r.to_string(), code)
        }
        Err(e) => CommandOutput::error(e),
    }
}

/// Prints a builtin witness in the annotated neighbor-list format.
pub fn dump_witness_cmd(target: &str) -> CommandOutput {
    match load_witness(target) {
        Ok(w) => CommandOutput::new(w.to_text(), EXIT_OK),
        Err(out) => out,
    }
}
