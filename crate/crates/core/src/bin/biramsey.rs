use std::path::PathBuf;
use std::process::ExitCode;

use biramsey::arrowing::SearchConfig;
use biramsey::commands::{self, ArrowArgs, CommandOutput};
use biramsey::BicliqueShape;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "biramsey",
    version,
    about = "Exact search and certificates for bipartite Ramsey numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Search {
    /// Nodes per top-level search task
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (results do not depend on this)
    #[arg(long)]
    workers: Option<usize>,
    /// Disable the degree-cap and edge-window pruning
    #[arg(long)]
    no_pruning: bool,
}

impl Search {
    fn config(&self) -> SearchConfig {
        let mut c = SearchConfig::default();
        if let Some(b) = self.budget {
            c.node_budget = b.max(1);
        }
        c.worker_count = self
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1);
        if self.no_pruning {
            c = c.unpruned();
        }
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a witness (builtin name, family-MxN, or file); exit 0 iff good coloring
    VerifyWitness { target: String },
    /// Print a witness in the annotated neighbor-list format
    DumpWitness { target: String },
    /// Zarankiewicz number z((m,n), K_{s,t}); exit 0 exact, 3 bounded
    Zmax {
        m: usize,
        n: usize,
        s: usize,
        t: usize,
        #[command(flatten)]
        search: Search,
    },
    /// Decide K_{m,n} -> (K_{s1,t1}, K_{s2,t2}); exit 0 arrows, 1 not, 3 unknown
    Arrow {
        m: usize,
        n: usize,
        s1: usize,
        t1: usize,
        s2: usize,
        t2: usize,
        #[command(flatten)]
        search: Search,
        /// Also write the DIMACS encoding here
        #[arg(long)]
        emit_cnf: Option<PathBuf>,
        /// Write a found good coloring here instead of printing it
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Read an external solver's answer for a CNF written by `arrow --emit-cnf`
    ImportSat {
        cnf: PathBuf,
        solver_output: PathBuf,
    },
    /// Scan n for BR_m(K_{2,2}, K_{4,4})
    Brm {
        m: usize,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
        #[command(flatten)]
        search: Search,
    },
    /// Two-sided check of every BR_m(K_{2,2}, K_{4,4}) value
    Reproduce {
        #[command(flatten)]
        search: Search,
    },
}

fn shape(s: usize, t: usize) -> Result<BicliqueShape, CommandOutput> {
    if s == 0 || t == 0 {
        Err(CommandOutput {
            text: "error: shape sizes must be positive\n".into(),
            code: commands::EXIT_MALFORMED,
        })
    } else {
        Ok(BicliqueShape::new(s, t))
    }
}

fn run(cli: Cli) -> CommandOutput {
    match cli.command {
        Command::VerifyWitness { target } => commands::verify_witness_cmd(&target),
        Command::DumpWitness { target } => commands::dump_witness_cmd(&target),
        Command::Zmax { m, n, s, t, search } => commands::zmax_cmd(m, n, s, t, &search.config()),
        Command::Arrow {
            m,
            n,
            s1,
            t1,
            s2,
            t2,
            search,
            emit_cnf,
            witness_out,
        } => {
            let (shape1, shape2) = match (shape(s1, t1), shape(s2, t2)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return e,
            };
            let args = ArrowArgs {
                m,
                n,
                shape1,
                shape2,
                emit_cnf: emit_cnf.as_deref(),
                witness_out: witness_out.as_deref(),
            };
            commands::arrow_cmd(&args, &search.config())
        }
        Command::ImportSat { cnf, solver_output } => commands::import_sat_cmd(&cnf, &solver_output),
        Command::Brm { m, nmax, search } => commands::brm_cmd(m, nmax, &search.config()),
        Command::Reproduce { search } => commands::reproduce_cmd(&search.config()),
    }
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    if out.code == commands::EXIT_MALFORMED {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
