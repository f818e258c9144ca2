//! Exact Zarankiewicz numbers, and a check of the bundled bound table.
//!
//! cargo run --release --example zarankiewicz -- 10 14 2 2
//! cargo run --release --example zarankiewicz -- table [node-budget]

use biramsey::arrowing::SearchConfig;
use biramsey::zarankiewicz::{bundled_table, consistency_check, z_exact};

fn main() -> biramsey::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.first().map(String::as_str) == Some("table") {
        let budget = args
            .get(1)
            .and_then(|b| b.parse().ok())
            .unwrap_or(1_000_000);
        let report = consistency_check(&bundled_table(), &SearchConfig::with_budget(budget));
        print!("{report}");
        println!("violations: {}", report.violations());
        return Ok(());
    }
    let nums: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
    let [m, n, s, t] = nums[..] else {
        eprintln!("usage: zarankiewicz m n s t | table [budget]");
        std::process::exit(2);
    };
    let e = z_exact(m, n, s, t, &SearchConfig::default())?;
    println!("{e}");
    if let Some(g) = &e.extremal {
        print!("{}", g.to_matrix_text());
    }
    Ok(())
}
