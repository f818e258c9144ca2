//! Prints the BR_m(K_{2,2}, K_{4,4}) reproduction table.
//!
//! cargo run --release --example reproduce -- [node-budget-per-task]

use biramsey::arrowing::SearchConfig;
use biramsey::reproduce::reproduce;

fn main() -> biramsey::Result<()> {
    let mut config = SearchConfig::default();
    if let Some(b) = std::env::args().nth(1).and_then(|a| a.parse().ok()) {
        config.node_budget = b;
    }
    config.worker_count = std::thread::available_parallelism().map_or(1, |n| n.get());
    let table = reproduce(&config)?;
    print!("{table}");
    Ok(())
}
