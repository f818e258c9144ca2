//! Checks the builtin good colorings and the small-m family.
//!
//! cargo run --example verify_witnesses

use biramsey::witnesses::{builtin, nonexistence_witness, verify_witness, BUILTIN_NAMES};

fn main() -> biramsey::Result<()> {
    for name in BUILTIN_NAMES {
        let report = verify_witness(&builtin(name)?);
        println!("{report}");
    }
    for m in 1..=4 {
        let report = verify_witness(&nonexistence_witness(m, 26)?);
        println!("{} good_coloring = {}", report.name, report.good_coloring());
    }
    Ok(())
}
