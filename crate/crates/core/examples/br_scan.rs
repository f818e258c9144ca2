//! Scans n for BR_m(K_{2,2}, K_{4,4}).
//!
//! cargo run --release --example br_scan -- 9

use biramsey::arrowing::{br_m, SearchConfig};
use biramsey::BicliqueShape;

fn main() -> biramsey::Result<()> {
    let m = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(9);
    let n_max = std::env::args()
        .nth(2)
        .and_then(|a| a.parse().ok())
        .unwrap_or(30);
    let scan = br_m(
        m,
        BicliqueShape::new(2, 2),
        BicliqueShape::new(4, 4),
        n_max,
        &SearchConfig::default(),
    )?;
    print!("{scan}");
    Ok(())
}
