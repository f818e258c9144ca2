//! Searches for a good coloring of K_{m,n} for (K_{s1,t1}, K_{s2,t2}).
//!
//! cargo run --release --example good_coloring -- 8 15 2 2 4 4

use biramsey::arrowing::{search_good_coloring, SearchConfig, SearchOutcome};
use biramsey::BicliqueShape;

fn main() -> biramsey::Result<()> {
    let nums: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let [m, n, s1, t1, s2, t2] = match nums[..] {
        [m, n] => [m, n, 2, 2, 4, 4],
        [m, n, s1, t1, s2, t2] => [m, n, s1, t1, s2, t2],
        _ => [8, 15, 2, 2, 4, 4],
    };
    let config = SearchConfig::default();
    let (a, b) = (BicliqueShape::new(s1, t1), BicliqueShape::new(s2, t2));
    match search_good_coloring(m, n, a, b, &config)? {
        SearchOutcome::Found(g) => {
            println!(
                "good coloring of K_{{{m},{n}}} with {} edges",
                g.edge_count()
            );
            print!("{}", g.to_matrix_text());
        }
        SearchOutcome::NoneExists { nodes } => println!("none exists ({nodes} nodes)"),
        SearchOutcome::Unknown { nodes } => println!("unknown after {nodes} nodes"),
    }
    Ok(())
}
