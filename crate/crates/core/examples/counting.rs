//! Counting certificates and edge windows from the bundled bounds.
//!
//! cargo run --example counting

use biramsey::arrowing::{counting_certificate, degree_cap, edge_window, CountingCheck};
use biramsey::zarankiewicz::bundled_table;
use biramsey::BicliqueShape;

fn main() {
    let table = bundled_table();
    let (a, b) = (BicliqueShape::new(2, 2), BicliqueShape::new(4, 4));
    for (m, n) in [(8, 16), (9, 14), (10, 14), (13, 14), (14, 14)] {
        let window = edge_window(m, n, a, b, &table);
        let cap = degree_cap(m, n, a, b).map_or("-".to_string(), |c| c.to_string());
        let counting = match counting_certificate(m, n, a, b, &table) {
            CountingCheck::Certified(d) => d.report_line(None),
            CountingCheck::Inconclusive {
                edges,
                z1_upper,
                z2_upper,
            } => {
                format!("inconclusive: {edges} <= {z1_upper} + {z2_upper}")
            }
            CountingCheck::MissingData { .. } => "no bounds".to_string(),
        };
        println!("K_{{{m},{n}}} window {window} degree cap {cap} | {counting}");
    }
}
