mod common;

use biramsey::arrowing::degree_cap;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn degree_eight_forces_k44_in_complement() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let m = rng.gen_range(5..=9);
        let n = rng.gen_range(8..=20);
        let d = rng.gen_range(8..=n);
        let rows = planted_c4_free(&mut rng, m, n, d);
        assert!(!has_biclique(&rows, 2, 2));
        assert!(
            has_biclique(&complement(&rows, n), 4, 4),
            "m={m} n={n} rows={rows:?}"
        );
        assert_eq!(
            degree_cap(m, n, sh(2, 2), sh(4, 4)).map(|c| c <= 7),
            Some(true)
        );
    }
}

#[test]
fn degree_seven_forces_k44_with_nine_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let m = rng.gen_range(9..=12);
        let n = rng.gen_range(9..=20);
        let d = rng.gen_range(7..=n);
        let rows = planted_c4_free(&mut rng, m, n, d);
        assert!(!has_biclique(&rows, 2, 2));
        assert!(
            has_biclique(&complement(&rows, n), 4, 4),
            "m={m} n={n} rows={rows:?}"
        );
        assert_eq!(degree_cap(m, n, sh(2, 2), sh(4, 4)), Some(6));
    }
}
