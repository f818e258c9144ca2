//! Brute-force oracles shared by the integration tests. Graphs are plain row
//! masks (`rows[i]` bit `j` = edge `x_i y_j`), independent of the library's
//! representation.
#![allow(dead_code)]

use biramsey::{BicliqueShape, BipartiteGraph};

pub fn sh(s: usize, t: usize) -> BicliqueShape {
    BicliqueShape::new(s, t)
}

/// Does some `s` rows share `t` common columns?
pub fn has_biclique(rows: &[u64], s: usize, t: usize) -> bool {
    fn go(rows: &[u64], from: usize, left: usize, common: u64, t: usize) -> bool {
        if common.count_ones() < t as u32 {
            return false;
        }
        if left == 0 {
            return true;
        }
        (from..rows.len()).any(|i| go(rows, i + 1, left - 1, common & rows[i], t))
    }
    s <= rows.len() && go(rows, 0, s, u64::MAX, t)
}

/// Row masks of graph number `code` (bit `i*n + j`) on `K_{m,n}`.
pub fn rows_of(code: u64, m: usize, n: usize) -> Vec<u64> {
    (0..m)
        .map(|i| code >> (i * n) & ((1u64 << n) - 1))
        .collect()
}

pub fn complement(rows: &[u64], n: usize) -> Vec<u64> {
    rows.iter().map(|r| !r & ((1u64 << n) - 1)).collect()
}

pub fn edges(rows: &[u64]) -> usize {
    rows.iter().map(|r| r.count_ones() as usize).sum()
}

pub fn to_graph(rows: &[u64], n: usize) -> BipartiteGraph {
    BipartiteGraph::from_neighbor_lists(
        rows.len(),
        n,
        rows.iter()
            .map(|&r| (0..n).filter(move |j| r >> j & 1 == 1)),
    )
    .unwrap()
}

pub fn from_graph(g: &BipartiteGraph) -> Vec<u64> {
    (0..g.m())
        .map(|i| g.row(i).iter().fold(0u64, |acc, j| acc | 1 << j))
        .collect()
}

/// All `(m, n)` with `m * n <= limit`.
pub fn small_hosts(limit: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=limit {
        for n in 1..=limit / m {
            out.push((m, n));
        }
    }
    out
}

/// Maximum edges of a `K_{s,t}`-free subgraph, by enumerating all `2^{mn}`.
pub fn z_brute(m: usize, n: usize, s: usize, t: usize) -> usize {
    z_brute_many(m, n, &[(s, t)])[0]
}

/// [`z_brute`] for several shapes in one enumeration.
pub fn z_brute_many(m: usize, n: usize, shapes: &[(usize, usize)]) -> Vec<usize> {
    let mut best = vec![0; shapes.len()];
    for code in 0u64..1 << (m * n) {
        let rows = rows_of(code, m, n);
        let e = edges(&rows);
        for (b, &(s, t)) in best.iter_mut().zip(shapes) {
            if e > *b && !has_biclique(&rows, s, t) {
                *b = e;
            }
        }
    }
    best
}

/// Edge counts of all good colorings of `K_{m,n}`, sorted and deduplicated.
pub fn good_coloring_sizes(m: usize, n: usize, a: BicliqueShape, b: BicliqueShape) -> Vec<usize> {
    let mut sizes: Vec<usize> = (0u64..1 << (m * n))
        .map(|c| rows_of(c, m, n))
        .filter(|r| !has_biclique(r, a.s, a.t) && !has_biclique(&complement(r, n), b.s, b.t))
        .map(|r| edges(&r))
        .collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

/// A random `K_{2,2}`-free graph on `K_{m,n}` whose row 0 has degree
/// `degree`, grown by adding random edges that keep it `K_{2,2}`-free.
pub fn planted_c4_free(rng: &mut impl rand::Rng, m: usize, n: usize, degree: usize) -> Vec<u64> {
    use rand::seq::SliceRandom;
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    let mut rows = vec![0u64; m];
    for &j in &cols[..degree] {
        rows[0] |= 1 << j;
    }
    let mut slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    slots.shuffle(rng);
    let density: f64 = rng.gen_range(0.2..1.0);
    for (i, j) in slots {
        if rows[i] >> j & 1 == 1 || !rng.gen_bool(density) {
            continue;
        }
        rows[i] |= 1 << j;
        let meets_twice = (0..m).any(|k| k != i && (rows[k] & rows[i]).count_ones() >= 2);
        if meets_twice {
            rows[i] &= !(1 << j);
        }
    }
    rows
}
