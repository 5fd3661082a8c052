//! Horton's basis against an independent brute force: every simple cycle as
//! a `u64` edge mask, sorted by weight, then a greedy GF(2) rank sieve.

use grinberg_core::cycle_space::{
    cycle_space_dimension, horton_mcb, is_cycle_basis, simple_cycles, span_contains,
};
use grinberg_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_cycle_masks(g: &Graph) -> Vec<u64> {
    fn dfs(g: &Graph, start: usize, v: usize, visited: u64, edges: u64, out: &mut Vec<u64>) {
        for &(w, e) in g.incident(v) {
            let bit = 1u64 << e;
            if edges & bit != 0 {
                continue;
            }
            if w == start && edges.count_ones() >= 2 {
                out.push(edges | bit);
            } else if w > start && visited & (1 << w) == 0 {
                dfs(g, start, w, visited | 1 << w, edges | bit, out);
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        dfs(g, s, s, 1 << s, 0, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn insert(basis: &mut Vec<u64>, mut x: u64) -> bool {
    for &b in basis.iter() {
        x = x.min(x ^ b);
    }
    if x == 0 {
        return false;
    }
    basis.push(x);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

fn brute_mcb_weight(g: &Graph) -> f64 {
    let w = |mask: u64| -> f64 {
        (0..g.m())
            .filter(|e| mask >> e & 1 == 1)
            .map(|e| g.edge(e).weight)
            .sum()
    };
    let mut cycles = all_cycle_masks(g);
    cycles.sort_by(|a, b| w(*a).total_cmp(&w(*b)));
    let mut basis = Vec::new();
    let mut total = 0.0;
    for c in cycles {
        if insert(&mut basis, c) {
            total += w(c);
        }
    }
    total
}

fn random_connected(n: usize, p: f64, weighted: bool, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((i, j));
                }
            }
        }
        let weights: Vec<f64> = pairs.iter().map(|_| rng.gen_range(1..6) as f64).collect();
        let g = Graph::with_weights(n, &pairs, weighted.then_some(&weights[..])).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn brute_force_cycle_counts_match() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let g = random_connected(6, 0.6, false, &mut rng);
        assert_eq!(all_cycle_masks(&g).len(), simple_cycles(&g, None).len());
    }
}

#[test]
fn horton_matches_brute_force_unit_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..400 {
        let g = random_connected(4 + i % 5, 0.5, false, &mut rng);
        let b = horton_mcb(&g).unwrap();
        assert_eq!(b.len(), cycle_space_dimension(&g));
        assert!(is_cycle_basis(&g, b.cycles()));
        assert_eq!(b.weight(&g), brute_mcb_weight(&g), "{:?}", g.pairs());
    }
}

#[test]
fn horton_matches_brute_force_weighted() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..400 {
        let g = random_connected(4 + i % 5, 0.6, true, &mut rng);
        let b = horton_mcb(&g).unwrap();
        assert!(is_cycle_basis(&g, b.cycles()));
        assert_eq!(b.weight(&g), brute_mcb_weight(&g), "{:?}", g.pairs());
    }
}

#[test]
fn basis_spans_every_cycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let g = random_connected(6, 0.7, false, &mut rng);
        let b = horton_mcb(&g).unwrap();
        for c in simple_cycles(&g, None) {
            assert!(span_contains(&b, c.edges()).unwrap());
        }
    }
}
