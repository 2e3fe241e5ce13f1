//! Randomized invariants checked against brute-force oracles.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relhyp_core::divider::{frink_metric, verify_frink_lemma};
use relhyp_core::entourage::{unlinked, Entourage, Linkage};
use relhyp_core::paths::{bfs, dijkstra, enumerate_arcs, geodesics_between, Geodesics};
use relhyp_core::sample::{random_entourage, random_frink_sequence};
use relhyp_core::visibility::{visibility_set, visibility_sets_by_geodesics};
use relhyp_core::{EdgeWeights, Graph};

fn matrix(u: &Entourage) -> Vec<Vec<bool>> {
    let n = u.vertex_count();
    (0..n).map(|x| (0..n).map(|y| u.contains(x, y)).collect()).collect()
}

/// `uⁿ` by repeated boolean matrix products.
fn power_oracle(u: &Entourage, k: usize) -> Vec<Vec<bool>> {
    let m = matrix(u);
    let n = m.len();
    let mut acc = m.clone();
    for _ in 1..k {
        acc = (0..n)
            .map(|x| (0..n).map(|y| (0..n).any(|z| acc[x][z] && m[z][y])).collect())
            .collect();
    }
    acc
}

/// Tries every subset as the `u`-small part.
fn unlinked_oracle(u: &Entourage, v: &Entourage) -> bool {
    let n = u.vertex_count();
    (0u32..1 << n).any(|mask| {
        let a: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        u.is_small(&a) && v.is_small(&b)
    })
}

fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(p) && !edges.contains(&(x, y)) {
                edges.push((x, y));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// All simple paths from `x` to `y` by plain recursion.
fn simple_paths(g: &Graph, x: usize, y: usize, max_len: usize) -> usize {
    fn go(g: &Graph, v: usize, y: usize, left: usize, seen: &mut Vec<bool>) -> usize {
        if v == y {
            return 1;
        }
        if left == 0 {
            return 0;
        }
        let mut c = 0;
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                c += go(g, w, y, left - 1, seen);
                seen[w] = false;
            }
        }
        c
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[x] = true;
    go(g, x, y, max_len, &mut seen)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_matches_matrix_products(seed: u64, n in 1usize..10, k in 1usize..5, p in 0.05f64..0.5) {
        let u = random_entourage(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        prop_assert_eq!(matrix(&u.power(k).unwrap()), power_oracle(&u, k));
    }

    #[test]
    fn intersection_power_inclusion(seed: u64, n in 1usize..12, k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_entourage(&mut rng, n, 0.3);
        let v = random_entourage(&mut rng, n, 0.3);
        let lhs = u.intersection(&v).unwrap().power(k).unwrap();
        let rhs = u.power(k).unwrap().intersection(&v.power(k).unwrap()).unwrap();
        prop_assert!(lhs.is_subset(&rhs).unwrap());
    }

    #[test]
    fn unlinked_matches_exhaustive_split(seed: u64, n in 1usize..11, p in 0.2f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_entourage(&mut rng, n, p);
        let v = random_entourage(&mut rng, n, p);
        let got = unlinked(&u, &v).unwrap();
        prop_assert_eq!(matches!(got, Linkage::Unlinked { .. }), unlinked_oracle(&u, &v));
        if let Linkage::Unlinked { a, b } = got {
            prop_assert!(u.is_small(&a) && v.is_small(&b));
            prop_assert_eq!(a.len() + b.len(), n);
        }
    }

    #[test]
    fn frink_lemma_on_random_sequences(seed: u64, n in 1usize..16, depth in 0usize..5) {
        let seq = random_frink_sequence(&mut ChaCha8Rng::seed_from_u64(seed), n, depth);
        let metric = frink_metric(&seq);
        // the metric is the path metric of the pair weights 2^{-level}
        for x in 0..n {
            let w: Vec<f64> = (0..n).map(|y| if x == y { 0.0 } else { 0.5f64.powi(seq.level(x, y) as i32) }).collect();
            for y in 0..n {
                prop_assert!(metric.get(x, y) <= w[y]);
                for z in 0..n {
                    prop_assert!(metric.get(x, y) <= metric.get(x, z) + metric.get(z, y) + 1e-15);
                }
            }
        }
        prop_assert!(verify_frink_lemma(&seq, &metric).unwrap().passed());
    }

    #[test]
    fn visibility_formula_matches_walk_back(seed: u64, n in 2usize..14, p in 0.0f64..0.4) {
        let g = random_graph(seed, n, p);
        let dag = visibility_sets_by_geodesics(&g);
        for (k, &e) in g.edges().iter().enumerate() {
            prop_assert_eq!(&visibility_set(&g, e).unwrap(), &dag[k]);
        }
    }

    #[test]
    fn geodesics_are_shortest(seed: u64, n in 2usize..12, p in 0.0f64..0.5) {
        let g = random_graph(seed, n, p);
        let d = bfs(&g, 0);
        let w = EdgeWeights::unit(&g);
        let dj = dijkstra(&g, &w, 0);
        for y in 0..n {
            prop_assert_eq!(dj[y], d[y] as f64);
            if let Geodesics::Found { length, segments } = geodesics_between(&g, 0, y, 10_000).unwrap() {
                prop_assert_eq!(length, d[y]);
                for s in &segments {
                    prop_assert_eq!(s.len(), d[y] as usize);
                }
            }
        }
    }

    #[test]
    fn arc_counts_match_recursion(seed: u64, n in 2usize..9, p in 0.0f64..0.6, len in 1usize..8) {
        let g = random_graph(seed, n, p);
        let y = n - 1;
        let arcs = enumerate_arcs(&g, 0, y, len, 100_000).unwrap();
        prop_assert_eq!(arcs.arcs.len(), simple_paths(&g, 0, y, len));
    }

    #[test]
    fn trees_have_idempotent_visibility(seed: u64, n in 2usize..15) {
        let g = random_graph(seed, n, 0.0);
        for &e in g.edges() {
            let u = visibility_set(&g, e).unwrap();
            prop_assert_eq!(u.power(2).unwrap(), u);
        }
    }
}
