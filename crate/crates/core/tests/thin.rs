use relhyp_core::thin::{
    circuit_sweep, four_point_delta, thin_triangle_delta, thin_triangle_delta_ball, CircuitCase,
};
use relhyp_core::{CayleyBall, Graph, GroupModel};

/// Floyd–Warshall hop distances, independent of the BFS used by the library.
fn hops(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        d[e.0][e.1] = 1;
        d[e.1][e.0] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

#[test]
fn grid_four_point_matches_brute_force() {
    let g = Graph::grid(3, 3);
    let d = hops(&g);
    let mut best = 0;
    for a in 0..9 {
        for b in 0..9 {
            for c in 0..9 {
                for e in 0..9 {
                    let mut s = [d[a][b] + d[c][e], d[a][c] + d[b][e], d[a][e] + d[b][c]];
                    s.sort();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    let all: Vec<usize> = (0..9).collect();
    let est = four_point_delta(&g, &all, 1000, 0).unwrap();
    assert!(est.exhaustive);
    assert_eq!(est.delta, best as f64 / 2.0);
    let thin = thin_triangle_delta(&g, &all, 1000, 0).unwrap();
    // four-point δ ≤ 2·(thin δ) for geodesic spaces up to an additive unit
    assert!(est.delta <= 2.0 * thin.delta + 1.0);
}

#[test]
fn square_lattice_delta_grows() {
    let z2 = GroupModel::free_abelian(2);
    let small = thin_triangle_delta_ball(&CayleyBall::build(&z2, 7).unwrap(), 100_000, 3).unwrap();
    let large = thin_triangle_delta_ball(&CayleyBall::build(&z2, 9).unwrap(), 100_000, 3).unwrap();
    assert!(small.exhaustive && large.exhaustive);
    assert!(large.delta > small.delta, "{} vs {}", small.delta, large.delta);
}

#[test]
fn free_group_is_zero_thin() {
    let b = CayleyBall::build(&GroupModel::free(2), 6).unwrap();
    assert_eq!(thin_triangle_delta_ball(&b, 100_000, 0).unwrap().delta, 0.0);
}

#[test]
fn surface_circuits_meet_the_bound() {
    let b = CayleyBall::build(&GroupModel::surface(2), 5).unwrap();
    let all: Vec<usize> = (0..b.len()).collect();
    let rows = circuit_sweep(b.graph(), &all, 50, 7).unwrap();
    assert_eq!(rows.len(), 50);
    for r in &rows {
        assert_eq!(r.verified, Ok(()), "{r:?}");
        assert!(r.length <= r.bound);
    }
    let cases: Vec<CircuitCase> = rows.iter().map(|r| r.case).collect();
    eprintln!(
        "same={} short={} long={} erased={}",
        cases.iter().filter(|c| **c == CircuitCase::SameSide).count(),
        cases.iter().filter(|c| **c == CircuitCase::Short).count(),
        cases.iter().filter(|c| **c == CircuitCase::Long).count(),
        rows.iter().filter(|r| r.loop_erased).count()
    );
}

#[test]
fn ladder_reaches_every_case() {
    let g = Graph::grid(2, 30);
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let rows = circuit_sweep(&g, &all, 300, 1).unwrap();
    for case in [CircuitCase::SameSide, CircuitCase::Short, CircuitCase::Long] {
        assert!(rows.iter().any(|r| r.case == case), "{case:?} never reached");
    }
    assert!(rows.iter().all(|r| r.verified.is_ok()));
}
