use relhyp_core::althyp::*;
use relhyp_core::graph::{Edge, Graph};
use relhyp_core::visibility::principal_set;
use relhyp_core::{CayleyBall, GroupModel};

#[test]
fn grid_fails_with_a_checkable_pair() {
    let g = Graph::grid(15, 15);
    let centre = 7 * 15 + 7;
    let e = Edge::new(centre, centre + 1);
    let w = althyp_witness(&g, e, 3).unwrap();
    assert_eq!(w.status, WitnessStatus::FailedAtRadius);
    assert!(w.formulations_agree());
    let (x, z, y) = w.violation.unwrap();
    let ue = principal_set(&g, &[e]).unwrap();
    let uf = principal_set(&g, &w.witness).unwrap();
    assert!(uf.contains(x, z) && uf.contains(z, y) && !ue.contains(x, y));
}

#[test]
fn cycles_are_certified_and_rechecked() {
    for n in 3..10 {
        let g = Graph::cycle(n);
        let w = althyp_witness(&g, Edge(0, 1), n).unwrap();
        assert!(w.is_certified(), "C{n}");
        assert!(w.formulations_agree(), "C{n}");
        assert!(recheck_witness(&g, Edge(0, 1), &w.witness));
    }
}

#[test]
fn free_group_divider_from_basepoint_edges() {
    let model = GroupModel::free(2);
    let ball = CayleyBall::build(&model, 6).unwrap();
    let e: Vec<Edge> = ball.graph().edges().iter().copied().filter(|e| e.0 == 0).collect();
    let d = divider_from_orbit_edges(&ball, &e, 2, 4, 6).unwrap();
    assert_eq!(d.certified_power, 3);
    assert_eq!(d.f.len(), 5);
    assert_eq!(d.rho, 1);
}

#[test]
fn cyclic_divider_from_one_edge() {
    let model = GroupModel::cyclic(12);
    let ball = CayleyBall::build(&model, 6).unwrap();
    let d = divider_from_orbit_edges(&ball, &[Edge(0, 1)], 6, 6, 6).unwrap();
    assert!(d.certified_power >= 2);
}

#[test]
fn lattice_has_no_divider_from_orbit_edges() {
    let model = GroupModel::free_abelian(2);
    let ball = CayleyBall::build(&model, 6).unwrap();
    let e: Vec<Edge> = ball.graph().edges().iter().copied().filter(|e| e.0 == 0).collect();
    let err = divider_from_orbit_edges(&ball, &e, 3, 2, 6).unwrap_err();
    assert_eq!(err.kind(), "check");
}
