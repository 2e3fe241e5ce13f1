use relhyp_core::divider::*;
use relhyp_core::entourage::Entourage;
use relhyp_core::graph::Edge;
use relhyp_core::{CayleyBall, GroupModel};

fn basepoint_edges(ball: &CayleyBall) -> Vec<Edge> {
    ball.graph().edges().iter().copied().filter(|e| e.0 == 0).collect()
}

fn ball_one(model: &GroupModel) -> Vec<relhyp_core::Element> {
    let mut f = vec![model.identity()];
    f.extend(model.generators());
    f
}

#[test]
fn visibility_divider_on_free_ball() {
    let model = GroupModel::free(2);
    let ball = CayleyBall::build(&model, 6).unwrap();
    let e = basepoint_edges(&ball);
    assert_eq!(e.len(), 4);
    // trees are convex, so the window can reach the outer sphere
    let u = WindowEntourage::principal(&ball, &e, 6).unwrap();
    let div = Divider::certify(&ball, u, ball_one(&model), 3, 4).unwrap();
    assert_eq!(div.rho, 1);
    assert_eq!(div.certificate.unknown, 0);
    let Perspectivity::Sigma(sigma) = perspectivity_sigma(&ball, &div.u) else { panic!() };
    assert_eq!(sigma, 1);
    let seq = frink_sequence_from_divider(&ball, &div, 3).unwrap();
    let t = seq.terms();
    assert!(t[3].is_subset(&t[2]).unwrap() && t[3] != t[2]);
    assert!(t[2].is_subset(&t[1]).unwrap() && t[2] != t[1]);
    let metric = frink_metric(&seq);
    assert!(verify_frink_lemma(&seq, &metric).unwrap().passed());
    let (lambda, c) = comparison_constants(div.rho, sigma).unwrap();
    assert_eq!((lambda, c), (0.5, 2.0));
    let report = verify_comparison(&ball, &metric, lambda, c).unwrap();
    assert!(report.passed(), "{report:?}");
    assert!(report.max_ratio <= c);
}

#[test]
fn squared_lambda_fails_on_a_larger_ball() {
    let model = GroupModel::free(2);
    let ball = CayleyBall::build(&model, 9).unwrap();
    let u = WindowEntourage::principal(&ball, &basepoint_edges(&ball), 5).unwrap();
    let div = Divider::certify(&ball, u, ball_one(&model), 3, 3).unwrap();
    let seq = frink_sequence_from_divider(&ball, &div, 3).unwrap();
    let metric = frink_metric(&seq);
    assert!(verify_comparison(&ball, &metric, 0.5, 2.0).unwrap().passed());
    let r = verify_comparison(&ball, &metric, 0.25, 2.0).unwrap();
    assert!(r.violations > 0);
}

#[test]
fn equivalence_relations_are_dividers() {
    let model = GroupModel::free_abelian(1);
    let ball = CayleyBall::build(&model, 6).unwrap();
    // parity classes
    let n = ball.len();
    let mut u = Entourage::diagonal(n);
    for x in 0..n {
        for y in 0..n {
            if ball.norm(x) % 2 == ball.norm(y) % 2 {
                u.insert(x, y);
            }
        }
    }
    let u = WindowEntourage::new(&ball, 6, u).unwrap();
    let check = validate_divider(&ball, &u, &[model.identity()], 2, 6).unwrap();
    assert!(matches!(check, DividerCheck::Certified(_)));
    let diag = WindowEntourage::new(&ball, 6, Entourage::diagonal(n)).unwrap();
    assert!(matches!(
        validate_divider(&ball, &diag, &[model.identity()], 2, 2).unwrap(),
        DividerCheck::Certified(_)
    ));
}

#[test]
fn line_divider_comparison() {
    let model = GroupModel::free_abelian(1);
    let ball = CayleyBall::build(&model, 9).unwrap();
    let zero = ball.vertex("0").unwrap();
    let one = ball.vertex("1").unwrap();
    let u = WindowEntourage::principal(&ball, &[Edge::new(zero, one)], 9).unwrap();
    let f = ball_one(&model);
    let div = Divider::certify(&ball, u, f, 3, 3).unwrap();
    let Perspectivity::Sigma(sigma) = perspectivity_sigma(&ball, &div.u) else { panic!() };
    let (lambda, c) = comparison_constants(div.rho, sigma).unwrap();
    let seq = frink_sequence_from_divider(&ball, &div, 3).unwrap();
    let report = verify_comparison(&ball, &frink_metric(&seq), lambda, c).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn translates_leaving_the_window_are_counted() {
    let model = GroupModel::free(2);
    let ball = CayleyBall::build(&model, 4).unwrap();
    let u = WindowEntourage::new(&ball, 2, Entourage::full(ball.count_within(2))).unwrap();
    let f = f_power(&model, &ball_one(&model), 2);
    let err = translate_intersection(&ball, &u, &f, 2).unwrap_err();
    assert_eq!(err.kind(), "domain");
    let ok = translate_intersection(&ball, &u, &ball_one(&model), 1).unwrap();
    assert_eq!(ok.unknown, 0);
}

#[test]
fn perspectivity_detects_outer_edges() {
    let model = GroupModel::free(2);
    let ball = CayleyBall::build(&model, 3).unwrap();
    let mut u = Entourage::full(ball.len());
    let e = *ball.graph().edges().iter().find(|e| ball.norm(e.1) == 3).unwrap();
    u.remove(e.0, e.1);
    let u = WindowEntourage::new(&ball, 3, u).unwrap();
    assert_eq!(perspectivity_sigma(&ball, &u), Perspectivity::NotPerspective(e));
    let full = WindowEntourage::new(&ball, 3, Entourage::full(ball.len())).unwrap();
    assert_eq!(perspectivity_sigma(&ball, &full), Perspectivity::Sigma(0));
}
