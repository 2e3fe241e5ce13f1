//! Alt-hyperbolicity witnesses: for an edge `e`, a finite edge set `F(e)`
//! with `u_F² ⊂ u_e`, searched over the balls `F_r(e)` of edges within
//! distance `r` of `e`.

use rayon::prelude::*;

use crate::cayley::{CayleyBall, Element};
use crate::divider::{validate_divider, Divider, DividerCheck, WindowEntourage};
use crate::entourage::Entourage;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::paths::{bfs, bfs_avoiding, HopMatrix, UNREACHABLE};
use crate::visibility::principal_set;

/// Edges at distance `≤ r` from `e`, where adjacent edges are at distance 1.
pub fn edges_within(graph: &Graph, e: Edge, r: usize) -> Result<Vec<Edge>> {
    graph.check_edge(e)?;
    let (d0, d1) = (bfs(graph, e.0), bfs(graph, e.1));
    let near = |v: usize| d0[v].min(d1[v]);
    Ok(graph
        .edges()
        .iter()
        .copied()
        .filter(|&f| {
            if f == e {
                return true;
            }
            let d = near(f.0).min(near(f.1));
            d != UNREACHABLE && (d as usize) < r
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    Certified,
    FailedAtRadius,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityWitness {
    pub edge: Edge,
    pub status: WitnessStatus,
    /// Certified radius, or the largest radius tried.
    pub radius: usize,
    /// `F(e)` at `radius`.
    pub witness: Vec<Edge>,
    /// On failure: `(x, z, y)` with `{x,z}, {z,y} ∈ u_F` and `{x,y} ∉ u_e`.
    pub violation: Option<(usize, usize, usize)>,
    /// Least radius at which every geodesic triangle with `e` on a side has
    /// an edge of `F(e)` on another side.
    pub triangle_radius: Option<usize>,
    /// On triangle failure: `(x, z, y)` with `e` on a geodesic `[xy]` and
    /// geodesics `[xz]`, `[zy]` missing `F(e)`.
    pub triangle_violation: Option<(usize, usize, usize)>,
}

impl VisibilityWitness {
    pub fn is_certified(&self) -> bool {
        self.status == WitnessStatus::Certified
    }

    /// The two formulations reach the same verdict.
    pub fn formulations_agree(&self) -> bool {
        self.is_certified() == self.triangle_radius.is_some()
    }
}

/// Pairs joined by at least one geodesic that misses `f`.
fn avoidable(graph: &Graph, hops: &HopMatrix, f: &[Edge]) -> Entourage {
    let blocked: std::collections::HashSet<Edge> = f.iter().copied().collect();
    let n = graph.vertex_count();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|x| bfs_avoiding(graph, x, |e| blocked.contains(&e)))
        .collect();
    Entourage::from_fn(n, |x, y| hops.get(x, y) == UNREACHABLE || rows[x][y] == hops.get(x, y))
}

fn square_violation(base: &Entourage, target: &Entourage) -> Option<(usize, usize, usize)> {
    let sq = base.power(2).expect("square");
    let (x, y) = sq.not_subset_witness(target).expect("same vertex set")?;
    let chain = base.chain(x, y, 2).expect("pair lies in the square");
    let z = if chain.len() == 3 { chain[1] } else { x };
    Some((x, z, y))
}

pub fn althyp_witness(graph: &Graph, e: Edge, max_radius: usize) -> Result<VisibilityWitness> {
    graph.check_edge(e)?;
    if !graph.is_connected() {
        return Err(Error::input("alt-hyperbolicity needs a connected graph"));
    }
    let hops = HopMatrix::new(graph);
    let ue = principal_set(graph, &[e])?;
    let mut entourage: Option<(usize, Vec<Edge>)> = None;
    let mut violation = None;
    let mut triangle_radius = None;
    let mut triangle_violation = None;
    let mut last = Vec::new();
    for r in 0..=max_radius {
        let f = edges_within(graph, e, r)?;
        if entourage.is_none() {
            let uf = principal_set(graph, &f)?;
            match square_violation(&uf, &ue) {
                None => entourage = Some((r, f.clone())),
                Some(v) => violation = Some(v),
            }
        }
        if triangle_radius.is_none() {
            match square_violation(&avoidable(graph, &hops, &f), &ue) {
                None => triangle_radius = Some(r),
                Some(v) => triangle_violation = Some(v),
            }
        }
        let done = entourage.is_some() && triangle_radius.is_some();
        let saturated = f.len() == graph.edge_count();
        last = f;
        if done || saturated {
            break;
        }
    }
    if triangle_radius.is_some() {
        triangle_violation = None;
    }
    Ok(match entourage {
        Some((radius, witness)) => VisibilityWitness {
            edge: e,
            status: WitnessStatus::Certified,
            radius,
            witness,
            violation: None,
            triangle_radius,
            triangle_violation,
        },
        None => VisibilityWitness {
            edge: e,
            status: WitnessStatus::FailedAtRadius,
            radius: max_radius,
            witness: last,
            violation,
            triangle_radius,
            triangle_violation,
        },
    })
}

/// Recomputes `u_F² ⊂ u_e` pair by pair from hop distances alone.
pub fn recheck_witness(graph: &Graph, e: Edge, f: &[Edge]) -> bool {
    let hops = HopMatrix::new(graph);
    let n = graph.vertex_count();
    let sees = |x: usize, y: usize, g: Edge| {
        hops.to_edge(x, g) as u64 + hops.to_edge(y, g) as u64 >= hops.get(x, y) as u64
    };
    (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            sees(x, y, e)
                || !(0..n).any(|z| f.iter().all(|&g| sees(x, z, g)) && f.iter().all(|&g| sees(z, y, g)))
        })
    })
}

/// Builds the principal divider `u_E` from edges meeting every generator
/// orbit. `F` collects the endpoints (as group elements) of each witness
/// `F(e)`, closed under inverses and with the identity.
///
/// Witnesses are searched on the subgraph induced by the window, which is
/// all of the ball whenever it fits.
pub fn divider_from_orbit_edges(
    ball: &CayleyBall,
    edges: &[Edge],
    max_radius: usize,
    domain_radius: u32,
    window_radius: u32,
) -> Result<Divider> {
    if edges.is_empty() {
        return Err(Error::input("E must contain at least one edge"));
    }
    let model = ball.model();
    let sub = ball.graph().induced_prefix(ball.count_within(window_radius));
    let mut f: Vec<Element> = vec![model.identity()];
    for &e in edges {
        if sub.check_edge(e).is_err() {
            return Err(Error::input(format!("({},{}) is not an edge of the window", e.0, e.1)));
        }
        let w = althyp_witness(&sub, e, max_radius)?;
        if !w.is_certified() {
            let (x, z, y) = w.violation.expect("failed witnesses carry a violation");
            return Err(Error::Check(format!(
                "no alt-hyperbolicity witness for edge ({},{}) up to radius {max_radius}: \
                 pair ({},{}) leaves u_e through {}",
                ball.label(e.0),
                ball.label(e.1),
                ball.label(x),
                ball.label(y),
                ball.label(z)
            )));
        }
        for g in w.witness {
            for v in [g.0, g.1] {
                let el = ball.element(v).clone();
                let inv = model.inverse(&el);
                for h in [el, inv] {
                    if !f.iter().any(|k| model.same(k, &h)) {
                        f.push(h);
                    }
                }
            }
        }
    }
    let u = WindowEntourage::principal(ball, edges, window_radius)?;
    let mut last = None;
    for m in [3, 2] {
        match validate_divider(ball, &u, &f, m, domain_radius)? {
            DividerCheck::Certified(_) => return Divider::certify(ball, u, f, m, domain_radius),
            v => last = Some(v),
        }
    }
    match last {
        Some(DividerCheck::Violated { pair, .. }) => Err(Error::Check(format!(
            "u_E is not certified as a divider: pair ({},{}) breaks (∩F{{u}})² ⊂ u",
            ball.label(pair.0),
            ball.label(pair.1)
        ))),
        _ => unreachable!(),
    }
}
