//! Karlsson-type decay: Floyd lengths of geodesics far from the basepoint,
//! and the search for a finite edge set `E` such that every geodesic
//! missing `E` has its endpoints `v`-close.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::cayley::{CayleyBall, Element};
use crate::divider::{translate_intersection, Divider};
use crate::entourage::Entourage;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::paths::{bfs, bfs_avoiding, canonical_geodesic, geodesics_with, Geodesics};

/// Per-pair cap on enumerated geodesics.
pub const GEODESIC_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct DecayRow {
    /// `d(v, I)`: least word norm along the geodesic.
    pub h: u32,
    pub max_floyd_length: f64,
    pub geodesic_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayTable {
    pub rows: Vec<DecayRow>,
    /// False when some pair had more than [`GEODESIC_CAP`] geodesics.
    pub exhaustive: bool,
}

/// Floyd length of a vertex path: edge `{x,y}` weighs `λ^{min(|x|,|y|)}`.
pub fn floyd_length(ball: &CayleyBall, lambda: f64, path: &[usize]) -> f64 {
    path.windows(2)
        .map(|w| lambda.powi(ball.norm(w[0]).min(ball.norm(w[1])) as i32))
        .sum()
}

/// Geodesics between all pairs of distinct vertices on the inner sphere,
/// grouped by their distance to the basepoint.
pub fn karlsson_decay_scan(ball: &CayleyBall, lambda: f64) -> Result<DecayTable> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::input(format!("lambda must lie in (0,1), got {lambda}")));
    }
    let inner = ball.inner_radius();
    if inner < 3 && !ball.is_complete() {
        return Err(Error::input(format!(
            "the inner radius {inner} is below 3; use a ball of radius at least 9"
        )));
    }
    let sphere = ball.sphere(inner);
    let g = ball.graph();
    let per_source: Vec<(Vec<(u32, f64)>, bool)> = sphere
        .par_iter()
        .enumerate()
        .map(|(i, &y)| {
            let to_y = bfs(g, y);
            let mut out = Vec::new();
            let mut complete = true;
            for &x in &sphere[..i] {
                let segs = match geodesics_with(g, &to_y, x, GEODESIC_CAP) {
                    Geodesics::Found { segments, .. } => segments,
                    Geodesics::CapExceeded { segments, .. } => {
                        complete = false;
                        segments
                    }
                    Geodesics::Disconnected => continue,
                };
                for s in segs {
                    let v = s.vertices();
                    let h = v.iter().map(|&z| ball.norm(z)).min().expect("non-empty");
                    out.push((h, floyd_length(ball, lambda, v)));
                }
            }
            (out, complete)
        })
        .collect();
    let mut rows: Vec<DecayRow> = Vec::new();
    let mut exhaustive = true;
    for (items, complete) in per_source {
        exhaustive &= complete;
        for (h, len) in items {
            match rows.iter_mut().find(|r| r.h == h) {
                Some(r) => {
                    r.max_floyd_length = r.max_floyd_length.max(len);
                    r.geodesic_count += 1;
                }
                None => rows.push(DecayRow {
                    h,
                    max_floyd_length: len,
                    geodesic_count: 1,
                }),
            }
        }
    }
    rows.sort_by_key(|r| r.h);
    Ok(DecayTable { rows, exhaustive })
}

#[derive(Debug, Clone, PartialEq)]
pub enum KarlssonStatus {
    Certified,
    /// Largest radius tried, with a geodesic missing `E` whose endpoints are
    /// not `v`-close.
    Failed { geodesic: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KarlssonReport {
    /// `E` is the set of edges with both endpoints of norm `≤ r`.
    pub r: u32,
    pub edges: Vec<Edge>,
    /// Inner-ball pairs examined at the final radius.
    pub checked: usize,
    /// Pairs of `v` whose translates left the window.
    pub unknown: usize,
    pub status: KarlssonStatus,
}

impl KarlssonReport {
    pub fn is_certified(&self) -> bool {
        self.status == KarlssonStatus::Certified
    }
}

/// Edges with both endpoints in the ball of radius `r`.
pub fn ball_edges(ball: &CayleyBall, r: u32) -> Vec<Edge> {
    let m = ball.count_within(r);
    ball.graph().edges().iter().copied().filter(|e| e.1 < m).collect()
}

/// `v = ∩(S{u})` on the inner ball.
pub fn target_entourage(ball: &CayleyBall, divider: &Divider, s: &[Element]) -> Result<(Entourage, usize)> {
    let inner = ball.inner_radius();
    if s.is_empty() {
        return Ok((Entourage::full(ball.count_within(inner)), 0));
    }
    for g in s {
        if ball.find(g).is_none() {
            return Err(Error::input(format!(
                "{} is outside the ball",
                ball.model().format(g)
            )));
        }
    }
    let t = translate_intersection(ball, &divider.u, s, inner.min(divider.u.radius))?;
    if t.entourage.vertex_count() < ball.count_within(inner) {
        return Err(Error::input(format!(
            "the divider window (radius {}) does not cover the inner ball",
            divider.u.radius
        )));
    }
    Ok((t.entourage, t.unknown))
}

/// A geodesic between inner-ball vertices that misses `edges` and whose
/// endpoints are not `v`-close, if any.
fn violation(g: &Graph, inner: &[usize], v: &Entourage, edges: &[Edge]) -> Option<Vec<usize>> {
    let blocked: HashSet<Edge> = edges.iter().copied().collect();
    let hit = inner.par_iter().find_map_first(|&x| {
        let d = bfs(g, x);
        let avoid = bfs_avoiding(g, x, |e| blocked.contains(&e));
        inner
            .iter()
            .find(|&&y| y > x && !v.contains(x, y) && avoid[y] == d[y])
            .map(|&y| (x, y))
    })?;
    let kept = g.edges().iter().filter(|e| !blocked.contains(e)).map(|e| (e.0, e.1));
    let sub = Graph::new(g.vertex_count(), kept).expect("subgraph of a simple graph");
    canonical_geodesic(&sub, &bfs(&sub, hit.1), hit.0)
}

/// Smallest `r ≤ inner radius` such that every geodesic between inner-ball
/// vertices missing the edges of `B_r` has its endpoints in `v = ∩(S{u})`.
pub fn generalized_karlsson_search(ball: &CayleyBall, divider: &Divider, s: &[Element]) -> Result<KarlssonReport> {
    let inner_r = ball.inner_radius();
    let (v, unknown) = target_entourage(ball, divider, s)?;
    let inner = ball.within(inner_r);
    let checked = inner.len() * (inner.len() - 1) / 2;
    let mut last = None;
    for r in 0..=inner_r {
        let edges = ball_edges(ball, r);
        match violation(ball.graph(), &inner, &v, &edges) {
            None => {
                return Ok(KarlssonReport {
                    r,
                    edges,
                    checked,
                    unknown,
                    status: KarlssonStatus::Certified,
                })
            }
            Some(geo) => last = Some((r, edges, geo)),
        }
    }
    let (r, edges, geodesic) = last.expect("at least one radius is tried");
    Ok(KarlssonReport {
        r,
        edges,
        checked,
        unknown,
        status: KarlssonStatus::Failed { geodesic },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reverification {
    pub geodesics: usize,
    pub exhaustive: bool,
    pub violation: Option<Vec<usize>>,
}

/// Lists geodesics pair by pair (up to [`GEODESIC_CAP`] each) and looks for
/// one that misses `edges` with endpoints outside `v`.
pub fn reverify_karlsson(ball: &CayleyBall, v: &Entourage, edges: &[Edge]) -> Reverification {
    let g = ball.graph();
    let inner = ball.within(ball.inner_radius());
    let blocked: HashSet<Edge> = edges.iter().copied().collect();
    let results: Vec<(usize, bool, Option<Vec<usize>>)> = inner
        .par_iter()
        .map(|&y| {
            let to_y = bfs(g, y);
            let (mut count, mut complete, mut bad) = (0, true, None);
            for &x in inner.iter().filter(|&&x| x < y) {
                let segs = match geodesics_with(g, &to_y, x, GEODESIC_CAP) {
                    Geodesics::Found { segments, .. } => segments,
                    Geodesics::CapExceeded { segments, .. } => {
                        complete = false;
                        segments
                    }
                    Geodesics::Disconnected => continue,
                };
                count += segs.len();
                if bad.is_none() && !v.contains(x, y) {
                    bad = segs
                        .iter()
                        .find(|s| !s.edges().any(|e| blocked.contains(&e)))
                        .map(|s| s.vertices().to_vec());
                }
            }
            (count, complete, bad)
        })
        .collect();
    Reverification {
        geodesics: results.iter().map(|r| r.0).sum(),
        exhaustive: results.iter().all(|r| r.1),
        violation: results.into_iter().find_map(|r| r.2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::GroupModel;

    #[test]
    fn line_has_one_row() {
        let b = CayleyBall::build(&GroupModel::free_abelian(1), 9).unwrap();
        let t = karlsson_decay_scan(&b, 0.5).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].h, 0);
        assert_eq!(t.rows[0].max_floyd_length, 3.5);
        assert!(t.exhaustive);
    }

    #[test]
    fn small_inner_radius_is_rejected() {
        let b = CayleyBall::build(&GroupModel::free(2), 6).unwrap();
        assert!(karlsson_decay_scan(&b, 0.5).is_err());
    }

    #[test]
    fn ball_edge_counts() {
        let b = CayleyBall::build(&GroupModel::free(2), 3).unwrap();
        assert!(ball_edges(&b, 0).is_empty());
        assert_eq!(ball_edges(&b, 1).len(), 4);
        assert_eq!(ball_edges(&b, 2).len(), 16);
    }
}
