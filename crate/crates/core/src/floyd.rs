//! Floyd rescaling: the edge `e` gets length `λ^{d(v,e)}` where `d(v,e)` is
//! the distance from the basepoint to the nearer endpoint of `e`.

use rayon::prelude::*;

use crate::cayley::CayleyBall;
use crate::error::{Error, Result};
use crate::graph::{EdgeWeights, Graph};
use crate::paths::{bfs, dijkstra, DistanceMatrix, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloydConfig {
    pub lambda: f64,
    pub basepoint: usize,
}

impl FloydConfig {
    pub fn new(lambda: f64, basepoint: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::input(format!("lambda must lie in (0,1), got {lambda}")));
        }
        Ok(FloydConfig { lambda, basepoint })
    }
}

/// Edge lengths `λ^{d(v,e)}`. Every edge must be reachable from the
/// basepoint.
pub fn floyd_weights(graph: &Graph, cfg: &FloydConfig) -> Result<EdgeWeights> {
    FloydConfig::new(cfg.lambda, cfg.basepoint)?;
    graph.check_vertex(cfg.basepoint)?;
    let d = bfs(graph, cfg.basepoint);
    let mut w = Vec::with_capacity(graph.edge_count());
    for e in graph.edges() {
        let n = d[e.0].min(d[e.1]);
        if n == UNREACHABLE {
            return Err(Error::input(format!(
                "edge ({},{}) is not connected to the basepoint",
                e.0, e.1
            )));
        }
        w.push(cfg.lambda.powi(n as i32));
    }
    EdgeWeights::new(graph, w)
}

pub fn floyd_dist(graph: &Graph, cfg: &FloydConfig, x: usize, y: usize) -> Result<f64> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    let w = floyd_weights(graph, cfg)?;
    Ok(dijkstra(graph, &w, x)[y])
}

/// Floyd distances from each source to every vertex, computed in parallel.
pub fn floyd_rows(graph: &Graph, cfg: &FloydConfig, sources: &[usize]) -> Result<Vec<Vec<f64>>> {
    let w = floyd_weights(graph, cfg)?;
    crate::paths::shortest_dist(graph, Some(&w), sources)
}

pub fn floyd_matrix(graph: &Graph, cfg: &FloydConfig) -> Result<DistanceMatrix> {
    let w = floyd_weights(graph, cfg)?;
    Ok(DistanceMatrix::of_graph(graph, Some(&w)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiLipschitz {
    /// Smallest `K` with `δ_w/K ≤ δ_v ≤ K·δ_w` on the inner-ball pairs.
    pub k: f64,
    /// The a-priori bound `λ^{-d(v,w)}`.
    pub bound: f64,
    pub pairs: usize,
}

impl BiLipschitz {
    pub fn within_bound(&self) -> bool {
        self.k <= self.bound * (1.0 + 1e-12)
    }
}

/// Compares the Floyd metrics based at `v` and at `w` on all pairs of
/// inner-ball vertices.
pub fn basepoint_bilipschitz_check(ball: &CayleyBall, lambda: f64, v: usize, w: usize) -> Result<BiLipschitz> {
    let g = ball.graph();
    let cv = FloydConfig::new(lambda, v)?;
    let cw = FloydConfig::new(lambda, w)?;
    let inner = ball.within(ball.inner_radius());
    let dv = floyd_rows(g, &cv, &inner)?;
    let dw = floyd_rows(g, &cw, &inner)?;
    let mut k: f64 = 1.0;
    let mut pairs = 0;
    for (i, &x) in inner.iter().enumerate() {
        for &y in &inner[i + 1..] {
            let (a, b) = (dv[i][y], dw[i][y]);
            debug_assert!(x != y);
            k = k.max(a / b).max(b / a);
            pairs += 1;
        }
    }
    let hops = bfs(g, v)[w];
    Ok(BiLipschitz {
        k,
        bound: lambda.powi(-(hops as i32)),
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clusters {
    /// Vertices of the outer sphere, in increasing order.
    pub sphere: Vec<usize>,
    /// Cluster id of each sphere vertex; ids are numbered by first appearance.
    pub cluster: Vec<usize>,
    pub count: usize,
}

/// Single-linkage components of the radius-`R` sphere under the relation
/// "Floyd distance `< ε`".
pub fn boundary_clusters(ball: &CayleyBall, cfg: &FloydConfig, epsilon: f64) -> Result<Clusters> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::input(format!("epsilon must be positive, got {epsilon}")));
    }
    let sphere = ball.sphere(ball.radius());
    if sphere.is_empty() {
        return Err(Error::input(format!("the sphere of radius {} is empty", ball.radius())));
    }
    let rows = floyd_rows(ball.graph(), cfg, &sphere)?;
    let n = sphere.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let close: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let row = &rows[i];
            let sphere = &sphere;
            (i + 1..n).filter(move |&j| row[sphere[j]] < epsilon).map(move |j| (i, j))
        })
        .collect();
    for (i, j) in close {
        let (a, b) = (root(&mut parent, i), root(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut cluster = Vec::with_capacity(n);
    let mut count = 0;
    for i in 0..n {
        let r = root(&mut parent, i);
        if ids[r] == usize::MAX {
            ids[r] = count;
            count += 1;
        }
        cluster.push(ids[r]);
    }
    Ok(Clusters { sphere, cluster, count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::GroupModel;

    #[test]
    fn line_weights_and_series() {
        let b = CayleyBall::build(&GroupModel::free_abelian(1), 6).unwrap();
        let cfg = FloydConfig::new(0.5, 0).unwrap();
        let x = b.vertex("3").unwrap();
        assert_eq!(floyd_dist(b.graph(), &cfg, 0, x).unwrap(), 1.75);
        assert_eq!(floyd_dist(b.graph(), &cfg, x, x).unwrap(), 0.0);
    }

    #[test]
    fn four_cycle_far_edge() {
        let g = Graph::cycle(4);
        let w = floyd_weights(&g, &FloydConfig::new(0.5, 0).unwrap()).unwrap();
        assert_eq!(w.get(g.edge_id(2, 3).unwrap()), 0.5);
        assert_eq!(w.get(g.edge_id(0, 1).unwrap()), 1.0);
    }

    #[test]
    fn lambda_is_validated() {
        assert!(FloydConfig::new(1.0, 0).is_err());
        assert!(FloydConfig::new(0.0, 0).is_err());
        assert!(FloydConfig::new(f64::NAN, 0).is_err());
    }

    #[test]
    fn disconnected_edges_are_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(floyd_weights(&g, &FloydConfig::new(0.5, 0).unwrap()).is_err());
    }

    #[test]
    fn line_has_two_ends() {
        let b = CayleyBall::build(&GroupModel::free_abelian(1), 6).unwrap();
        let c = boundary_clusters(&b, &FloydConfig::new(0.5, 0).unwrap(), 0.1).unwrap();
        assert_eq!(c.count, 2);
        let cyc = CayleyBall::build(&GroupModel::cyclic(12), 6).unwrap();
        let c = boundary_clusters(&cyc, &FloydConfig::new(0.5, 0).unwrap(), 0.1).unwrap();
        assert_eq!((c.sphere.len(), c.count), (1, 1));
    }

    #[test]
    fn same_basepoint_is_isometric() {
        let b = CayleyBall::build(&GroupModel::free(2), 3).unwrap();
        let r = basepoint_bilipschitz_check(&b, 0.5, 0, 0).unwrap();
        assert_eq!(r.k, 1.0);
    }
}
