//! Undirected simple graphs with dense vertex indices.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// An unordered edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn has(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

/// Undirected simple graph on vertices `0..vertex_count`.
///
/// Loops and repeated edges are rejected at construction; adjacency lists
/// are kept sorted so that "least index wins" tie-breaks are cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, usize>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertex_count];
        let mut list = Vec::new();
        let mut edge_index = HashMap::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::input(format!(
                    "edge ({a},{b}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if a == b {
                return Err(Error::input(format!("loop at vertex {a}")));
            }
            let e = Edge::new(a, b);
            if edge_index.contains_key(&e) {
                return Err(Error::input(format!("repeated edge ({},{})", e.0, e.1)));
            }
            edge_index.insert(e, list.len());
            list.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges: list,
            edge_index,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::input(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle graph is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    /// `K_{2,n}`: vertices 0 and 1 form the part of size two.
    pub fn complete_bipartite_2n(n: usize) -> Self {
        let edges = (0..n).flat_map(|k| [(0, k + 2), (1, k + 2)]);
        Graph::new(n + 2, edges).expect("K_2,n is simple")
    }

    /// Rectangular grid, vertex `(r, c)` has index `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::new(rows * cols, edges).expect("grid graph is simple")
    }

    /// Subgraph induced on the vertices `0..m`, keeping labels.
    pub fn induced_prefix(&self, m: usize) -> Graph {
        let m = m.min(self.vertex_count());
        let edges = self.edges.iter().filter(|e| e.1 < m).map(|e| (e.0, e.1));
        let mut g = Graph::new(m, edges).expect("subgraph of a simple graph is simple");
        g.labels = self.labels.as_ref().map(|l| l[..m].to_vec());
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_index.contains_key(&Edge::new(a, b))
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&Edge::new(a, b)).copied()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Index of the vertex carrying `label`, or a numeric index when the
    /// graph has no labels.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&v: &usize| v < self.vertex_count()),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "vertex {v} outside 0..{}",
                self.vertex_count()
            )))
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        if self.edge_index.contains_key(&e) {
            Ok(())
        } else {
            Err(Error::input(format!("({},{}) is not an edge", e.0, e.1)))
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        let d = crate::paths::bfs(self, 0);
        d.iter().all(|&x| x != crate::paths::UNREACHABLE)
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }
}

/// Positive edge lengths, indexed like [`Graph::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    weights: Vec<f64>,
}

impl EdgeWeights {
    pub fn new(graph: &Graph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::input(format!(
                "{} weights for {} edges",
                weights.len(),
                graph.edge_count()
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::input(format!("edge {i} has non-positive weight {w}")));
        }
        Ok(EdgeWeights { weights })
    }

    pub fn unit(graph: &Graph) -> Self {
        EdgeWeights {
            weights: vec![1.0; graph.edge_count()],
        }
    }

    pub fn get(&self, edge_id: usize) -> f64 {
        self.weights[edge_id]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_repeats() {
        assert!(matches!(Graph::new(2, [(0, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::new(2, [(0, 1), (1, 0)]), Err(Error::Input(_))));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::Input(_))));
    }

    #[test]
    fn small_families() {
        assert_eq!(Graph::grid(3, 3).edge_count(), 12);
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert!(Graph::path(5).is_tree());
        assert!(!Graph::cycle(5).is_tree());
        let k = Graph::complete_bipartite_2n(3);
        assert_eq!(k.neighbors(0), &[2, 3, 4]);
    }

    #[test]
    fn weights_must_be_positive() {
        let g = Graph::path(3);
        assert!(EdgeWeights::new(&g, vec![1.0, 0.0]).is_err());
        assert!(EdgeWeights::new(&g, vec![1.0, f64::INFINITY]).is_err());
        assert!(EdgeWeights::new(&g, vec![1.0]).is_err());
        assert!(EdgeWeights::new(&g, vec![0.5, 0.25]).is_ok());
    }
}
