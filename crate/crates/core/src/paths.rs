//! Shortest paths, geodesic segments, arcs and circuits.

use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeWeights, Graph};

/// Hop distance reported for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

pub fn bfs(graph: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in graph.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// BFS that ignores the edges for which `blocked` returns true.
pub fn bfs_avoiding(graph: &Graph, source: usize, blocked: impl Fn(Edge) -> bool) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; graph.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in graph.neighbors(v) {
            if dist[w] == UNREACHABLE && !blocked(Edge::new(v, w)) {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // reversed for a min-heap; weights are finite so total_cmp is a total order here
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

pub fn dijkstra(graph: &Graph, weights: &EdgeWeights, source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; graph.vertex_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapItem(0.0, source));
    while let Some(HeapItem(d, v)) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &w in graph.neighbors(v) {
            let id = graph.edge_id(v, w).expect("adjacency lists match the edge set");
            let nd = d + weights.get(id);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(HeapItem(nd, w));
            }
        }
    }
    dist
}

/// Single-source distances from every vertex in `sources`.
///
/// Unit weights (`None`) go through BFS and are exact integers converted to
/// `f64`; unreachable vertices report `+∞`. Sources run in parallel.
pub fn shortest_dist(
    graph: &Graph,
    weights: Option<&EdgeWeights>,
    sources: &[usize],
) -> Result<Vec<Vec<f64>>> {
    for &s in sources {
        graph.check_vertex(s)?;
    }
    if let Some(w) = weights {
        if w.len() != graph.edge_count() {
            return Err(Error::input("edge weights do not cover the edge set"));
        }
    }
    Ok(sources
        .par_iter()
        .map(|&s| match weights {
            Some(w) => dijkstra(graph, w, s),
            None => bfs(graph, s)
                .into_iter()
                .map(|d| if d == UNREACHABLE { f64::INFINITY } else { d as f64 })
                .collect(),
        })
        .collect())
}

/// All-pairs hop distances, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct HopMatrix {
    n: usize,
    data: Vec<u32>,
}

impl HopMatrix {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| bfs(graph, s)).collect();
        HopMatrix {
            n,
            data: rows.concat(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.data[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    /// Distance from a vertex to an edge: the nearer endpoint.
    #[inline]
    pub fn to_edge(&self, x: usize, e: Edge) -> u32 {
        self.get(x, e.0).min(self.get(x, e.1))
    }
}

/// Symmetric real distance matrix with zero diagonal; `+∞` marks
/// unreachable pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("distance rows must form a square matrix"));
        }
        Ok(DistanceMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn of_graph(graph: &Graph, weights: Option<&EdgeWeights>) -> Self {
        let all: Vec<usize> = (0..graph.vertex_count()).collect();
        let rows = shortest_dist(graph, weights, &all).expect("all vertices are valid sources");
        DistanceMatrix::from_rows(rows).expect("rows are square")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    /// First violated metric axiom, if any, with absolute slack `tol`.
    pub fn metric_violation(&self, tol: f64) -> Option<String> {
        let n = self.n;
        for x in 0..n {
            if self.get(x, x) != 0.0 {
                return Some(format!("d({x},{x}) = {}", self.get(x, x)));
            }
            for y in 0..n {
                if self.get(x, y) != self.get(y, x) {
                    return Some(format!("d({x},{y}) != d({y},{x})"));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let dxy = self.get(x, y);
                if dxy.is_infinite() {
                    continue;
                }
                for z in 0..n {
                    if self.get(x, z) > dxy + self.get(y, z) + tol {
                        return Some(format!("triangle inequality fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        None
    }
}

/// A geodesic vertex path; its boundary pair is `{first, last}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeodesicSegment {
    vertices: Vec<usize>,
}

impl GeodesicSegment {
    /// Trusts the caller that the path is geodesic; only adjacency is
    /// debug-checked.
    pub fn from_vertices(graph: &Graph, vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| graph.has_edge(w[0], w[1])));
        GeodesicSegment { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn boundary(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().any(|f| f == e)
    }
}

/// Simple path with at least one edge. Two arcs are equal when one is the
/// reversal of the other.
#[derive(Debug, Clone, Eq)]
pub struct Arc {
    vertices: Vec<usize>,
}

impl Arc {
    pub fn new(graph: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::input("an arc needs at least two vertices"));
        }
        if !distinct(&vertices) {
            return Err(Error::input("arc vertices must be distinct"));
        }
        if let Some(w) = vertices.windows(2).find(|w| !graph.has_edge(w[0], w[1])) {
            return Err(Error::input(format!("({},{}) is not an edge", w[0], w[1])));
        }
        Ok(Arc { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn canonical(&self) -> Vec<usize> {
        let mut v = self.vertices.clone();
        if v.first() > v.last() || (v.first() == v.last() && v.get(1) > v.get(v.len() - 2)) {
            v.reverse();
        }
        v
    }
}

impl PartialEq for Arc {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl std::hash::Hash for Arc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state)
    }
}

/// Closed simple path of length at least three, stored without repeating
/// the first vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    vertices: Vec<usize>,
}

impl Circuit {
    pub fn new(graph: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::input("a circuit needs at least three vertices"));
        }
        if !distinct(&vertices) {
            return Err(Error::input("circuit vertices must be distinct"));
        }
        let n = vertices.len();
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if !graph.has_edge(a, b) {
                return Err(Error::input(format!("({a},{b}) is not an edge")));
            }
        }
        Ok(Circuit { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Edge::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

fn distinct(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// Outcome of [`geodesics_between`].
#[derive(Debug, Clone, PartialEq)]
pub enum Geodesics {
    Found {
        length: u32,
        segments: Vec<GeodesicSegment>,
    },
    /// More than `cap` geodesics exist; the first `cap` in lexicographic
    /// order are kept.
    CapExceeded {
        length: u32,
        cap: usize,
        segments: Vec<GeodesicSegment>,
    },
    Disconnected,
}

impl Geodesics {
    pub fn segments(&self) -> &[GeodesicSegment] {
        match self {
            Geodesics::Found { segments, .. } | Geodesics::CapExceeded { segments, .. } => segments,
            Geodesics::Disconnected => &[],
        }
    }

    pub fn is_complete(&self) -> bool {
        !matches!(self, Geodesics::CapExceeded { .. })
    }
}

pub fn geodesics_between(graph: &Graph, x: usize, y: usize, cap: usize) -> Result<Geodesics> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    if cap == 0 {
        return Err(Error::input("cap must be at least 1"));
    }
    let to_y = bfs(graph, y);
    Ok(geodesics_with(graph, &to_y, x, cap))
}

/// Geodesic enumeration given hop distances to the target `y`
/// (`to_y[y] == 0`). Walks the shortest-path DAG in increasing vertex order.
pub fn geodesics_with(graph: &Graph, to_y: &[u32], x: usize, cap: usize) -> Geodesics {
    let length = to_y[x];
    if length == UNREACHABLE {
        return Geodesics::Disconnected;
    }
    let mut segments = Vec::new();
    let mut path = vec![x];
    // stack of (vertex, next neighbour position)
    let mut stack = vec![(x, 0usize)];
    while let Some(&(v, pos)) = stack.last() {
        if to_y[v] == 0 {
            if segments.len() == cap {
                return Geodesics::CapExceeded {
                    length,
                    cap,
                    segments,
                };
            }
            segments.push(GeodesicSegment::from_vertices(graph, path.clone()));
            stack.pop();
            path.pop();
            continue;
        }
        let nbrs = graph.neighbors(v);
        let next = (pos..nbrs.len()).find(|&p| to_y[nbrs[p]] + 1 == to_y[v]);
        match next {
            Some(p) => {
                stack.last_mut().unwrap().1 = p + 1;
                stack.push((nbrs[p], 0));
                path.push(nbrs[p]);
            }
            None => {
                stack.pop();
                path.pop();
            }
        }
    }
    Geodesics::Found { length, segments }
}

/// Lexicographically least geodesic from `x` to the target of `to_y`.
pub fn canonical_geodesic(graph: &Graph, to_y: &[u32], x: usize) -> Option<Vec<usize>> {
    if to_y[x] == UNREACHABLE {
        return None;
    }
    let mut path = vec![x];
    let mut v = x;
    while to_y[v] > 0 {
        v = *graph
            .neighbors(v)
            .iter()
            .find(|&&w| to_y[w] + 1 == to_y[v])
            .expect("a vertex off the target has a neighbour one step closer");
        path.push(v);
    }
    Some(path)
}

/// Result of [`enumerate_arcs`].
#[derive(Debug, Clone, PartialEq)]
pub struct ArcEnumeration {
    pub arcs: Vec<Arc>,
    /// True when the search stopped at `cap` arcs with more left unexplored.
    pub truncated: bool,
}

/// All arcs from `x` to `y` with at most `max_len` edges.
pub fn enumerate_arcs(
    graph: &Graph,
    x: usize,
    y: usize,
    max_len: usize,
    cap: usize,
) -> Result<ArcEnumeration> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    if max_len == 0 {
        return Err(Error::input("max_len must be at least 1"));
    }
    let mut arcs = Vec::new();
    if x == y {
        return Ok(ArcEnumeration {
            arcs,
            truncated: false,
        });
    }
    let to_y = bfs(graph, y);
    let mut on_path = vec![false; graph.vertex_count()];
    let mut path = vec![x];
    on_path[x] = true;
    let mut stack = vec![(x, 0usize)];
    let mut truncated = false;
    while let Some(&(v, pos)) = stack.last() {
        if v == y {
            if arcs.len() == cap {
                truncated = true;
                break;
            }
            arcs.push(Arc {
                vertices: path.clone(),
            });
            stack.pop();
            on_path[path.pop().unwrap()] = false;
            continue;
        }
        let used = path.len() - 1;
        let nbrs = graph.neighbors(v);
        let next = (pos..nbrs.len()).find(|&p| {
            let w = nbrs[p];
            !on_path[w] && to_y[w] != UNREACHABLE && used + 1 + to_y[w] as usize <= max_len
        });
        match next {
            Some(p) => {
                stack.last_mut().unwrap().1 = p + 1;
                let w = nbrs[p];
                stack.push((w, 0));
                path.push(w);
                on_path[w] = true;
            }
            None => {
                stack.pop();
                on_path[path.pop().unwrap()] = false;
            }
        }
    }
    Ok(ArcEnumeration { arcs, truncated })
}
