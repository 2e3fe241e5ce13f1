//! Visibility entourages `u_e = {{x,y} : d(x,e) + d(y,e) ≥ d(x,y)}`: the
//! pairs no geodesic between which passes through `e`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::entourage::Entourage;
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::paths::{bfs, geodesics_between, geodesics_with, Geodesics, UNREACHABLE};

fn widen(d: u32) -> u64 {
    if d == UNREACHABLE {
        u64::MAX / 4
    } else {
        d as u64
    }
}

pub fn visibility_set(graph: &Graph, e: Edge) -> Result<Entourage> {
    principal_set(graph, &[e])
}

/// `u_E = ∩ u_e` over `E`; the empty intersection is `S²M`.
pub fn principal_set(graph: &Graph, edges: &[Edge]) -> Result<Entourage> {
    let all: Vec<usize> = (0..graph.vertex_count()).collect();
    principal_set_on(graph, edges, &all)
}

/// `u_E` restricted to `vertices`; position `i` of the result stands for
/// `vertices[i]`. Distances are taken in the whole graph.
pub fn principal_set_on(graph: &Graph, edges: &[Edge], vertices: &[usize]) -> Result<Entourage> {
    for &e in edges {
        graph.check_edge(e)?;
    }
    for &v in vertices {
        graph.check_vertex(v)?;
    }
    let n = vertices.len();
    if edges.is_empty() {
        return Ok(Entourage::full(n));
    }
    // distance from each listed vertex to each edge of E
    let to_edge: Vec<Vec<u64>> = edges
        .par_iter()
        .map(|e| {
            let (d0, d1) = (bfs(graph, e.0), bfs(graph, e.1));
            vertices.iter().map(|&v| widen(d0[v].min(d1[v]))).collect()
        })
        .collect();
    let rows: Vec<Vec<u32>> = vertices
        .par_iter()
        .map(|&x| {
            let d = bfs(graph, x);
            vertices.iter().map(|&y| d[y]).collect()
        })
        .collect();
    Ok(Entourage::from_fn(n, |i, j| {
        let dxy = rows[i][j];
        dxy == UNREACHABLE || to_edge.iter().all(|de| de[i] + de[j] >= dxy as u64)
    }))
}

/// `u_e` for every edge (indexed by edge id), computed without the distance
/// formula: for each pair the edges of the shortest-path DAG are collected
/// by walking back from the target.
pub fn visibility_sets_by_geodesics(graph: &Graph) -> Vec<Entourage> {
    let n = graph.vertex_count();
    let m = graph.edge_count();
    // per source x: for each edge, the targets y whose geodesics from x use it
    let hits: Vec<Vec<FixedBitSet>> = (0..n)
        .into_par_iter()
        .map(|x| {
            let d = bfs(graph, x);
            let mut out = vec![FixedBitSet::with_capacity(n); m];
            let mut seen = vec![usize::MAX; n];
            for y in 0..n {
                if d[y] == UNREACHABLE || y == x {
                    continue;
                }
                let mut stack = vec![y];
                seen[y] = y;
                while let Some(v) = stack.pop() {
                    for &w in graph.neighbors(v) {
                        if d[w] != UNREACHABLE && d[w] + 1 == d[v] {
                            out[graph.edge_id(v, w).expect("neighbours share an edge")].insert(y);
                            if seen[w] != y {
                                seen[w] = y;
                                stack.push(w);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    (0..m)
        .into_par_iter()
        .map(|k| {
            let mut u = Entourage::full(n);
            for (x, row) in hits.iter().enumerate() {
                for y in row[k].ones() {
                    u.remove(x, y);
                }
            }
            u
        })
        .collect()
}

/// `u_e` by listing every geodesic of every pair; `None` when some pair has
/// more than `cap` geodesics.
pub fn visibility_by_enumeration(graph: &Graph, e: Edge, cap: usize) -> Result<Option<Entourage>> {
    graph.check_edge(e)?;
    let n = graph.vertex_count();
    let mut u = Entourage::diagonal(n);
    for x in 0..n {
        for y in x + 1..n {
            let g = geodesics_between(graph, x, y, cap)?;
            if !g.is_complete() {
                return Ok(None);
            }
            let through = match &g {
                Geodesics::Found { segments, .. } => segments.iter().any(|s| s.contains_edge(e)),
                _ => false,
            };
            if !through {
                u.insert(x, y);
            }
        }
    }
    Ok(Some(u))
}

/// `u_e` for every edge (indexed by edge id) from one pass over the
/// geodesics of every pair; `None` when some pair has more than `cap`.
pub fn visibility_all_by_enumeration(graph: &Graph, cap: usize) -> Option<Vec<Entourage>> {
    let n = graph.vertex_count();
    let through: Vec<Option<Vec<(usize, usize)>>> = (0..n)
        .into_par_iter()
        .map(|y| {
            let to_y = bfs(graph, y);
            let mut hits = Vec::new();
            for x in 0..y {
                match geodesics_with(graph, &to_y, x, cap) {
                    Geodesics::Found { segments, .. } => {
                        let mut ids: Vec<usize> = segments
                            .iter()
                            .flat_map(|s| s.edges().map(|e| graph.edge_id(e.0, e.1).expect("path edge")))
                            .collect();
                        ids.sort_unstable();
                        ids.dedup();
                        hits.extend(ids.into_iter().map(|k| (k, x)));
                    }
                    Geodesics::CapExceeded { .. } => return None,
                    Geodesics::Disconnected => {}
                }
            }
            Some(hits.into_iter().map(|(k, x)| (k, x * n + y)).collect())
        })
        .collect();
    let mut out = vec![Entourage::full(n); graph.edge_count()];
    for hits in through {
        for (k, xy) in hits? {
            out[k].remove(xy / n, xy % n);
        }
    }
    Some(out)
}

/// The finite shadow of pre-compactness: every vertex `v` is `u_E`-close to
/// a nearest endpoint of `E`. Returns the first vertex where this fails.
pub fn precompact_shadow(graph: &Graph, edges: &[Edge]) -> Result<Option<usize>> {
    if edges.is_empty() {
        return Ok(None);
    }
    let u = principal_set(graph, edges)?;
    let mut ends: Vec<usize> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
    ends.sort_unstable();
    ends.dedup();
    let rows: Vec<Vec<u32>> = ends.iter().map(|&s| bfs(graph, s)).collect();
    for v in 0..graph.vertex_count() {
        let best = rows.iter().map(|r| r[v]).min().unwrap_or(UNREACHABLE);
        if best == UNREACHABLE {
            continue;
        }
        let ok = ends
            .iter()
            .zip(&rows)
            .filter(|(_, r)| r[v] == best)
            .all(|(&s, _)| u.contains(v, s));
        if !ok {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle() {
        let g = Graph::cycle(4);
        let u = visibility_set(&g, Edge(0, 1)).unwrap();
        assert_eq!(u.pairs(), vec![(0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        assert!(visibility_set(&g, Edge(0, 1)).unwrap().is_diagonal());
    }

    #[test]
    fn empty_edge_set_gives_everything() {
        let g = Graph::cycle(5);
        assert!(principal_set(&g, &[]).unwrap().is_full());
    }

    #[test]
    fn three_methods_agree() {
        for g in [Graph::cycle(6), Graph::grid(3, 3), Graph::complete_bipartite_2n(3), Graph::path(5)] {
            let dag = visibility_sets_by_geodesics(&g);
            for (k, &e) in g.edges().iter().enumerate() {
                let formula = visibility_set(&g, e).unwrap();
                assert_eq!(formula, dag[k]);
                assert_eq!(Some(&formula), visibility_by_enumeration(&g, e, 1000).unwrap().as_ref());
                assert_eq!(formula, visibility_all_by_enumeration(&g, 1000).unwrap()[k]);
            }
        }
    }

    #[test]
    fn shadow_holds_on_grid() {
        let g = Graph::grid(4, 4);
        assert_eq!(precompact_shadow(&g, &[Edge(5, 6), Edge(6, 10)]).unwrap(), None);
    }
}
