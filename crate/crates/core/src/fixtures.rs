//! Named test graphs, all with at most 300 vertices.

use crate::cayley::{CayleyBall, GroupModel};
use crate::graph::Graph;

fn binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    Graph::new(n, (1..n).map(|v| ((v - 1) / 2, v))).expect("tree")
}

fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).expect("Petersen graph")
}

fn ball(spec: &str, r: u32) -> Graph {
    let model: GroupModel = spec.parse().expect("fixture group spec");
    CayleyBall::build(&model, r).expect("small ball").graph().clone()
}

/// The corpus, in a fixed order.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 2..=8 {
        out.push((format!("path{n}"), Graph::path(n)));
    }
    for n in 3..=9 {
        out.push((format!("cycle{n}"), Graph::cycle(n)));
    }
    for (r, c) in [(2, 2), (3, 3), (2, 8), (4, 4), (5, 5), (6, 6)] {
        out.push((format!("grid{r}x{c}"), Graph::grid(r, c)));
    }
    for n in [2, 3, 5, 8] {
        out.push((format!("k2_{n}"), Graph::complete_bipartite_2n(n)));
    }
    for n in [4, 5] {
        out.push((format!("complete{n}"), Graph::complete(n)));
    }
    out.push(("binary_tree4".into(), binary_tree(4)));
    out.push(("petersen".into(), petersen()));
    for (spec, r) in [
        ("zn:1", 6),
        ("free:2", 3),
        ("free:3", 2),
        ("zn:2", 4),
        ("cyclic:12", 6),
        ("product:cyclic:2,cyclic:3", 8),
        ("surface:2", 2),
    ] {
        let g = ball(spec, r);
        assert!(g.vertex_count() <= 300, "{spec} R={r} is too large for the corpus");
        out.push((format!("{spec}@R{r}"), g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_small_and_connected() {
        let c = corpus();
        assert!(c.len() > 30);
        for (name, g) in &c {
            assert!(g.vertex_count() <= 300, "{name}");
            assert!(g.is_connected(), "{name}");
        }
        assert!(petersen().edges().len() == 15);
        assert!(binary_tree(4).is_tree());
    }
}
