//! Counting arcs of bounded length between two vertices.

use crate::cayley::{CayleyBall, Element, GroupModel};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::paths::{bfs, enumerate_arcs, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinenessReport {
    /// Number of arcs of length `≤ L`, or `cap` when capped.
    pub count: usize,
    /// The count is only a lower bound.
    pub capped: bool,
}

pub fn fineness_report(graph: &Graph, x: usize, y: usize, max_len: usize, cap: usize) -> Result<FinenessReport> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    let d = bfs(graph, x)[y];
    if d == UNREACHABLE {
        return Err(Error::input(format!("{x} and {y} are not connected")));
    }
    if (max_len as u64) < d as u64 {
        return Err(Error::input(format!("L = {max_len} is below d({x},{y}) = {d}")));
    }
    let arcs = enumerate_arcs(graph, x, y, max_len.max(1), cap)?;
    Ok(FinenessReport {
        count: arcs.arcs.len(),
        capped: arcs.truncated,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallFineness {
    pub radius: u32,
    pub at_radius: FinenessReport,
    pub at_next_radius: FinenessReport,
}

impl BallFineness {
    /// Growing the ball by one did not add arcs.
    pub fn stable(&self) -> bool {
        !self.at_radius.capped && self.at_radius == self.at_next_radius
    }
}

/// Counts the arcs on the balls of radius `R` and `R + 1`.
pub fn fineness_on_balls(
    model: &GroupModel,
    radius: u32,
    x: &Element,
    y: &Element,
    max_len: usize,
    cap: usize,
) -> Result<BallFineness> {
    let mut reports = Vec::new();
    for r in [radius, radius + 1] {
        let ball = CayleyBall::build(model, r)?;
        let find = |g: &Element| {
            ball.find(g)
                .ok_or_else(|| Error::input(format!("{} lies outside the ball of radius {r}", model.format(g))))
        };
        reports.push(fineness_report(ball.graph(), find(x)?, find(y)?, max_len, cap)?);
    }
    Ok(BallFineness {
        radius,
        at_radius: reports[0],
        at_next_radius: reports[1],
    })
}
