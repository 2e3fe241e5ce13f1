//! Shared inputs for the benchmarks.

use relhyp_core::{CayleyBall, Edge, GroupModel};

pub fn ball(spec: &str, radius: u32) -> CayleyBall {
    let model: GroupModel = spec.parse().expect("valid group spec");
    CayleyBall::build(&model, radius).expect("ball fits the vertex limit")
}

pub fn basepoint_edges(ball: &CayleyBall) -> Vec<Edge> {
    let b = ball.basepoint();
    ball.graph().edges().iter().copied().filter(|e| e.has(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_build() {
        let b = ball("free:2", 2);
        assert_eq!(basepoint_edges(&b).len(), 4);
    }
}
