use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

use super::{Element, GroupModel};

pub const DEFAULT_VERTEX_LIMIT: usize = 200_000;

/// Environment variable overriding [`DEFAULT_VERTEX_LIMIT`].
pub const VERTEX_LIMIT_ENV: &str = "RELHYP_MAX_VERTICES";

/// Result of translating a ball vertex by a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Translation {
    Inside(usize),
    Outside,
}

impl Translation {
    pub fn vertex(self) -> Option<usize> {
        match self {
            Translation::Inside(v) => Some(v),
            Translation::Outside => None,
        }
    }
}

/// The ball of radius `R` about the identity in a Cayley graph.
///
/// Vertices are numbered in breadth-first (shortlex) order, so vertex 0 is
/// the identity and the vertices of norm `≤ r` form a prefix.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    model: GroupModel,
    graph: Graph,
    elements: Vec<Element>,
    norm: Vec<u32>,
    radius: u32,
    complete: bool,
    lookup: HashMap<u64, Vec<usize>>,
    edge_generator: Vec<usize>,
    generators: Vec<Element>,
}

impl CayleyBall {
    /// Builds the ball with the vertex limit taken from the environment.
    pub fn build(model: &GroupModel, radius: u32) -> Result<Self> {
        let limit = std::env::var(VERTEX_LIMIT_ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_VERTEX_LIMIT);
        Self::build_with_limit(model, radius, limit)
    }

    pub fn build_with_limit(model: &GroupModel, radius: u32, limit: usize) -> Result<Self> {
        if radius == 0 {
            return Err(Error::input("ball radius must be at least 1"));
        }
        let generators = model.generators();
        let mut elements = vec![model.identity()];
        let mut norm = vec![0u32];
        let mut lookup: HashMap<u64, Vec<usize>> = HashMap::new();
        lookup.insert(model.key(&elements[0]), vec![0]);
        let mut edges = Vec::new();
        let mut edge_generator = Vec::new();
        let mut seen = HashSet::new();
        let mut complete = true;
        let surface = matches!(model, GroupModel::Surface { .. });

        let mut next = 0;
        while next < elements.len() {
            let g = elements[next].clone();
            for (k, s) in generators.iter().enumerate() {
                let h = if surface {
                    // keep the breadth-first word: it is the shortlex geodesic
                    match (&g, s) {
                        (Element::Word(a), Element::Word(b)) => {
                            let mut w = a.clone();
                            w.extend_from_slice(b);
                            Element::Word(w)
                        }
                        _ => unreachable!(),
                    }
                } else {
                    model.mul(&g, s)
                };
                let key = model.key(&h);
                let found = lookup
                    .get(&key)
                    .and_then(|bucket| bucket.iter().copied().find(|&v| model.same(&elements[v], &h)));
                let target = match found {
                    Some(v) => v,
                    None if norm[next] < radius => {
                        if elements.len() >= limit {
                            return Err(Error::Resource { radius, limit });
                        }
                        let v = elements.len();
                        elements.push(h);
                        norm.push(norm[next] + 1);
                        lookup.entry(key).or_default().push(v);
                        v
                    }
                    None => {
                        complete = false;
                        continue;
                    }
                };
                if target != next && seen.insert(Edge::new(next, target)) {
                    edges.push((next, target));
                    edge_generator.push(k);
                }
            }
            next += 1;
        }

        let labels = elements.iter().map(|g| model.format(g)).collect();
        let graph = Graph::new(elements.len(), edges)?.with_labels(labels)?;
        Ok(CayleyBall {
            model: model.clone(),
            graph,
            elements,
            norm,
            radius,
            complete,
            lookup,
            edge_generator,
            generators,
        })
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// `⌊R/3⌋`: pairs of vertices this close to the identity have ball
    /// distance equal to their distance in the whole Cayley graph.
    pub fn inner_radius(&self) -> u32 {
        self.radius / 3
    }

    /// Largest norm `r` such that ball distances between vertices of norm
    /// `≤ r` are exact. Balls in trees are convex and a ball containing the
    /// whole group is the whole graph; otherwise this is the inner radius.
    pub fn exact_radius(&self) -> u32 {
        if self.complete || self.model.is_tree() {
            self.radius
        } else {
            self.inner_radius()
        }
    }

    /// True when the ball contains the whole (finite) group.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn norm(&self, v: usize) -> u32 {
        self.norm[v]
    }

    pub fn norms(&self) -> &[u32] {
        &self.norm
    }

    pub fn element(&self, v: usize) -> &Element {
        &self.elements[v]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn label(&self, v: usize) -> String {
        self.graph.label(v)
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Index into [`CayleyBall::generators`] of the generator labelling an edge.
    pub fn edge_generator(&self, edge_id: usize) -> usize {
        self.edge_generator[edge_id]
    }

    /// Number of vertices of norm `≤ r`; they are vertices `0..count`.
    pub fn count_within(&self, r: u32) -> usize {
        self.norm.partition_point(|&n| n <= r)
    }

    pub fn within(&self, r: u32) -> Vec<usize> {
        (0..self.count_within(r)).collect()
    }

    pub fn sphere(&self, r: u32) -> Vec<usize> {
        let lo = if r == 0 { 0 } else { self.count_within(r - 1) };
        (lo..self.count_within(r)).collect()
    }

    pub fn find(&self, g: &Element) -> Option<usize> {
        self.lookup
            .get(&self.model.key(g))?
            .iter()
            .copied()
            .find(|&v| self.model.same(&self.elements[v], g))
    }

    /// Left translation `g·x`.
    pub fn act(&self, g: &Element, x: usize) -> Result<Translation> {
        self.graph.check_vertex(x)?;
        let h = self.model.multiply(g, &self.elements[x])?;
        Ok(match self.find(&h) {
            Some(v) => Translation::Inside(v),
            None => Translation::Outside,
        })
    }

    /// `g·x` for every vertex `x` (`None` outside the ball).
    pub fn translate_all(&self, g: &Element) -> Result<Vec<Option<usize>>> {
        self.model.multiply(g, &self.model.identity())?;
        Ok(self
            .elements
            .iter()
            .map(|x| self.find(&self.model.mul(g, x)))
            .collect())
    }

    /// Resolves a vertex given as a group element string or as `@index`.
    pub fn vertex(&self, s: &str) -> Result<usize> {
        if let Some(idx) = s.strip_prefix('@') {
            let v: usize = idx
                .parse()
                .map_err(|_| Error::input(format!("bad vertex index '{s}'")))?;
            self.graph.check_vertex(v)?;
            return Ok(v);
        }
        let g = self.model.parse(s)?;
        self.find(&g).ok_or_else(|| {
            Error::input(format!("{s} lies outside the ball of radius {}", self.radius))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_sizes() {
        let z = GroupModel::free_abelian(1);
        let b = CayleyBall::build(&z, 3).unwrap();
        assert_eq!((b.len(), b.graph().edge_count()), (7, 6));
        let f2 = CayleyBall::build(&GroupModel::free(2), 2).unwrap();
        assert_eq!(f2.len(), 17);
        assert_eq!(f2.sphere(2).len(), 12);
        let z2 = CayleyBall::build(&GroupModel::free_abelian(2), 2).unwrap();
        assert_eq!(z2.len(), 13);
    }

    #[test]
    fn finite_groups_close_up() {
        let c = CayleyBall::build(&GroupModel::cyclic(12), 6).unwrap();
        assert_eq!(c.len(), 12);
        assert_eq!(c.graph().edge_count(), 12);
        assert!(c.is_complete());
        assert_eq!(c.sphere(6).len(), 1);
        let p = CayleyBall::build(&"product:cyclic:2,cyclic:3".parse().unwrap(), 3).unwrap();
        assert!(!p.is_complete());
    }

    #[test]
    fn translations() {
        let z = GroupModel::free_abelian(1);
        let b = CayleyBall::build(&z, 3).unwrap();
        let three = b.vertex("3").unwrap();
        assert_eq!(b.act(&z.parse("1").unwrap(), three).unwrap(), Translation::Outside);
        assert_eq!(b.act(&z.identity(), three).unwrap(), Translation::Inside(three));
        let f = GroupModel::free(2);
        let fb = CayleyBall::build(&f, 2).unwrap();
        let x = fb.vertex("A").unwrap();
        assert_eq!(fb.act(&f.parse("a").unwrap(), x).unwrap(), Translation::Inside(0));
    }

    #[test]
    fn vertex_limit_is_enforced() {
        let err = CayleyBall::build_with_limit(&GroupModel::free(2), 6, 100).unwrap_err();
        assert_eq!(err, Error::Resource { radius: 6, limit: 100 });
    }

    #[test]
    fn surface_ball_has_shortlex_words() {
        let s = GroupModel::surface(2);
        let b = CayleyBall::build(&s, 2).unwrap();
        // 1 + 8 + 8·7 (no relator is short enough to identify words of length 2)
        assert_eq!(b.len(), 65);
        for v in 0..b.len() {
            match b.element(v) {
                Element::Word(w) => assert_eq!(w.len() as u32, b.norm(v)),
                _ => panic!(),
            }
        }
    }
}
