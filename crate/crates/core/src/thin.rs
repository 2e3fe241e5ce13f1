//! Thin geodesic triangles, comparison tripods, the four-point defect and
//! the explicit short circuit through an edge of a thin triangle.
//!
//! Tripod quantities are kept doubled so that half-integer Gromov products
//! stay exact.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cayley::CayleyBall;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::paths::{bfs, canonical_geodesic, Circuit, HopMatrix, UNREACHABLE};

/// Graphs up to this size get a full hop matrix when sweeping triangles.
const MATRIX_LIMIT: usize = 4000;

/// Comparison tripod of a triangle with corners `(a, b, c)`. `doubled[i]` is
/// twice the leg at corner `i`, i.e. twice the Gromov product there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tripod {
    pub doubled: [u64; 3],
}

impl Tripod {
    /// From the side lengths `|bc|, |ca|, |ab|`.
    pub fn from_sides(bc: u64, ca: u64, ab: u64) -> Result<Self> {
        let d = [ab + ca, ab + bc, bc + ca];
        let opp = [bc, ca, ab];
        if (0..3).any(|i| d[i] < opp[i]) {
            return Err(Error::input(format!("side lengths {bc},{ca},{ab} break the triangle inequality")));
        }
        Ok(Tripod {
            doubled: [d[0] - opp[0], d[1] - opp[1], d[2] - opp[2]],
        })
    }

    pub fn leg(&self, corner: usize) -> f64 {
        self.doubled[corner] as f64 / 2.0
    }

    /// Image of the point at distance `s` from corner `p` on the side
    /// `[p q]`, as `(leg, doubled distance from the centre)`.
    fn image(&self, p: usize, q: usize, s: u64) -> (usize, u64) {
        if 2 * s <= self.doubled[p] {
            (p, self.doubled[p] - 2 * s)
        } else {
            (q, 2 * s - self.doubled[p])
        }
    }

    fn doubled_dist(x: (usize, u64), y: (usize, u64)) -> u64 {
        if x.0 == y.0 {
            x.1.abs_diff(y.1)
        } else {
            x.1 + y.1
        }
    }
}

/// Geodesic triangle with corners `a, b, c` and sides `S_a = [bc]`,
/// `S_b = [ca]`, `S_c = [ab]`, each stored from its first to its second
/// endpoint in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    corners: [usize; 3],
    sides: [Vec<usize>; 3],
}

fn side_ends(k: usize) -> (usize, usize) {
    ((k + 1) % 3, (k + 2) % 3)
}

impl Triangle {
    pub fn new(graph: &Graph, corners: [usize; 3], sides: [Vec<usize>; 3]) -> Result<Self> {
        for &v in &corners {
            graph.check_vertex(v)?;
        }
        for (k, side) in sides.iter().enumerate() {
            let (p, q) = side_ends(k);
            if side.first() != Some(&corners[p]) || side.last() != Some(&corners[q]) {
                return Err(Error::input(format!(
                    "side {k} must run from {} to {}",
                    corners[p], corners[q]
                )));
            }
            if let Some(w) = side.windows(2).find(|w| !graph.has_edge(w[0], w[1])) {
                return Err(Error::input(format!("({},{}) is not an edge", w[0], w[1])));
            }
            let d = bfs(graph, corners[q])[corners[p]];
            if d == UNREACHABLE || d as usize != side.len() - 1 {
                return Err(Error::input(format!(
                    "side {k} has length {} but d({},{}) = {}",
                    side.len() - 1,
                    corners[p],
                    corners[q],
                    d
                )));
            }
        }
        Ok(Triangle { corners, sides })
    }

    /// Sides are lexicographically least geodesics from the smaller to the
    /// larger endpoint, so each side depends only on its endpoints.
    pub fn canonical(graph: &Graph, corners: [usize; 3]) -> Result<Self> {
        for &v in &corners {
            graph.check_vertex(v)?;
        }
        let mut rows: HashMap<usize, Vec<u32>> = HashMap::new();
        let mut sides: [Vec<usize>; 3] = Default::default();
        for (k, side) in sides.iter_mut().enumerate() {
            let (p, q) = side_ends(k);
            let (x, y) = (corners[p], corners[q]);
            let (lo, hi) = (x.min(y), x.max(y));
            let row = rows.entry(hi).or_insert_with(|| bfs(graph, hi));
            let mut path = canonical_geodesic(graph, row, lo)
                .ok_or_else(|| Error::input(format!("{lo} and {hi} are not connected")))?;
            if x != lo {
                path.reverse();
            }
            *side = path;
        }
        Ok(Triangle { corners, sides })
    }

    pub fn corners(&self) -> [usize; 3] {
        self.corners
    }

    /// Side `k` is opposite corner `k`.
    pub fn side(&self, k: usize) -> &[usize] {
        &self.sides[k]
    }

    pub fn tripod(&self) -> Tripod {
        let l = |k: usize| (self.sides[k].len() - 1) as u64;
        Tripod::from_sides(l(0), l(1), l(2)).expect("geodesic sides satisfy the triangle inequality")
    }

    fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.sides.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Edges of `S_a ∪ S_b`.
    pub fn other_edges(&self) -> HashSet<Edge> {
        self.sides[..2]
            .iter()
            .flat_map(|s| s.windows(2).map(|w| Edge::new(w[0], w[1])))
            .collect()
    }
}

/// Largest `2(|xy| − |x′y′|)` over points `x, y` of the triangle, with the
/// pair attaining it.
fn doubled_thinness(tri: &Triangle, dist: impl Fn(usize, usize) -> u32) -> (u64, (usize, usize)) {
    let t = tri.tripod();
    let mut points = Vec::new();
    for k in 0..3 {
        let (p, q) = side_ends(k);
        for (s, &v) in tri.sides[k].iter().enumerate() {
            points.push((v, t.image(p, q, s as u64)));
        }
    }
    let mut best = (0, (tri.corners[0], tri.corners[0]));
    for (i, &(x, xi)) in points.iter().enumerate() {
        for &(y, yi) in &points[i + 1..] {
            let real = 2 * dist(x, y) as u64;
            let cmp = Tripod::doubled_dist(xi, yi);
            if real > cmp && real - cmp > best.0 {
                best = (real - cmp, (x, y));
            }
        }
    }
    best
}

/// Hop distances among the vertices of one triangle.
fn local_rows(graph: &Graph, tri: &Triangle) -> HashMap<usize, Vec<u32>> {
    tri.vertices().into_iter().map(|v| (v, bfs(graph, v))).collect()
}

/// `max (|xy| − |x′y′|)` over points of the triangle; a half-integer.
pub fn thinness(graph: &Graph, tri: &Triangle) -> f64 {
    let rows = local_rows(graph, tri);
    doubled_thinness(tri, |x, y| rows[&x][y]).0 as f64 / 2.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaEstimate {
    pub delta: f64,
    /// Triangles (or quadruples) examined.
    pub samples: usize,
    pub exhaustive: bool,
    /// Corners attaining the maximum.
    pub worst: Option<Vec<usize>>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// All `k`-subsets of `vertices` when there are at most `cap` of them,
/// otherwise `cap` random ones (with distinct entries).
fn subsets(vertices: &[usize], k: usize, cap: usize, seed: u64) -> (Vec<Vec<usize>>, bool) {
    let n = vertices.len();
    if n < k {
        return (Vec::new(), true);
    }
    if binomial(n, k) <= cap as u128 {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| vertices[i]).collect());
            let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
        return (out, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..cap)
        .map(|_| {
            let mut s: Vec<usize> = Vec::with_capacity(k);
            while s.len() < k {
                let v = vertices[rng.gen_range(0..n)];
                if !s.contains(&v) {
                    s.push(v);
                }
            }
            s
        })
        .collect();
    (out, false)
}

fn max_over<F>(graph: &Graph, sets: Vec<Vec<usize>>, exhaustive: bool, score: F) -> DeltaEstimate
where
    F: Fn(&[usize], &dyn Fn(usize, usize) -> u32) -> u64 + Sync,
{
    let hops = (graph.vertex_count() <= MATRIX_LIMIT).then(|| HopMatrix::new(graph));
    let samples = sets.len();
    let best = sets
        .into_par_iter()
        .map(|s| {
            let v = match &hops {
                Some(h) => score(&s, &|x, y| h.get(x, y)),
                None => {
                    let mut rows: HashMap<usize, Vec<u32>> = HashMap::new();
                    let mut need: Vec<usize> = s.clone();
                    if s.len() == 3 {
                        let tri = Triangle::canonical(graph, [s[0], s[1], s[2]]).expect("checked vertices");
                        need = tri.vertices();
                    }
                    for v in need {
                        rows.entry(v).or_insert_with(|| bfs(graph, v));
                    }
                    score(&s, &|x, y| rows[&x][y])
                }
            };
            (v, s)
        })
        .reduce(|| (0, Vec::new()), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1 && b.0 > 0) { b } else { a });
    DeltaEstimate {
        delta: best.0 as f64 / 2.0,
        samples,
        exhaustive,
        worst: (best.0 > 0).then_some(best.1),
    }
}

/// Largest thinness over triangles with corners in `vertices` (canonical
/// sides). Exhaustive when at most `sample_cap` triangles exist.
pub fn thin_triangle_delta(graph: &Graph, vertices: &[usize], sample_cap: usize, seed: u64) -> Result<DeltaEstimate> {
    if !graph.is_connected() {
        return Err(Error::input("thin-triangle estimates need a connected graph"));
    }
    for &v in vertices {
        graph.check_vertex(v)?;
    }
    let (sets, exhaustive) = subsets(vertices, 3, sample_cap, seed);
    Ok(max_over(graph, sets, exhaustive, |s, d| {
        let tri = Triangle::canonical(graph, [s[0], s[1], s[2]]).expect("connected graph");
        doubled_thinness(&tri, d).0
    }))
}

/// [`thin_triangle_delta`] over the inner ball, where ball distances are exact.
pub fn thin_triangle_delta_ball(ball: &CayleyBall, sample_cap: usize, seed: u64) -> Result<DeltaEstimate> {
    thin_triangle_delta(ball.graph(), &ball.within(ball.inner_radius()), sample_cap, seed)
}

fn four_point_doubled(s: &[usize], d: &dyn Fn(usize, usize) -> u32) -> u64 {
    let mut sums = [
        d(s[0], s[1]) as u64 + d(s[2], s[3]) as u64,
        d(s[0], s[2]) as u64 + d(s[1], s[3]) as u64,
        d(s[0], s[3]) as u64 + d(s[1], s[2]) as u64,
    ];
    sums.sort_unstable();
    sums[2] - sums[1]
}

/// Largest four-point defect `(S₁ − S₂)/2`, where `S₁ ≥ S₂` are the two
/// largest of the three pair sums of a quadruple.
pub fn four_point_delta(graph: &Graph, vertices: &[usize], sample_cap: usize, seed: u64) -> Result<DeltaEstimate> {
    if !graph.is_connected() {
        return Err(Error::input("four-point estimates need a connected graph"));
    }
    for &v in vertices {
        graph.check_vertex(v)?;
    }
    let (sets, exhaustive) = subsets(vertices, 4, sample_cap, seed);
    Ok(max_over(graph, sets, exhaustive, four_point_doubled))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitCase {
    /// `a₃` and `b₃` lie on a common side.
    SameSide,
    /// `|a₃a₅| ≤ 7δ+2`.
    Short,
    /// The detour through `a₆, a₇, a₈`.
    Long,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitReport {
    pub circuit: Circuit,
    pub delta: u32,
    pub bound: usize,
    pub case: CircuitCase,
    /// Exceptional case `|a₀a₁| < δ` on the `a` and `b` sides.
    pub exceptional: (bool, bool),
    /// The closed walk was not simple and was loop-erased around `e`.
    pub loop_erased: bool,
    /// Named points of the construction.
    pub points: Vec<(&'static str, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CircuitOutcome {
    Built(CircuitReport),
    NotApplicable(String),
}

struct HalfArc {
    /// From `a₀` to `a₃`.
    arc: Vec<usize>,
    exceptional: bool,
    points: [usize; 5],
}

/// Nearest vertex of `targets` to `from`, least index on ties.
fn nearest(graph: &Graph, from: usize, targets: impl Iterator<Item = usize>) -> (usize, u32) {
    let d = bfs(graph, from);
    targets
        .map(|v| (d[v], v))
        .min()
        .map(|(dv, v)| (v, dv))
        .expect("non-empty target set")
}

/// `path` runs along `S_c` from `a₀` to the corner `a`.
fn half_arc(graph: &Graph, path: &[usize], sab: &HashSet<usize>, delta: usize) -> HalfArc {
    let j = path.iter().position(|v| sab.contains(v)).expect("the corner lies on another side");
    let exceptional = j < delta;
    let i2 = if exceptional { j } else { delta };
    let a2 = path[i2];
    let (a3, geo) = if exceptional {
        (a2, vec![a2])
    } else {
        let mut t: Vec<usize> = sab.iter().copied().collect();
        t.sort_unstable();
        let (a3, _) = nearest(graph, a2, t.into_iter());
        (a3, canonical_geodesic(graph, &bfs(graph, a3), a2).expect("connected"))
    };
    // a₄: the point of [a₂a₃] on [a₂a₀] nearest to a₀
    let (k4, t4) = geo
        .iter()
        .enumerate()
        .filter_map(|(t, v)| path[..=i2].iter().position(|w| w == v).map(|k| (k, t)))
        .min()
        .expect("a₂ is on both");
    let mut arc = path[..=k4].to_vec();
    arc.extend_from_slice(&geo[t4 + 1..]);
    HalfArc {
        arc,
        exceptional,
        points: [path[0], path[j], a2, a3, path[k4]],
    }
}

/// Inclusive sub-path of `side` between two positions, in either direction.
fn subpath(side: &[usize], from: usize, to: usize) -> Vec<usize> {
    if from <= to {
        side[from..=to].to_vec()
    } else {
        side[to..=from].iter().rev().copied().collect()
    }
}

fn pos(side: &[usize], v: usize) -> Option<usize> {
    side.iter().position(|&w| w == v)
}

/// Builds a circuit through `e` and an edge of `S_a ∪ S_b` of length at most
/// `24δ + 6`, following the point-by-point construction. Ties between
/// closest vertices go to the least index.
pub fn circuit_bound_check(graph: &Graph, delta: u32, tri: &Triangle, e: Edge) -> Result<CircuitOutcome> {
    let tri = Triangle::new(graph, tri.corners, tri.sides.clone())?;
    graph.check_edge(e)?;
    let sc = tri.side(2);
    let i = sc
        .windows(2)
        .position(|w| Edge::new(w[0], w[1]) == e)
        .ok_or_else(|| Error::input(format!("({},{}) is not an edge of S_c", e.0, e.1)))?;
    if tri.other_edges().contains(&e) {
        return Ok(CircuitOutcome::NotApplicable(format!(
            "({},{}) also lies on S_a ∪ S_b",
            e.0, e.1
        )));
    }
    if delta == 0 {
        return Err(Error::input("δ must be a positive integer"));
    }
    let rows = local_rows(graph, &tri);
    let (thin2, (x, y)) = doubled_thinness(&tri, |x, y| rows[&x][y]);
    if thin2 > 2 * delta as u64 {
        return Err(Error::input(format!(
            "the triangle is not {delta}-thin: |xy| − |x′y′| = {} > {delta} at ({x},{y})",
            thin2 as f64 / 2.0
        )));
    }
    let d = delta as usize;
    let sab: HashSet<usize> = tri.sides[..2].iter().flatten().copied().collect();
    let mut to_a: Vec<usize> = sc[..=i].to_vec();
    to_a.reverse();
    let ha = half_arc(graph, &to_a, &sab, d);
    let hb = half_arc(graph, &sc[i + 1..], &sab, d);
    let (a3, b3) = (ha.points[3], hb.points[3]);
    let mut points = vec![];
    for (names, h) in [(["a0", "a1", "a2", "a3", "a4"], &ha), (["b0", "b1", "b2", "b3", "b4"], &hb)] {
        points.extend(names.into_iter().zip(h.points));
    }

    // closed walk starting a₃ → … → a₀ b₀ → … → b₃ → back to a₃
    let mut walk: Vec<usize> = ha.arc.iter().rev().copied().collect();
    walk.extend_from_slice(&hb.arc);
    let common = (0..2).find(|&k| pos(&tri.sides[k], a3).is_some() && pos(&tri.sides[k], b3).is_some());
    let case = if let Some(k) = common {
        let s = &tri.sides[k];
        walk.extend(subpath(s, pos(s, b3).unwrap(), pos(s, a3).unwrap()));
        CircuitCase::SameSide
    } else {
        let kx = (0..2).find(|&k| pos(&tri.sides[k], a3).is_some()).expect("a₃ lies on S_a ∪ S_b");
        let ky = 1 - kx;
        let (sx, sy) = (&tri.sides[kx], &tri.sides[ky]);
        // c sits at the end of S_a and the start of S_b
        let cpos = |k: usize| if k == 0 { tri.sides[0].len() - 1 } else { 0 };
        let ac = subpath(sx, pos(sx, a3).unwrap(), cpos(kx));
        let bc = subpath(sy, pos(sy, b3).unwrap(), cpos(ky));
        let k5 = ac.iter().position(|v| bc.contains(v)).expect("c is on both");
        points.push(("a5", ac[k5]));
        let limit = 7 * d + 2;
        if k5 <= limit {
            let t5 = pos(&bc, ac[k5]).unwrap();
            walk.extend_from_slice(&bc[..=t5]);
            walk.extend(ac[..=k5].iter().rev());
            CircuitCase::Short
        } else {
            let a6 = ac[limit];
            let (a7, _) = nearest(graph, a6, sy.iter().copied());
            let geo = canonical_geodesic(graph, &bfs(graph, a7), a6).expect("connected");
            let k8 = ac[..=limit].iter().position(|v| geo.contains(v)).expect("a₆ is on both");
            let t8 = pos(&geo, ac[k8]).unwrap();
            points.extend([("a6", a6), ("a7", a7), ("a8", ac[k8])]);
            walk.extend(subpath(sy, pos(sy, b3).unwrap(), pos(sy, a7).unwrap()));
            walk.extend(geo[t8..].iter().rev());
            walk.extend(ac[..=k8].iter().rev());
            CircuitCase::Long
        }
    };
    walk.dedup();
    if walk.len() > 1 && walk.first() == walk.last() {
        walk.pop();
    }
    let (vertices, loop_erased) = if is_simple_cycle(graph, &walk) {
        (walk, false)
    } else {
        (loop_erase_around(&walk, e), true)
    };
    let circuit = Circuit::new(graph, vertices)
        .map_err(|err| Error::Check(format!("construction produced no circuit: {err}")))?;
    Ok(CircuitOutcome::Built(CircuitReport {
        circuit,
        delta,
        bound: 24 * d + 6,
        case,
        exceptional: (ha.exceptional, hb.exceptional),
        loop_erased,
        points,
    }))
}

fn is_simple_cycle(graph: &Graph, w: &[usize]) -> bool {
    let n = w.len();
    n >= 3 && w.iter().collect::<HashSet<_>>().len() == n && (0..n).all(|i| graph.has_edge(w[i], w[(i + 1) % n]))
}

/// Starts the closed walk just after `e` and erases loops from the walk back
/// to the other end of `e`; closing with `e` gives a circuit through it.
fn loop_erase_around(walk: &[usize], e: Edge) -> Vec<usize> {
    let n = walk.len();
    let t = (0..n)
        .find(|&t| Edge::new(walk[t], walk[(t + 1) % n]) == e)
        .expect("the walk passes through e");
    let mut out: Vec<usize> = Vec::new();
    for s in 1..=n {
        let v = walk[(t + s) % n];
        if let Some(p) = out.iter().position(|&w| w == v) {
            out.truncate(p + 1);
        } else {
            out.push(v);
        }
    }
    out
}

/// Checks a proposed circuit from scratch: distinct vertices, cyclic
/// adjacency, length at least three and at most `24δ + 6`, passing through
/// `e` and through some edge of `S_a ∪ S_b`.
pub fn verify_circuit(
    graph: &Graph,
    tri: &Triangle,
    e: Edge,
    delta: u32,
    vertices: &[usize],
) -> std::result::Result<(), String> {
    let n = vertices.len();
    if n < 3 {
        return Err(format!("only {n} vertices"));
    }
    let mut seen = HashSet::new();
    if let Some(v) = vertices.iter().find(|&&v| !seen.insert(v)) {
        return Err(format!("vertex {v} repeats"));
    }
    let edges: Vec<Edge> = (0..n).map(|i| Edge::new(vertices[i], vertices[(i + 1) % n])).collect();
    if let Some(f) = edges.iter().find(|f| !graph.has_edge(f.0, f.1)) {
        return Err(format!("({},{}) is not an edge", f.0, f.1));
    }
    let bound = 24 * delta as usize + 6;
    if n > bound {
        return Err(format!("length {n} exceeds 24δ+6 = {bound}"));
    }
    if !edges.contains(&e) {
        return Err(format!("missing e = ({},{})", e.0, e.1));
    }
    let other: Vec<Edge> = tri.sides[..2]
        .iter()
        .flat_map(|s| s.windows(2).map(|w| Edge::new(w[0], w[1])))
        .collect();
    if !edges.iter().any(|f| other.contains(f)) {
        return Err("no edge of S_a ∪ S_b".into());
    }
    Ok(())
}

/// One sampled instance of the circuit construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitSample {
    pub corners: [usize; 3],
    pub edge: Edge,
    pub delta: u32,
    pub length: usize,
    pub bound: usize,
    pub case: CircuitCase,
    pub loop_erased: bool,
    pub verified: std::result::Result<(), String>,
}

/// Samples `count` triangles with corners in `vertices`, takes `δ` to be each
/// triangle's own thinness rounded up (at least 1) and `e` the first edge of
/// `S_c` off the other sides, builds the circuit and verifies it.
pub fn circuit_sweep(graph: &Graph, vertices: &[usize], count: usize, seed: u64) -> Result<Vec<CircuitSample>> {
    if vertices.len() < 3 {
        return Err(Error::input("need at least three vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 1000 * count.max(1) {
            return Err(Error::input(format!(
                "found only {} usable triangles after {} tries",
                out.len(),
                tries - 1
            )));
        }
        let c: [usize; 3] = std::array::from_fn(|_| vertices[rng.gen_range(0..vertices.len())]);
        if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
            continue;
        }
        let tri = Triangle::canonical(graph, c)?;
        let other = tri.other_edges();
        let Some(edge) = tri.side(2).windows(2).map(|w| Edge::new(w[0], w[1])).find(|f| !other.contains(f)) else {
            continue;
        };
        let delta = (thinness(graph, &tri).ceil() as u32).max(1);
        let CircuitOutcome::Built(rep) = circuit_bound_check(graph, delta, &tri, edge)? else {
            unreachable!("e was chosen off S_a ∪ S_b")
        };
        let verified = verify_circuit(graph, &tri, edge, delta, rep.circuit.vertices());
        out.push(CircuitSample {
            corners: c,
            edge,
            delta,
            length: rep.circuit.len(),
            bound: rep.bound,
            case: rep.case,
            loop_erased: rep.loop_erased,
            verified,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_thinness(graph: &Graph, tri: &Triangle) -> f64 {
        // comparison points placed on a tripod drawn as three rays from 0
        let h = HopMatrix::new(graph);
        let [a, b, c] = tri.corners();
        let (ab, bc, ca) = (h.get(a, b) as f64, h.get(b, c) as f64, h.get(c, a) as f64);
        let legs = [(ab + ca - bc) / 2.0, (ab + bc - ca) / 2.0, (bc + ca - ab) / 2.0];
        let mut pts = Vec::new();
        for (k, (p, q)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
            for (s, &v) in tri.side(k).iter().enumerate() {
                let s = s as f64;
                let img = if s <= legs[p] { (p, legs[p] - s) } else { (q, s - legs[p]) };
                pts.push((v, img));
            }
        }
        let mut best: f64 = 0.0;
        for &(x, (lx, dx)) in &pts {
            for &(y, (ly, dy)) in &pts {
                let t = if lx == ly || dx == 0.0 || dy == 0.0 { (dx - dy).abs() } else { dx + dy };
                best = best.max(h.get(x, y) as f64 - t);
            }
        }
        best
    }

    #[test]
    fn tripod_legs() {
        let t = Tripod::from_sides(2, 2, 2).unwrap();
        assert_eq!([t.leg(0), t.leg(1), t.leg(2)], [1.0, 1.0, 1.0]);
        let t = Tripod::from_sides(1, 1, 1).unwrap();
        assert_eq!(t.leg(2), 0.5);
    }

    #[test]
    fn trees_are_zero_thin() {
        let g = Graph::new(7, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        let all: Vec<usize> = (0..7).collect();
        let d = thin_triangle_delta(&g, &all, 10_000, 1).unwrap();
        assert!(d.exhaustive);
        assert_eq!(d.delta, 0.0);
        assert_eq!(four_point_delta(&g, &all, 10_000, 1).unwrap().delta, 0.0);
    }

    #[test]
    fn six_cycle_thinness() {
        let g = Graph::cycle(6);
        let tri = Triangle::canonical(&g, [0, 2, 4]).unwrap();
        assert_eq!(thinness(&g, &tri), brute_thinness(&g, &tri));
        assert_eq!(thinness(&g, &tri), 2.0);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(thin_triangle_delta(&g, &all, 100, 0).unwrap().delta, 2.0);
    }

    #[test]
    fn thinness_matches_brute_force() {
        let g = Graph::grid(4, 4);
        for c in [[0, 5, 15], [3, 12, 9], [1, 14, 7]] {
            let tri = Triangle::canonical(&g, c).unwrap();
            assert_eq!(thinness(&g, &tri), brute_thinness(&g, &tri));
        }
    }

    #[test]
    fn four_cycle_four_point() {
        let g = Graph::cycle(4);
        assert_eq!(four_point_delta(&g, &[0, 1, 2, 3], 10, 0).unwrap().delta, 1.0);
    }

    #[test]
    fn six_cycle_circuit_is_the_cycle() {
        let g = Graph::cycle(6);
        let tri = Triangle::canonical(&g, [0, 2, 4]).unwrap();
        let CircuitOutcome::Built(rep) = circuit_bound_check(&g, 2, &tri, Edge(0, 1)).unwrap() else {
            panic!("expected a circuit");
        };
        assert_eq!(rep.circuit.vertices(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(rep.case, CircuitCase::Short);
        assert!(!rep.loop_erased);
        verify_circuit(&g, &tri, Edge(0, 1), 2, rep.circuit.vertices()).unwrap();
    }

    #[test]
    fn thinness_precondition() {
        let g = Graph::cycle(6);
        let tri = Triangle::canonical(&g, [0, 2, 4]).unwrap();
        let err = circuit_bound_check(&g, 1, &tri, Edge(0, 1)).unwrap_err();
        assert_eq!(err.kind(), "input");
        assert!(circuit_bound_check(&g, 2, &tri, Edge(2, 3)).is_err());
    }

    #[test]
    fn tree_edges_are_not_applicable() {
        let g = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let tri = Triangle::canonical(&g, [0, 2, 3]).unwrap();
        assert!(matches!(
            circuit_bound_check(&g, 1, &tri, Edge(0, 1)).unwrap(),
            CircuitOutcome::NotApplicable(_)
        ));
    }

    #[test]
    fn verifier_rejects_bad_circuits() {
        let g = Graph::cycle(6);
        let tri = Triangle::canonical(&g, [0, 2, 4]).unwrap();
        assert!(verify_circuit(&g, &tri, Edge(0, 1), 2, &[0, 1, 2]).is_err());
        assert!(verify_circuit(&g, &tri, Edge(0, 1), 2, &[0, 1, 2, 3, 4, 4]).is_err());
        assert!(verify_circuit(&g, &tri, Edge(1, 2), 2, &[5, 0, 1, 2, 3, 4]).is_ok());
    }

    #[test]
    fn subsets_enumerate_all() {
        let (s, all) = subsets(&[0, 1, 2, 3, 4], 3, 100, 0);
        assert!(all);
        assert_eq!(s.len(), 10);
        let (s, all) = subsets(&[0, 1, 2, 3, 4], 3, 4, 0);
        assert!(!all);
        assert_eq!(s.len(), 4);
    }
}
