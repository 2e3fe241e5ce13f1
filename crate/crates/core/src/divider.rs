//! Dividers, Frink sequences and the dividing metric on Cayley balls.
//!
//! Entourages on a ball live on a *window*: the vertices of norm `≤ w`,
//! which are a prefix of the ball's vertex numbering. Inclusions are checked
//! on a smaller *domain* (norm `≤ d`), using only chains inside the domain,
//! so a translate `f⁻¹x` that leaves the window makes a pair unknown rather
//! than silently absent or present.

use rayon::prelude::*;

use crate::cayley::{CayleyBall, Element, GroupModel};
use crate::entourage::Entourage;
use crate::error::{Error, Result};
use crate::floyd::{floyd_rows, FloydConfig};
use crate::graph::Edge;
use crate::paths::DistanceMatrix;
use crate::visibility::principal_set_on;

/// An entourage on the vertices of norm `≤ radius` of a ball.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowEntourage {
    pub radius: u32,
    pub u: Entourage,
}

impl WindowEntourage {
    pub fn new(ball: &CayleyBall, radius: u32, u: Entourage) -> Result<Self> {
        let size = ball.count_within(radius);
        if u.vertex_count() != size {
            return Err(Error::input(format!(
                "entourage has {} vertices, the radius-{radius} window has {size}",
                u.vertex_count()
            )));
        }
        Ok(WindowEntourage { radius, u })
    }

    /// The principal set `u_E` on the window, with distances in the ball.
    pub fn principal(ball: &CayleyBall, edges: &[Edge], radius: u32) -> Result<Self> {
        let radius = radius.min(ball.radius());
        let u = principal_set_on(ball.graph(), edges, &ball.within(radius))?;
        Ok(WindowEntourage { radius, u })
    }

    pub fn size(&self) -> usize {
        self.u.vertex_count()
    }
}

/// Checks that `F` is symmetric and contains the identity.
pub fn check_symmetric(model: &GroupModel, f: &[Element]) -> Result<()> {
    if !f.iter().any(|g| model.is_identity(g)) {
        return Err(Error::input("F must contain the identity"));
    }
    for g in f {
        let inv = model.inverse(g);
        if !f.iter().any(|h| model.same(h, &inv)) {
            return Err(Error::input(format!(
                "F is not symmetric: {} is missing its inverse",
                model.format(g)
            )));
        }
    }
    Ok(())
}

fn dedup(model: &GroupModel, items: Vec<Element>) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::new();
    let mut keys = std::collections::HashMap::<u64, Vec<usize>>::new();
    for g in items {
        let k = model.key(&g);
        let bucket = keys.entry(k).or_default();
        if !bucket.iter().any(|&i| model.same(&out[i], &g)) {
            bucket.push(out.len());
            out.push(g);
        }
    }
    out
}

/// `Fⁿ`: products of at most `n` elements of `F` (with `F⁰ = {1}`).
pub fn f_power(model: &GroupModel, f: &[Element], n: usize) -> Vec<Element> {
    let mut cur = vec![model.identity()];
    for _ in 0..n {
        let mut next = cur.clone();
        for a in &cur {
            for b in f {
                next.push(model.mul(a, b));
            }
        }
        cur = dedup(model, next);
    }
    cur
}

/// `ρ`: the least `n` with `F{v} ⊂ B_n`.
pub fn rho(ball: &CayleyBall, f: &[Element]) -> Result<u32> {
    let mut r = 0;
    for g in f {
        let v = ball.find(g).ok_or_else(|| {
            Error::input(format!("{} lies outside the ball", ball.model().format(g)))
        })?;
        r = r.max(ball.norm(v));
    }
    Ok(r)
}

/// `∩(F{u})` restricted to the domain, as computed on the window.
#[derive(Debug, Clone, PartialEq)]
pub struct Translated {
    /// Over the domain prefix; unknown pairs are left out.
    pub entourage: Entourage,
    pub unknown: usize,
    pub total: usize,
}

/// Intersection of the translates `f·u = {{fx,fy} : {x,y} ∈ u}` over `f ∈ F`,
/// on vertices of norm `≤ domain_radius`.
pub fn translate_intersection(
    ball: &CayleyBall,
    u: &WindowEntourage,
    f: &[Element],
    domain_radius: u32,
) -> Result<Translated> {
    if domain_radius > u.radius {
        return Err(Error::input(format!(
            "domain radius {domain_radius} exceeds the window radius {}",
            u.radius
        )));
    }
    let model = ball.model();
    let nd = ball.count_within(domain_radius);
    let w = u.size();
    // maps[k][x] = index of f_k⁻¹·x inside the window
    let maps: Vec<Vec<Option<usize>>> = f
        .par_iter()
        .map(|g| {
            let inv = model.inverse(g);
            (0..nd)
                .map(|x| ball.find(&model.mul(&inv, ball.element(x))).filter(|&v| v < w))
                .collect()
        })
        .collect();
    let rows: Vec<(Vec<usize>, usize)> = (0..nd)
        .into_par_iter()
        .map(|x| {
            let mut inside = Vec::new();
            let mut unknown = 0;
            for y in x + 1..nd {
                let mut out = false;
                let mut unsure = false;
                for m in &maps {
                    match (m[x], m[y]) {
                        (Some(a), Some(b)) => {
                            if !u.u.contains(a, b) {
                                out = true;
                                break;
                            }
                        }
                        _ => unsure = true,
                    }
                }
                if !out {
                    if unsure {
                        unknown += 1;
                    } else {
                        inside.push(y);
                    }
                }
            }
            (inside, unknown)
        })
        .collect();
    let mut entourage = Entourage::diagonal(nd);
    let mut unknown = 0;
    for (x, (ys, unk)) in rows.into_iter().enumerate() {
        unknown += unk;
        for y in ys {
            entourage.insert(x, y);
        }
    }
    let total = nd * nd.saturating_sub(1) / 2;
    if 2 * unknown > total {
        return Err(Error::DomainTooSmall {
            unknown,
            total,
            radius: ball.radius(),
        });
    }
    Ok(Translated {
        entourage,
        unknown,
        total,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub power: usize,
    pub domain_radius: u32,
    pub domain_size: usize,
    /// Domain pairs whose membership in `∩(F{u})` could not be decided.
    pub unknown: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DividerCheck {
    Certified(Certificate),
    /// A domain pair outside `u` joined by an `m`-chain of `∩(F{u})`
    /// (ball vertex indices).
    Violated { pair: (usize, usize), chain: Vec<usize> },
}

/// Checks `(∩(F{u}))^m ⊂ u` on the domain.
pub fn validate_divider(
    ball: &CayleyBall,
    u: &WindowEntourage,
    f: &[Element],
    m: usize,
    domain_radius: u32,
) -> Result<DividerCheck> {
    check_symmetric(ball.model(), f)?;
    if m == 0 {
        return Err(Error::input("the power m must be at least 1"));
    }
    let t = translate_intersection(ball, u, f, domain_radius)?;
    let nd = t.entourage.vertex_count();
    let power = t.entourage.power(m)?;
    let base = u.u.restrict_prefix(nd);
    Ok(match power.not_subset_witness(&base)? {
        None => DividerCheck::Certified(Certificate {
            power: m,
            domain_radius,
            domain_size: nd,
            unknown: t.unknown,
        }),
        Some((x, y)) => DividerCheck::Violated {
            pair: (x, y),
            chain: t.entourage.chain(x, y, m).expect("pair came from the m-th power"),
        },
    })
}

/// An entourage with a finite symmetric `F ∋ 1` and a certified power.
#[derive(Debug, Clone, PartialEq)]
pub struct Divider {
    pub u: WindowEntourage,
    pub f: Vec<Element>,
    pub certified_power: usize,
    pub rho: u32,
    pub certificate: Certificate,
}

impl Divider {
    /// Validates and bundles; a violation becomes a check error.
    pub fn certify(ball: &CayleyBall, u: WindowEntourage, f: Vec<Element>, m: usize, domain_radius: u32) -> Result<Self> {
        match validate_divider(ball, &u, &f, m, domain_radius)? {
            DividerCheck::Certified(certificate) => Ok(Divider {
                rho: rho(ball, &f)?,
                u,
                f,
                certified_power: m,
                certificate,
            }),
            DividerCheck::Violated { pair, chain } => Err(Error::Check(format!(
                "(∩F{{u}})^{m} ⊄ u: pair ({},{}) via chain {}",
                ball.label(pair.0),
                ball.label(pair.1),
                chain.iter().map(|&v| ball.label(v)).collect::<Vec<_>>().join(" ")
            ))),
        }
    }

    pub fn domain_radius(&self) -> u32 {
        self.certificate.domain_radius
    }
}

/// Frink sequence `v_0 = S²M ⊇ v_1 ⊇ …` with `v_n ⊇ v_{n+1}³`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrinkSequence {
    terms: Vec<Entourage>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NestingViolation {
    /// `v_{level+1}³ ⊄ v_level`
    pub level: usize,
    pub pair: (usize, usize),
    pub chain: Vec<usize>,
}

impl FrinkSequence {
    /// Validates `v_0 = S²M` and every nesting `v_{n+1}³ ⊂ v_n`.
    pub fn new(terms: Vec<Entourage>) -> Result<Self> {
        let seq = FrinkSequence { terms };
        let n = seq.vertex_count();
        if seq.terms.is_empty() || !seq.terms[0].is_full() {
            return Err(Error::input("a Frink sequence starts with S²M"));
        }
        if seq.terms.iter().any(|t| t.vertex_count() != n) {
            return Err(Error::input("Frink sequence terms live on different vertex sets"));
        }
        if let Some(v) = seq.nesting_violation() {
            return Err(Error::Check(format!(
                "v_{}³ ⊄ v_{}: pair ({},{}) via chain {:?}",
                v.level + 1,
                v.level,
                v.pair.0,
                v.pair.1,
                v.chain
            )));
        }
        Ok(seq)
    }

    pub fn terms(&self) -> &[Entourage] {
        &self.terms
    }

    /// Index of the last term.
    pub fn depth(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.terms.first().map_or(0, |t| t.vertex_count())
    }

    pub fn nesting_violation(&self) -> Option<NestingViolation> {
        for level in 0..self.depth() {
            let next = &self.terms[level + 1];
            let cube = next.power(3).expect("power 3 is valid");
            if let Some((x, y)) = cube.not_subset_witness(&self.terms[level]).expect("same vertex set") {
                return Some(NestingViolation {
                    level,
                    pair: (x, y),
                    chain: next.chain(x, y, 3).expect("pair lies in the cube"),
                });
            }
        }
        None
    }

    /// Largest `n` with `{x,y} ∈ v_n`.
    pub fn level(&self, x: usize, y: usize) -> usize {
        self.terms
            .iter()
            .rposition(|t| t.contains(x, y))
            .expect("v_0 contains every pair")
    }
}

/// The Frink metric: the largest metric with `ϱ ≤ 2^{-n}` on `v_n`, i.e. the
/// path metric of the complete graph with pair weights `2^{-level}`.
pub fn frink_metric(seq: &FrinkSequence) -> DistanceMatrix {
    let n = seq.vertex_count();
    let mut d: Vec<Vec<f64>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| if x == y { 0.0 } else { 0.5f64.powi(seq.level(x, y) as i32) })
                .collect()
        })
        .collect();
    for k in 0..n {
        let dk = d[k].clone();
        d.par_iter_mut().for_each(|row| {
            let dik = row[k];
            for (r, &kj) in row.iter_mut().zip(&dk) {
                if dik + kj < *r {
                    *r = dik + kj;
                }
            }
        });
    }
    DistanceMatrix::from_rows(d).expect("square")
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrinkLemmaReport {
    /// Levels `n = 1..=levels` were checked.
    pub levels: usize,
    /// `(n, x, y)` with `δ(x,y) < 2^{-n}` but `{x,y} ∉ v_{n-1}`.
    pub lemma_violation: Option<(usize, usize, usize)>,
    /// `(n, x, y)` with `{x,y} ∈ v_n` but `δ(x,y) > 2^{-n}`.
    pub weight_violation: Option<(usize, usize, usize)>,
}

impl FrinkLemmaReport {
    pub fn passed(&self) -> bool {
        self.lemma_violation.is_none() && self.weight_violation.is_none()
    }
}

/// Checks `δ^{-1}[0, 2^{-n}) ⊂ v_{n-1}` for `n = 1..=depth+2`, reading the
/// finite sequence as continued by `Δ`, and `δ ≤ 2^{-n}` on every `v_n`.
pub fn verify_frink_lemma(seq: &FrinkSequence, metric: &DistanceMatrix) -> Result<FrinkLemmaReport> {
    let n = seq.vertex_count();
    if metric.len() != n {
        return Err(Error::input("metric and sequence have different vertex sets"));
    }
    let levels = seq.depth() + 2;
    let mut lemma_violation = None;
    let mut weight_violation = None;
    'outer: for k in 1..=levels {
        let bound = 0.5f64.powi(k as i32);
        for x in 0..n {
            for y in x + 1..n {
                if metric.get(x, y) < bound && (k - 1 > seq.depth() || !seq.terms[k - 1].contains(x, y)) {
                    lemma_violation = Some((k, x, y));
                    break 'outer;
                }
            }
        }
    }
    'weights: for (k, t) in seq.terms.iter().enumerate() {
        let bound = 0.5f64.powi(k as i32);
        for (x, y) in t.pairs() {
            if metric.get(x, y) > bound {
                weight_violation = Some((k, x, y));
                break 'weights;
            }
        }
    }
    Ok(FrinkLemmaReport {
        levels,
        lemma_violation,
        weight_violation,
    })
}

/// `u_0 = S²M`, `u_n = ∩(F^{n-1}{u})` on the divider's domain.
pub fn frink_sequence_from_divider(ball: &CayleyBall, divider: &Divider, depth: usize) -> Result<FrinkSequence> {
    if divider.certified_power < 3 {
        return Err(Error::input(format!(
            "the divider is certified for m = {}, a Frink sequence needs m = 3",
            divider.certified_power
        )));
    }
    let d = divider.domain_radius();
    let nd = ball.count_within(d);
    let mut terms = vec![Entourage::full(nd)];
    for level in 1..=depth {
        let fk = f_power(ball.model(), &divider.f, level - 1);
        terms.push(translate_intersection(ball, &divider.u, &fk, d)?.entourage);
    }
    FrinkSequence::new(terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perspectivity {
    Sigma(u32),
    /// An edge outside `u` reaches the window's outer sphere.
    NotPerspective(Edge),
}

/// Least `σ` with every window edge outside `u` inside `B_σ`.
pub fn perspectivity_sigma(ball: &CayleyBall, u: &WindowEntourage) -> Perspectivity {
    let w = u.size();
    let mut sigma = 0;
    for e in ball.graph().edges() {
        if e.1 >= w || u.u.contains(e.0, e.1) {
            continue;
        }
        let top = ball.norm(e.0).max(ball.norm(e.1));
        if top >= u.radius {
            return Perspectivity::NotPerspective(*e);
        }
        sigma = sigma.max(top);
    }
    Perspectivity::Sigma(sigma)
}

/// `(λ, C) = (2^{-1/ρ}, 2^{σ/ρ})`.
pub fn comparison_constants(rho: u32, sigma: u32) -> Result<(f64, f64)> {
    if rho == 0 {
        return Err(Error::input("rho must be at least 1"));
    }
    let r = rho as f64;
    Ok((2f64.powf(-1.0 / r), 2f64.powf(sigma as f64 / r)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub pairs: usize,
    /// max over pairs of `δ_{u,F} / δ_{v,λ}`
    pub max_ratio: f64,
    pub violations: usize,
    /// First violating pair `(x, y, δ_{u,F}, δ_{v,λ})` in ball vertex indices.
    pub first_violation: Option<(usize, usize, f64, f64)>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `δ_{u,F} ≤ C·δ_{v,λ}` on all pairs of the dividing metric's
/// domain; the Floyd metric is taken in the whole ball.
pub fn verify_comparison(ball: &CayleyBall, dividing: &DistanceMatrix, lambda: f64, c: f64) -> Result<ComparisonReport> {
    let n = dividing.len();
    if n > ball.len() {
        return Err(Error::input("the dividing metric has more vertices than the ball"));
    }
    let cfg = FloydConfig::new(lambda, ball.basepoint())?;
    let sources: Vec<usize> = (0..n).collect();
    let floyd = floyd_rows(ball.graph(), &cfg, &sources)?;
    let mut report = ComparisonReport {
        pairs: 0,
        max_ratio: 0.0,
        violations: 0,
        first_violation: None,
    };
    for (x, row) in floyd.iter().enumerate() {
        for (y, &df) in row.iter().enumerate().take(n).skip(x + 1) {
            let du = dividing.get(x, y);
            report.pairs += 1;
            report.max_ratio = report.max_ratio.max(du / df);
            if du > c * df * (1.0 + 1e-12) {
                report.violations += 1;
                report.first_violation.get_or_insert((x, y, du, df));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_point() -> FrinkSequence {
        let v1 = Entourage::from_pairs(3, [(0, 1)]).unwrap();
        FrinkSequence::new(vec![Entourage::full(3), v1, Entourage::diagonal(3)]).unwrap()
    }

    #[test]
    fn three_point_frink_metric() {
        let d = frink_metric(&three_point());
        assert_eq!(d.get(0, 1), 0.5);
        assert_eq!(d.get(1, 2), 1.0);
        assert_eq!(d.get(0, 2), 1.0);
        assert!(verify_frink_lemma(&three_point(), &d).unwrap().passed());
    }

    #[test]
    fn trivial_sequence() {
        let seq = FrinkSequence::new(vec![Entourage::full(4)]).unwrap();
        let d = frink_metric(&seq);
        assert!((0..4).all(|x| (0..4).all(|y| d.get(x, y) == if x == y { 0.0 } else { 1.0 })));
    }

    #[test]
    fn bad_nesting_is_reported() {
        let path = Entourage::from_pairs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let err = FrinkSequence::new(vec![Entourage::full(4), path.clone(), path]).unwrap_err();
        assert_eq!(err.kind(), "check");
    }

    #[test]
    fn constants() {
        assert_eq!(comparison_constants(1, 0).unwrap(), (0.5, 1.0));
        let (l, c) = comparison_constants(2, 4).unwrap();
        assert!((l - 0.5f64.sqrt()).abs() < 1e-15 && (c - 4.0).abs() < 1e-12);
        let (l, c) = comparison_constants(3, 3).unwrap();
        assert!((l - 0.7937005259840998).abs() < 1e-12 && (c - 2.0).abs() < 1e-12);
        assert!(comparison_constants(0, 1).is_err());
    }

    #[test]
    fn f_powers_of_free_generators() {
        let m = GroupModel::free(2);
        let mut f = m.generators();
        f.push(m.identity());
        assert_eq!(f_power(&m, &f, 0).len(), 1);
        assert_eq!(f_power(&m, &f, 1).len(), 5);
        assert_eq!(f_power(&m, &f, 2).len(), 17);
    }

    #[test]
    fn asymmetric_f_is_rejected() {
        let m = GroupModel::free(2);
        let f = vec![m.identity(), m.parse("a").unwrap()];
        assert!(check_symmetric(&m, &f).is_err());
        assert!(check_symmetric(&m, &[m.parse("a").unwrap(), m.parse("A").unwrap()]).is_err());
    }
}
