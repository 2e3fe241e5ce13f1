//! Group models with exact word problems, and finite Cayley-graph balls.
//!
//! Elements print as generator strings: generator `i` is the letter
//! `'a' + i`, its inverse the uppercase letter, and the identity is `1`.

mod ball;
pub mod dehn;
mod linear;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

pub use ball::{CayleyBall, Translation, DEFAULT_VERTEX_LIMIT, VERTEX_LIMIT_ENV};

use crate::error::{Error, Result};
use dehn::{free_reduce, Dehn};
use linear::SurfaceFingerprint;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u8,
    inv: bool,
}

impl Letter {
    pub fn gen(index: u8) -> Self {
        Letter {
            gen: index,
            inv: false,
        }
    }

    pub fn index(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inv
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::gen(c as u8 - b'a'))
        } else if c.is_ascii_uppercase() {
            Some(Letter::gen(c as u8 - b'A').inverse())
        } else {
            None
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.inv { b'A' } else { b'a' };
        (base + self.gen) as char
    }
}

/// Normal form of a group element. Which variant is used depends on the
/// model; see [`GroupModel`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Freely reduced word (free groups) or Dehn-reduced word (surface groups).
    Word(Vec<Letter>),
    /// Coordinates in ℤⁿ.
    Vector(Vec<i64>),
    /// Residue in ℤ/m.
    Residue(u64),
    /// Alternating syllables `(factor, exponent)` of a free product; adjacent
    /// syllables lie in different factors and exponents are reduced.
    Syllables(Vec<(u8, i64)>),
}

/// The group models the crate can build balls for.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupModel {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Cyclic { order: u64 },
    /// Free product of cyclic groups; order 0 is an infinite cyclic factor.
    FreeProduct { factors: Vec<u64> },
    /// Fundamental group of the closed orientable surface of this genus,
    /// solved by Dehn's algorithm. Experimental.
    Surface { genus: usize, dehn: Dehn, fingerprint: SurfaceFingerprint },
}

const MAX_GENERATORS: usize = 26;

impl GroupModel {
    pub fn free(rank: usize) -> Self {
        GroupModel::Free { rank }
    }

    pub fn free_abelian(rank: usize) -> Self {
        GroupModel::FreeAbelian { rank }
    }

    pub fn cyclic(order: u64) -> Self {
        GroupModel::Cyclic { order }
    }

    pub fn free_product(factors: Vec<u64>) -> Self {
        GroupModel::FreeProduct { factors }
    }

    pub fn surface(genus: usize) -> Self {
        GroupModel::Surface {
            genus,
            dehn: Dehn::surface(genus),
            fingerprint: SurfaceFingerprint::new(genus),
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupModel::Free { rank } => format!("free:{rank}"),
            GroupModel::FreeAbelian { rank } => format!("zn:{rank}"),
            GroupModel::Cyclic { order } => format!("cyclic:{order}"),
            GroupModel::FreeProduct { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|&m| if m == 0 { "z".to_string() } else { format!("cyclic:{m}") })
                    .collect();
                format!("product:{}", parts.join(","))
            }
            GroupModel::Surface { genus, .. } => format!("surface:{genus}"),
        }
    }

    /// Number of letters in the alphabet (generators up to inversion).
    pub fn rank(&self) -> usize {
        match self {
            GroupModel::Free { rank } | GroupModel::FreeAbelian { rank } => *rank,
            GroupModel::Cyclic { .. } => 1,
            GroupModel::FreeProduct { factors } => factors.len(),
            GroupModel::Surface { genus, .. } => 2 * genus,
        }
    }

    /// True when the Cayley graph on [`GroupModel::generators`] is a tree.
    pub fn is_tree(&self) -> bool {
        match self {
            GroupModel::Free { .. } => true,
            GroupModel::FreeAbelian { rank } => *rank <= 1,
            GroupModel::Cyclic { order } => *order <= 2,
            GroupModel::FreeProduct { factors } => factors.iter().all(|&m| m == 0 || m == 2),
            GroupModel::Surface { .. } => false,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupModel::Free { .. } | GroupModel::Surface { .. } => Element::Word(Vec::new()),
            GroupModel::FreeAbelian { rank } => Element::Vector(vec![0; *rank]),
            GroupModel::Cyclic { .. } => Element::Residue(0),
            GroupModel::FreeProduct { .. } => Element::Syllables(Vec::new()),
        }
    }

    /// The symmetric generating set, ordered `a, A, b, B, …` with duplicates
    /// (involutions) removed. This order drives shortlex normal forms.
    pub fn generators(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for l in [Letter::gen(i as u8), Letter::gen(i as u8).inverse()] {
                let g = self.letter(l);
                if !out.contains(&g) && !self.is_identity(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Element represented by a single letter.
    pub fn letter(&self, l: Letter) -> Element {
        let i = l.index();
        match self {
            GroupModel::Free { .. } | GroupModel::Surface { .. } => Element::Word(vec![l]),
            GroupModel::FreeAbelian { rank } => {
                let mut v = vec![0; *rank];
                v[i] = l.exponent();
                Element::Vector(v)
            }
            GroupModel::Cyclic { order } => Element::Residue(reduce_mod(l.exponent(), *order)),
            GroupModel::FreeProduct { factors } => {
                let k = reduce_exp(l.exponent(), factors[i]);
                if k == 0 {
                    Element::Syllables(Vec::new())
                } else {
                    Element::Syllables(vec![(i as u8, k)])
                }
            }
        }
    }

    fn check(&self, g: &Element) -> Result<()> {
        let ok = match (self, g) {
            (GroupModel::Free { rank }, Element::Word(w)) => {
                w.iter().all(|l| l.index() < *rank) && free_reduce(w).len() == w.len()
            }
            (GroupModel::Surface { genus, .. }, Element::Word(w)) => w.iter().all(|l| l.index() < 2 * genus),
            (GroupModel::FreeAbelian { rank }, Element::Vector(v)) => v.len() == *rank,
            (GroupModel::Cyclic { order }, Element::Residue(r)) => *order == 0 || r < order,
            (GroupModel::FreeProduct { factors }, Element::Syllables(s)) => {
                s.iter().all(|&(f, k)| {
                    (f as usize) < factors.len() && k != 0 && reduce_exp(k, factors[f as usize]) == k
                }) && s.windows(2).all(|w| w[0].0 != w[1].0)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::input(format!("{g:?} is not a normal form of {}", self.name())))
        }
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// Product of two elements already known to be valid normal forms.
    pub(crate) fn mul(&self, g: &Element, h: &Element) -> Element {
        match (self, g, h) {
            (GroupModel::Free { .. }, Element::Word(a), Element::Word(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Element::Word(free_reduce(&w))
            }
            (GroupModel::Surface { dehn, .. }, Element::Word(a), Element::Word(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Element::Word(dehn.reduce(&w))
            }
            (GroupModel::FreeAbelian { .. }, Element::Vector(a), Element::Vector(b)) => {
                Element::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupModel::Cyclic { order }, Element::Residue(a), Element::Residue(b)) => {
                Element::Residue(if *order == 0 { a + b } else { (a + b) % order })
            }
            (GroupModel::FreeProduct { factors }, Element::Syllables(a), Element::Syllables(b)) => {
                let mut out = a.clone();
                for &(f, k) in b {
                    push_syllable(&mut out, f, k, factors);
                }
                Element::Syllables(out)
            }
            _ => panic!("element variant does not match model {}", self.name()),
        }
    }

    pub fn inverse(&self, g: &Element) -> Element {
        match (self, g) {
            (GroupModel::Free { .. } | GroupModel::Surface { .. }, Element::Word(w)) => {
                Element::Word(w.iter().rev().map(|l| l.inverse()).collect())
            }
            (GroupModel::FreeAbelian { .. }, Element::Vector(v)) => Element::Vector(v.iter().map(|x| -x).collect()),
            (GroupModel::Cyclic { order }, Element::Residue(r)) => {
                Element::Residue(if *r == 0 { 0 } else { order - r })
            }
            (GroupModel::FreeProduct { factors }, Element::Syllables(s)) => Element::Syllables(
                s.iter()
                    .rev()
                    .map(|&(f, k)| (f, reduce_exp(-k, factors[f as usize])))
                    .collect(),
            ),
            _ => panic!("element variant does not match model {}", self.name()),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        match (self, g) {
            (GroupModel::Surface { dehn, .. }, Element::Word(w)) => dehn.is_identity(w),
            _ => *g == self.identity(),
        }
    }

    /// Group equality. Normal forms are canonical except for surface
    /// groups, where equality goes through Dehn's algorithm.
    pub fn same(&self, g: &Element, h: &Element) -> bool {
        match self {
            GroupModel::Surface { dehn, .. } => match (g, h) {
                (Element::Word(a), Element::Word(b)) => {
                    if a == b {
                        return true;
                    }
                    let mut w: Vec<Letter> = a.iter().rev().map(|l| l.inverse()).collect();
                    w.extend_from_slice(b);
                    dehn.is_identity(&w)
                }
                _ => false,
            },
            _ => g == h,
        }
    }

    /// Hash that agrees on equal elements (see [`GroupModel::same`]).
    pub fn key(&self, g: &Element) -> u64 {
        let mut h = DefaultHasher::new();
        match (self, g) {
            (GroupModel::Surface { fingerprint, .. }, Element::Word(w)) => fingerprint.of(w).hash(&mut h),
            _ => g.hash(&mut h),
        }
        h.finish()
    }

    /// Exact word length when the normal form determines it.
    pub fn norm(&self, g: &Element) -> Option<u32> {
        match (self, g) {
            (GroupModel::Free { .. }, Element::Word(w)) => Some(w.len() as u32),
            (GroupModel::FreeAbelian { .. }, Element::Vector(v)) => Some(v.iter().map(|x| x.unsigned_abs() as u32).sum()),
            (GroupModel::Cyclic { order }, Element::Residue(r)) => {
                Some(if *order == 0 { *r } else { (*r).min(order - r) } as u32)
            }
            (GroupModel::FreeProduct { factors }, Element::Syllables(s)) => Some(
                s.iter()
                    .map(|&(f, k)| {
                        let m = factors[f as usize];
                        let k = k.unsigned_abs();
                        if m == 0 {
                            k as u32
                        } else {
                            k.min(m - k) as u32
                        }
                    })
                    .sum(),
            ),
            _ => None,
        }
    }

    /// Parses a generator string (`1` for the identity). Rank-one models
    /// also accept a signed integer meaning that power of the generator.
    pub fn parse(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let rank_one = matches!(self, GroupModel::Cyclic { .. })
            || matches!(self, GroupModel::Free { rank: 1 } | GroupModel::FreeAbelian { rank: 1 });
        if rank_one {
            if let Ok(k) = s.parse::<i64>() {
                let l = Letter::gen(0);
                let step = if k >= 0 { l } else { l.inverse() };
                let mut g = self.identity();
                let unit = self.letter(step);
                for _ in 0..k.unsigned_abs() {
                    g = self.mul(&g, &unit);
                }
                return Ok(g);
            }
        }
        let mut g = self.identity();
        if s == "1" || s.is_empty() {
            return Ok(g);
        }
        for c in s.chars() {
            let l = Letter::from_char(c)
                .filter(|l| l.index() < self.rank())
                .ok_or_else(|| Error::input(format!("'{c}' is not a generator of {}", self.name())))?;
            g = self.mul(&g, &self.letter(l));
        }
        Ok(g)
    }

    pub fn format(&self, g: &Element) -> String {
        let letters: Vec<Letter> = match g {
            Element::Word(w) => w.clone(),
            Element::Vector(v) => v
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| {
                    let l = Letter::gen(i as u8);
                    let l = if x < 0 { l.inverse() } else { l };
                    std::iter::repeat_n(l, x.unsigned_abs() as usize)
                })
                .collect(),
            Element::Residue(r) => {
                let order = match self {
                    GroupModel::Cyclic { order } => *order,
                    _ => 0,
                };
                if order > 0 && 2 * r > order {
                    vec![Letter::gen(0).inverse(); (order - r) as usize]
                } else {
                    vec![Letter::gen(0); *r as usize]
                }
            }
            Element::Syllables(s) => {
                let factors = match self {
                    GroupModel::FreeProduct { factors } => factors.clone(),
                    _ => Vec::new(),
                };
                s.iter()
                    .flat_map(|&(f, k)| {
                        let m = factors.get(f as usize).copied().unwrap_or(0);
                        let l = Letter::gen(f);
                        let (l, n) = if k < 0 {
                            (l.inverse(), k.unsigned_abs())
                        } else if m > 0 && 2 * k as u64 > m {
                            (l.inverse(), m - k as u64)
                        } else {
                            (l, k as u64)
                        };
                        std::iter::repeat_n(l, n as usize)
                    })
                    .collect()
            }
        };
        if letters.is_empty() {
            "1".to_string()
        } else {
            letters.iter().map(|l| l.to_char()).collect()
        }
    }
}

impl FromStr for GroupModel {
    type Err = Error;

    /// `free:2`, `zn:2`, `cyclic:5`, `product:cyclic:2,cyclic:3`, `surface:2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("unrecognised group spec '{s}'"));
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let number = |a: &str| a.trim().parse::<u64>().map_err(|_| bad());
        let model = match kind {
            "free" => GroupModel::free(number(arg)? as usize),
            "zn" => GroupModel::free_abelian(number(arg)? as usize),
            "cyclic" => {
                let m = number(arg)?;
                if m == 0 {
                    return Err(Error::input("cyclic order must be positive"));
                }
                GroupModel::cyclic(m)
            }
            "product" => {
                let mut factors = Vec::new();
                for part in arg.split(',') {
                    let part = part.trim();
                    match part.split_once(':') {
                        Some(("cyclic", m)) => {
                            let m = number(m)?;
                            if m < 2 {
                                return Err(Error::input("free-product factors need order at least 2"));
                            }
                            factors.push(m)
                        }
                        Some(("free" | "zn", "1")) => factors.push(0),
                        None if part == "z" => factors.push(0),
                        _ => return Err(bad()),
                    }
                }
                if factors.is_empty() {
                    return Err(bad());
                }
                GroupModel::free_product(factors)
            }
            "surface" => {
                let g = number(arg)? as usize;
                if g < 2 {
                    return Err(Error::input("surface genus must be at least 2 for Dehn's algorithm"));
                }
                GroupModel::surface(g)
            }
            _ => return Err(bad()),
        };
        if model.rank() > MAX_GENERATORS {
            return Err(Error::input(format!("at most {MAX_GENERATORS} generators are supported")));
        }
        Ok(model)
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn reduce_mod(k: i64, m: u64) -> u64 {
    if m == 0 {
        k.max(0) as u64
    } else {
        k.rem_euclid(m as i64) as u64
    }
}

/// Exponent in a cyclic factor: `1..m` for order `m`, unchanged for ℤ.
fn reduce_exp(k: i64, m: u64) -> i64 {
    if m == 0 {
        k
    } else {
        k.rem_euclid(m as i64)
    }
}

fn push_syllable(out: &mut Vec<(u8, i64)>, f: u8, k: i64, factors: &[u64]) {
    match out.last_mut() {
        Some(last) if last.0 == f => {
            let merged = reduce_exp(last.1 + k, factors[f as usize]);
            if merged == 0 {
                out.pop();
            } else {
                last.1 = merged;
            }
        }
        _ => {
            let k = reduce_exp(k, factors[f as usize]);
            if k != 0 {
                out.push((f, k));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let g = GroupModel::free(2);
        let x = g.parse("abA").unwrap();
        let y = g.parse("a").unwrap();
        assert_eq!(g.format(&g.multiply(&x, &y).unwrap()), "ab");
        assert!(g.is_identity(&g.mul(&x, &g.inverse(&x))));
    }

    #[test]
    fn cyclic_and_abelian_arithmetic() {
        let c = GroupModel::cyclic(5);
        assert_eq!(c.multiply(&Element::Residue(3), &Element::Residue(4)).unwrap(), Element::Residue(2));
        let z2 = GroupModel::free_abelian(2);
        let s = z2
            .multiply(&Element::Vector(vec![1, 2]), &Element::Vector(vec![3, -1]))
            .unwrap();
        assert_eq!(s, Element::Vector(vec![4, 1]));
        assert_eq!(z2.format(&s), "aaaab");
        assert_eq!(z2.parse("aaaab").unwrap(), s);
    }

    #[test]
    fn malformed_words_are_rejected() {
        let f = GroupModel::free(2);
        let unreduced = Element::Word(vec![Letter::gen(0), Letter::gen(0).inverse()]);
        assert!(f.multiply(&unreduced, &f.identity()).is_err());
        assert!(f.parse("abz").is_err());
        let c = GroupModel::cyclic(5);
        assert!(c.multiply(&Element::Residue(7), &Element::Residue(1)).is_err());
        assert!(c.multiply(&Element::Vector(vec![1]), &Element::Residue(1)).is_err());
    }

    #[test]
    fn free_product_normal_forms() {
        let p: GroupModel = "product:cyclic:2,cyclic:3".parse().unwrap();
        assert_eq!(p.generators().len(), 3);
        let x = p.parse("abb").unwrap();
        assert_eq!(x, Element::Syllables(vec![(0, 1), (1, 2)]));
        assert_eq!(p.format(&x), "aB");
        assert_eq!(p.norm(&x), Some(2));
        let y = p.parse("bbbaa").unwrap();
        assert!(p.is_identity(&y));
        assert!(p.is_identity(&p.mul(&x, &p.inverse(&x))));
    }

    #[test]
    fn group_specs() {
        for s in ["free:2", "zn:2", "cyclic:5", "product:cyclic:2,cyclic:3", "surface:2"] {
            let g: GroupModel = s.parse().unwrap();
            assert_eq!(g.name(), s);
        }
        assert!("free".parse::<GroupModel>().is_err());
        assert!("surface:1".parse::<GroupModel>().is_err());
        assert!("cyclic:0".parse::<GroupModel>().is_err());
    }

    #[test]
    fn rank_one_integers() {
        let z: GroupModel = "free:1".parse().unwrap();
        assert_eq!(z.format(&z.parse("3").unwrap()), "aaa");
        assert_eq!(z.format(&z.parse("-2").unwrap()), "AA");
        let c = GroupModel::cyclic(12);
        assert_eq!(c.parse("-1").unwrap(), Element::Residue(11));
        assert_eq!(c.norm(&Element::Residue(11)), Some(1));
        assert_eq!(c.format(&Element::Residue(11)), "A");
    }

    #[test]
    fn surface_equality_goes_through_dehn() {
        let s = GroupModel::surface(2);
        let x = s.parse("abAB").unwrap();
        let y = s.parse("dcDC").unwrap();
        assert!(s.same(&x, &y));
        assert_eq!(s.key(&x), s.key(&y));
        assert!(!s.same(&x, &s.parse("abBA").unwrap()));
        assert_eq!(s.generators().len(), 8);
    }
}
