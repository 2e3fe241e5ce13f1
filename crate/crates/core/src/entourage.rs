//! Entourages: reflexive symmetric relations on `0..n`, stored as one
//! bitset row per vertex.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entourage {
    rows: Vec<FixedBitSet>,
}

impl Entourage {
    /// The diagonal `Δ²M`.
    pub fn diagonal(n: usize) -> Self {
        let rows = (0..n)
            .map(|x| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert(x);
                r
            })
            .collect();
        Entourage { rows }
    }

    /// All pairs, `S²M`.
    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|_| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert_range(..);
                r
            })
            .collect();
        Entourage { rows }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut u = Entourage::diagonal(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::input(format!("pair ({x},{y}) outside 0..{n}")));
            }
            u.insert(x, y);
        }
        Ok(u)
    }

    /// Builds `{x,y}` for which `f(x, y)` holds, evaluated for `x < y` in parallel.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let upper: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|x| (x + 1..n).filter(|&y| f(x, y)).collect())
            .collect();
        let mut u = Entourage::diagonal(n);
        for (x, ys) in upper.into_iter().enumerate() {
            for y in ys {
                u.insert(x, y);
            }
        }
        u
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
        self.rows[y].insert(x);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        if x != y {
            self.rows[x].set(y, false);
            self.rows[y].set(x, false);
        }
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    /// Off-diagonal pairs `(x, y)` with `x < y`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.ones().filter(move |&y| y > x).map(move |y| (x, y)))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        let total: usize = self.rows.iter().map(|r| r.count_ones(..)).sum();
        (total - self.rows.len()) / 2
    }

    pub fn is_diagonal(&self) -> bool {
        self.pair_count() == 0
    }

    pub fn is_full(&self) -> bool {
        let n = self.rows.len();
        self.rows.iter().all(|r| r.count_ones(..) == n)
    }

    fn same_set(&self, other: &Entourage) -> Result<()> {
        if self.rows.len() == other.rows.len() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "entourages over {} and {} vertices",
                self.rows.len(),
                other.rows.len()
            )))
        }
    }

    pub fn intersection(&self, other: &Entourage) -> Result<Entourage> {
        self.same_set(other)?;
        let mut out = self.clone();
        out.intersect_with(other);
        Ok(out)
    }

    pub(crate) fn intersect_with(&mut self, other: &Entourage) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.intersect_with(b);
        }
    }

    pub fn union(&self, other: &Entourage) -> Result<Entourage> {
        self.same_set(other)?;
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        Ok(out)
    }

    /// First pair of `self` missing from `other`, or `None` if `self ⊂ other`.
    pub fn not_subset_witness(&self, other: &Entourage) -> Result<Option<(usize, usize)>> {
        self.same_set(other)?;
        for (x, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if let Some(y) = a.difference(b).next() {
                return Ok(Some((x.min(y), x.max(y))));
            }
        }
        Ok(None)
    }

    pub fn is_subset(&self, other: &Entourage) -> Result<bool> {
        Ok(self.not_subset_witness(other)?.is_none())
    }

    /// `uⁿ`: pairs joined by a chain of at most `n` pairs of `u`.
    pub fn power(&self, n: usize) -> Result<Entourage> {
        if n == 0 {
            return Err(Error::input("entourage powers start at 1"));
        }
        let rows = (0..self.rows.len())
            .into_par_iter()
            .map(|x| self.reach(x, n))
            .collect();
        Ok(Entourage { rows })
    }

    /// Vertices within `n` steps of `x` in the graph of `self`.
    fn reach(&self, x: usize, n: usize) -> FixedBitSet {
        let mut seen = self.rows[x].clone();
        let mut frontier = seen.clone();
        for _ in 1..n {
            let mut next = FixedBitSet::with_capacity(self.rows.len());
            for y in frontier.ones() {
                next.union_with(&self.rows[y]);
            }
            next.difference_with(&seen);
            if next.is_clear() {
                break;
            }
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// A shortest chain `x = c_0, …, c_k = y` with consecutive pairs in `u`
    /// and `k ≤ max_len`.
    pub fn chain(&self, x: usize, y: usize, max_len: usize) -> Option<Vec<usize>> {
        let n = self.rows.len();
        let mut prev = vec![usize::MAX; n];
        prev[x] = x;
        let mut frontier = vec![x];
        for _ in 0..max_len {
            if prev[y] != usize::MAX {
                break;
            }
            let mut next = Vec::new();
            for &a in &frontier {
                for b in self.rows[a].ones() {
                    if prev[b] == usize::MAX {
                        prev[b] = a;
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        if prev[y] == usize::MAX {
            return None;
        }
        let mut path = vec![y];
        let mut v = y;
        while v != x {
            v = prev[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    /// `m` is `u`-small: every pair of `m` lies in `u`.
    pub fn is_small(&self, m: &[usize]) -> bool {
        m.iter()
            .enumerate()
            .all(|(i, &x)| m[i + 1..].iter().all(|&y| self.contains(x, y)))
    }

    /// Restriction to the vertices `0..m`.
    pub fn restrict_prefix(&self, m: usize) -> Entourage {
        let rows = self.rows[..m]
            .iter()
            .map(|r| {
                let mut s = FixedBitSet::with_capacity(m);
                s.extend(r.ones().take_while(|&y| y < m));
                s
            })
            .collect();
        Entourage { rows }
    }
}

/// Outcome of [`unlinked`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Linkage {
    /// `M = a ∪ b` with `a` `u`-small and `b` `v`-small.
    Unlinked { a: Vec<usize>, b: Vec<usize> },
    Linked,
}

/// Decides whether `M` splits into a `u`-small and a `v`-small part.
///
/// One boolean per vertex ("in A"); a pair outside `u` forbids both ends in
/// A, a pair outside `v` forbids both ends in B. Solved as 2-SAT.
pub fn unlinked(u: &Entourage, v: &Entourage) -> Result<Linkage> {
    u.same_set(v)?;
    let n = u.vertex_count();
    // literal 2x: x ∈ A; literal 2x+1: x ∉ A
    let mut imp = vec![Vec::new(); 2 * n];
    for x in 0..n {
        for y in x + 1..n {
            if !u.contains(x, y) {
                imp[2 * x].push(2 * y + 1);
                imp[2 * y].push(2 * x + 1);
            }
            if !v.contains(x, y) {
                imp[2 * x + 1].push(2 * y);
                imp[2 * y + 1].push(2 * x);
            }
        }
    }
    let comp = tarjan_scc(&imp);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for x in 0..n {
        match comp[2 * x].cmp(&comp[2 * x + 1]) {
            std::cmp::Ordering::Equal => return Ok(Linkage::Linked),
            // components come out in reverse topological order
            std::cmp::Ordering::Less => a.push(x),
            std::cmp::Ordering::Greater => b.push(x),
        }
    }
    Ok(Linkage::Unlinked { a, b })
}

/// Strongly connected components, numbered in reverse topological order.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, i)) = call.last() {
            if i < adj[v].len() {
                call.last_mut().unwrap().1 += 1;
                let w = adj[v][i];
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_two() {
        let u = Entourage::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let u2 = u.power(2).unwrap();
        assert!(u2.contains(0, 2));
        assert_eq!(u.power(1).unwrap(), u);
        assert_eq!(u.chain(0, 2, 2), Some(vec![0, 1, 2]));
        assert_eq!(u.chain(0, 2, 1), None);
        let d = Entourage::diagonal(5);
        assert_eq!(d.power(4).unwrap(), d);
    }

    #[test]
    fn smallness() {
        let u = Entourage::from_pairs(3, [(0, 1)]).unwrap();
        assert!(u.is_small(&[2]));
        assert!(u.is_small(&[0, 1]));
        assert!(!u.is_small(&[0, 2]));
    }

    #[test]
    fn linkage_basics() {
        let u = Entourage::from_pairs(4, [(0, 1)]).unwrap();
        let full = Entourage::full(4);
        match unlinked(&u, &full).unwrap() {
            Linkage::Unlinked { a, b } => {
                assert!(u.is_small(&a) && full.is_small(&b));
                assert_eq!(a.len() + b.len(), 4);
            }
            Linkage::Linked => panic!("S²M always splits"),
        }
        let d = Entourage::diagonal(3);
        assert_eq!(unlinked(&d, &d).unwrap(), Linkage::Linked);
    }

    #[test]
    fn counts_and_subsets() {
        let u = Entourage::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(u.pair_count(), 2);
        assert_eq!(u.pairs(), vec![(0, 1), (2, 3)]);
        assert!(Entourage::diagonal(4).is_subset(&u).unwrap());
        assert_eq!(u.not_subset_witness(&Entourage::diagonal(4)).unwrap(), Some((0, 1)));
        assert!(Entourage::full(4).is_full());
        assert_eq!(Entourage::full(4).pair_count(), 6);
        assert_eq!(u.restrict_prefix(2).pair_count(), 1);
    }
}
