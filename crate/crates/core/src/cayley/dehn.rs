//! Word problem for closed orientable surface groups of genus ≥ 2.
//!
//! The presentation `⟨a1,b1,…,ag,bg | [a1,b1]…[ag,bg]⟩` has pieces of length
//! one, so it is C'(1/6) and Dehn's algorithm decides equality: a freely
//! reduced word represents the identity iff repeatedly replacing more than
//! half of a cyclic relator conjugate by the inverse of its complement
//! ends at the empty word.

use std::collections::HashMap;

use super::Letter;

#[derive(Debug, Clone, PartialEq)]
pub struct Dehn {
    relator_len: usize,
    /// subword (longer than half a relator) -> shorter equivalent
    rewrites: HashMap<Vec<Letter>, Vec<Letter>>,
    max_piece: usize,
}

impl Dehn {
    pub fn surface(genus: usize) -> Self {
        let mut relator = Vec::with_capacity(4 * genus);
        for i in 0..genus {
            let a = 2 * i as u8;
            let b = a + 1;
            relator.extend([
                Letter::gen(a),
                Letter::gen(b),
                Letter::gen(a).inverse(),
                Letter::gen(b).inverse(),
            ]);
        }
        Dehn::new(&relator)
    }

    pub fn new(relator: &[Letter]) -> Self {
        let n = relator.len();
        let inverse: Vec<Letter> = relator.iter().rev().map(|l| l.inverse()).collect();
        let mut rewrites = HashMap::new();
        for rel in [relator.to_vec(), inverse] {
            for shift in 0..n {
                let rot: Vec<Letter> = (0..n).map(|i| rel[(shift + i) % n]).collect();
                // rot = p·q with |p| > n/2  ⇒  p = q⁻¹
                for k in (n / 2 + 1)..=n {
                    let p = rot[..k].to_vec();
                    let q_inv: Vec<Letter> = rot[k..].iter().rev().map(|l| l.inverse()).collect();
                    rewrites.entry(p).or_insert(q_inv);
                }
            }
        }
        Dehn {
            relator_len: n,
            rewrites,
            max_piece: n,
        }
    }

    pub fn relator_len(&self) -> usize {
        self.relator_len
    }

    /// Free reduction followed by Dehn rewriting until neither applies.
    pub fn reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut w = free_reduce(word);
        'outer: loop {
            let min_piece = self.relator_len / 2 + 1;
            for start in 0..w.len() {
                let longest = self.max_piece.min(w.len() - start);
                for len in (min_piece..=longest).rev() {
                    if let Some(rep) = self.rewrites.get(&w[start..start + len]) {
                        let mut next = Vec::with_capacity(w.len());
                        next.extend_from_slice(&w[..start]);
                        next.extend_from_slice(rep);
                        next.extend_from_slice(&w[start + len..]);
                        w = free_reduce(&next);
                        continue 'outer;
                    }
                }
            }
            return w;
        }
    }

    pub fn is_identity(&self, word: &[Letter]) -> bool {
        self.reduce(word).is_empty()
    }
}

pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}
