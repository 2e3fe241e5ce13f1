//! Seeded random entourages and Frink sequences for experiments.

use rand::Rng;

use crate::divider::FrinkSequence;
use crate::entourage::Entourage;

/// Each off-diagonal pair independently with probability `p`.
pub fn random_entourage(rng: &mut impl Rng, n: usize, p: f64) -> Entourage {
    let mut u = Entourage::diagonal(n);
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(p) {
                u.insert(x, y);
            }
        }
    }
    u
}

/// Built from the deepest term outwards: `v_depth` is sparse and each
/// `v_k` is `v_{k+1}³` plus random pairs, so every nesting holds.
pub fn random_frink_sequence(rng: &mut impl Rng, n: usize, depth: usize) -> FrinkSequence {
    if depth == 0 {
        return FrinkSequence::new(vec![Entourage::full(n)]).expect("single term");
    }
    let mut terms = vec![random_entourage(rng, n, 0.1)];
    for _ in 1..depth {
        let cube = terms.last().unwrap().power(3).expect("power 3");
        let extra = random_entourage(rng, n, 0.15);
        terms.push(cube.union(&extra).expect("same size"));
    }
    terms.push(Entourage::full(n));
    terms.reverse();
    FrinkSequence::new(terms).expect("nesting holds by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sequences_have_the_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..10 {
            for depth in 0..5 {
                let s = random_frink_sequence(&mut rng, n, depth);
                assert_eq!((s.vertex_count(), s.depth()), (n, depth));
            }
        }
    }
}
