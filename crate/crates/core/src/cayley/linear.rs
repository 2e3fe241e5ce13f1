//! Cheap invariants of surface-group words used to bucket candidate
//! duplicates before the exact Dehn comparison.
//!
//! Two homomorphisms to SL(2, p) that kill the surface relator, plus the
//! abelianization. Equal elements always get equal fingerprints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Letter;

const P: u64 = 2_147_483_647;

type Mat = [u64; 4];

const ID: Mat = [1, 0, 0, 1];

fn mul(x: &Mat, y: &Mat) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % P,
        (x[0] * y[1] + x[1] * y[3]) % P,
        (x[2] * y[0] + x[3] * y[2]) % P,
        (x[2] * y[1] + x[3] * y[3]) % P,
    ]
}

/// Inverse of a determinant-one matrix.
fn inv(x: &Mat) -> Mat {
    [x[3], (P - x[1]) % P, (P - x[2]) % P, x[0]]
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat {
    let a = rng.gen_range(2..P);
    let b = rng.gen_range(1..P);
    let c = rng.gen_range(1..P);
    // ad − bc = 1
    let d = (1 + b * c % P) % P * pow_mod(a, P - 2) % P;
    [a, b, c, d]
}

fn commutator(x: &Mat, y: &Mat) -> Mat {
    mul(&mul(x, y), &mul(&inv(x), &inv(y)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFingerprint {
    /// image of generator i under each representation
    images: Vec<[Mat; 2]>,
}

impl SurfaceFingerprint {
    pub fn new(genus: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let (a2, b2) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let g = commutator(&a2, &b2);
        let conj = |m: &Mat| mul(&mul(&g, m), &inv(&g));
        let mut images = vec![[ID, ID]; 2 * genus];
        // first: (A, B, B, A, 1, …) since [A,B][B,A] = 1
        // second: (A', B', gB'g⁻¹, gA'g⁻¹, 1, …) with g = [A',B']
        images[0] = [a, a2];
        images[1] = [b, b2];
        if genus >= 2 {
            images[2] = [b, conj(&b2)];
            images[3] = [a, conj(&a2)];
        }
        SurfaceFingerprint { images }
    }

    pub fn of(&self, word: &[Letter]) -> (Vec<i64>, Mat, Mat) {
        let mut ab = vec![0i64; self.images.len()];
        let (mut m1, mut m2) = (ID, ID);
        for l in word {
            let [x, y] = self.images[l.index()];
            ab[l.index()] += l.exponent();
            if l.is_inverse() {
                m1 = mul(&m1, &inv(&x));
                m2 = mul(&m2, &inv(&y));
            } else {
                m1 = mul(&m1, &x);
                m2 = mul(&m2, &y);
            }
        }
        (ab, m1, m2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Vec<Letter> {
        s.chars().map(|c| Letter::from_char(c).unwrap()).collect()
    }

    #[test]
    fn relator_has_trivial_fingerprint() {
        let f = SurfaceFingerprint::new(2);
        assert_eq!(f.of(&word("abABcdCD")), f.of(&[]));
        assert_ne!(f.of(&word("abAB")), f.of(&[]));
    }

    #[test]
    fn random_matrices_have_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = random_sl2(&mut rng);
            assert_eq!((m[0] * m[3] % P + P - m[1] * m[2] % P) % P, 1);
        }
    }
}
