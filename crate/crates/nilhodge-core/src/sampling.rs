//! Deterministic pseudorandom generation of valid inputs: rational basis
//! changes of the built-in algebras and conjugated almost complex
//! structures. Used by the scan helpers and the test suites; fixed seeds
//! keep every run byte-identical.

use crate::lie::{filiform, kodaira_thurston, torus, LieAlgebraPresentation};
use crate::linalg::ExactMatrix;
use crate::scalar::{rational, GaussianRational};

/// xorshift64* generator; deterministic and platform-independent.
#[derive(Clone, Debug)]
pub struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        XorShift64 { state: seed.max(1) }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// A small random rational with numerator in `[-2, 2]` and denominator in
/// `{1, 2}`.
pub fn small_rational(rng: &mut XorShift64) -> GaussianRational {
    let num = rng.int_in(-2, 2);
    let den = rng.int_in(1, 2);
    GaussianRational::from_rational(rational(num, den))
}

/// Random invertible rational 4x4 matrix, by rejection on the determinant.
pub fn random_invertible(rng: &mut XorShift64) -> ExactMatrix {
    loop {
        let mut m = ExactMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                m.set(r, c, small_rational(rng));
            }
        }
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// The standard block structure `J(X1) = X2, J(X3) = X4` as a matrix.
pub fn standard_j_matrix() -> ExactMatrix {
    ExactMatrix::from_int_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

/// A random rational almost complex structure `Q J0 Q^{-1}`.
pub fn random_j_matrix(rng: &mut XorShift64) -> ExactMatrix {
    let q = random_invertible(rng);
    let q_inv = q.inverse().expect("invertible by construction");
    q.mul(&standard_j_matrix()).mul(&q_inv)
}

/// One of the three nilpotent algebras in a random rational basis, with an
/// independently random structure. All such pairs are valid inputs.
pub fn random_presentation_and_j(rng: &mut XorShift64) -> (LieAlgebraPresentation, ExactMatrix) {
    let base = match rng.int_in(0, 2) {
        0 => torus(),
        1 => filiform(),
        _ => kodaira_thurston(),
    };
    let p = random_invertible(rng);
    let moved = base
        .change_basis(format!("{}-moved", base.name), &p)
        .expect("invertible basis change");
    (moved, random_j_matrix(rng))
}

/// Transform a (presentation, J) pair consistently by one basis change:
/// brackets through `P` and the endomorphism to `P^{-1} J P`.
pub fn change_basis_pair(
    pres: &LieAlgebraPresentation,
    j: &ExactMatrix,
    p: &ExactMatrix,
) -> (LieAlgebraPresentation, ExactMatrix) {
    let moved = pres
        .change_basis(format!("{}-conj", pres.name), p)
        .expect("invertible basis change");
    let p_inv = p.inverse().expect("invertible");
    (moved, p_inv.mul(j).mul(p))
}
