//! Exterior-algebra bookkeeping over a small generator set.
//!
//! Basis monomials are bitmasks (bit `k` set = generator `k+1` present) and
//! multivectors are sparse maps from monomials to Gaussian-rational
//! coefficients. Bases are enumerated in lexicographic order on the strictly
//! increasing index tuples, which fixes every matrix in the crate.

use crate::scalar::GaussianRational;
use std::collections::BTreeMap;

/// Basis monomial encoded as a bitmask over at most 8 generators.
pub type Mask = u8;

pub fn mask_degree(m: Mask) -> usize {
    m.count_ones() as usize
}

/// 1-based generator indices present in a monomial, increasing.
pub fn mask_indices(m: Mask) -> Vec<usize> {
    (0..8)
        .filter(|k| m & (1 << k) != 0)
        .map(|k| k + 1)
        .collect()
}

/// Sign of `x_a wedge x_b` relative to the sorted monomial, `None` when the
/// factors share a generator.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    for j in 0..8 {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// All degree-`d` monomials on `n` generators, in lexicographic tuple order.
pub fn monomials(n: usize, d: usize) -> Vec<Mask> {
    let mut out: Vec<Mask> = (0u16..(1 << n))
        .map(|m| m as Mask)
        .filter(|&m| mask_degree(m) == d)
        .collect();
    out.sort_by_key(|&m| mask_indices(m));
    out
}

/// Human-readable monomial, e.g. `x1^x3` for generators named `x1..`.
pub fn mask_label(m: Mask, names: &[&str]) -> String {
    if m == 0 {
        return "1".to_string();
    }
    mask_indices(m)
        .iter()
        .map(|&k| names[k - 1])
        .collect::<Vec<_>>()
        .join("^")
}

/// Sparse element of the exterior algebra on `n_gens` generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    n_gens: usize,
    terms: BTreeMap<Mask, GaussianRational>,
}

impl Multivector {
    pub fn zero(n_gens: usize) -> Self {
        Multivector {
            n_gens,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n_gens: usize, c: GaussianRational) -> Self {
        let mut m = Multivector::zero(n_gens);
        m.add_term(0, c);
        m
    }

    /// The 1-form dual to generator `k` (1-based).
    pub fn generator(n_gens: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n_gens);
        let mut m = Multivector::zero(n_gens);
        m.add_term(1 << (k - 1), GaussianRational::one());
        m
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mask, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mask) -> GaussianRational {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, m: Mask, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_gens, other.n_gens);
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Multivector::zero(self.n_gens);
        for (&m, c) in &self.terms {
            out.add_term(m, c * s);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n_gens, other.n_gens);
        let mut out = Multivector::zero(self.n_gens);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if let Some(sign) = wedge_sign(a, b) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(a | b, c);
                }
            }
        }
        out
    }

    /// Entrywise complex conjugation of the coefficients.
    pub fn conj_coeffs(&self) -> Self {
        let mut out = Multivector::zero(self.n_gens);
        for (&m, c) in &self.terms {
            out.add_term(m, c.conj());
        }
        out
    }

    /// Build from coordinates relative to an ordered monomial basis.
    pub fn from_coords(n_gens: usize, basis: &[Mask], coords: &[GaussianRational]) -> Self {
        assert_eq!(basis.len(), coords.len());
        let mut out = Multivector::zero(n_gens);
        for (&m, c) in basis.iter().zip(coords) {
            out.add_term(m, c.clone());
        }
        out
    }

    /// Coordinates relative to an ordered monomial basis. Panics if the
    /// multivector has support outside the basis.
    pub fn coords(&self, basis: &[Mask]) -> Vec<GaussianRational> {
        let out: Vec<GaussianRational> = basis.iter().map(|&m| self.coeff(m)).collect();
        let supported: usize = basis.iter().filter(|m| self.terms.contains_key(m)).count();
        assert_eq!(
            supported,
            self.terms.len(),
            "multivector has support outside the requested basis"
        );
        out
    }

    /// Algebra homomorphism determined by generator images: generator `k`
    /// maps to `images[k-1]` (a form in a possibly different algebra).
    pub fn substitute(&self, images: &[Multivector]) -> Multivector {
        assert_eq!(images.len(), self.n_gens);
        let target_gens = images.first().map_or(self.n_gens, Multivector::n_gens);
        let mut out = Multivector::zero(target_gens);
        for (&m, c) in &self.terms {
            let mut acc = Multivector::scalar(target_gens, c.clone());
            for idx in mask_indices(m) {
                acc = acc.wedge(&images[idx - 1]);
            }
            out = out.add(&acc);
        }
        out
    }
}
